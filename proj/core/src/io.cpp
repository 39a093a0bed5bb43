#include "hdcat/io.hpp"

#include <json.hpp>

#include "hdcat/error.hpp"

namespace hdcat::io {

using nlohmann::json;

namespace {

json parse_json(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what());
    }
}

const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw Error(ErrorKind::ParseError, std::string("missing key '") + key + "'");
    return j.at(key);
}

template <class T>
T get(const json& j, const char* what)
{
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorKind::ParseError, std::string("wrong type for ") + what);
    }
}

std::vector<std::string> strings(const json& j, const char* what)
{
    if (!j.is_array())
        throw Error(ErrorKind::ParseError, std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (const auto& e : j)
        out.push_back(get<std::string>(e, what));
    return out;
}

std::vector<std::pair<std::string, std::string>> pairs_of(const json& j, const char* what)
{
    if (!j.is_object())
        throw Error(ErrorKind::ParseError, std::string(what) + " must be an object");
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [k, v] : j.items())
        out.emplace_back(k, get<std::string>(v, what));
    return out;
}

json mss_json(const TruncMSSet& x)
{
    RawMSS raw = to_raw(x);
    json j;
    j["n"] = raw.n;
    j["cells"] = json::object();
    for (const auto& [k, v] : raw.cells)
        j["cells"][k] = v;
    auto maps = [](const std::vector<RawMSS::Map>& ms) {
        json arr = json::array();
        for (const auto& m : ms) {
            json o;
            o["axis"] = m.axis;
            o["i"] = m.i;
            o["at"] = m.at;
            o["map"] = json::object();
            for (const auto& [a, b] : m.pairs)
                o["map"][a] = b;
            arr.push_back(std::move(o));
        }
        return arr;
    };
    j["faces"] = maps(raw.faces);
    j["degens"] = maps(raw.degens);
    return j;
}

RawMSS mss_from_json(const json& j)
{
    RawMSS raw;
    raw.n = get<int>(field(j, "n"), "n");
    const json& cells = field(j, "cells");
    if (!cells.is_object())
        throw Error(ErrorKind::ParseError, "cells must be an object");
    for (const auto& [k, v] : cells.items())
        raw.cells[k] = strings(v, "cell");
    auto maps = [](const json& arr, const char* what) {
        if (!arr.is_array())
            throw Error(ErrorKind::ParseError, std::string(what) + " must be an array");
        std::vector<RawMSS::Map> out;
        for (const auto& o : arr)
            out.push_back({get<int>(field(o, "axis"), "axis"), get<int>(field(o, "i"), "i"),
                           get<std::string>(field(o, "at"), "at"), pairs_of(field(o, "map"), "map")});
        return out;
    };
    raw.faces = maps(j.contains("faces") ? j.at("faces") : json::array(), "faces");
    raw.degens = maps(j.contains("degens") ? j.at("degens") : json::array(), "degens");
    return raw;
}

json map_json(const NFoldMap& f)
{
    json j;
    j["dom"] = mss_json(f.dom.carrier());
    j["cod"] = mss_json(f.cod.carrier());
    j["maps"] = json::object();
    const int n = f.dom.n();
    for (std::size_t c = 0; c < f.maps.size(); ++c) {
        json m = json::object();
        for (Index e = 0; e < f.maps[c].size(); ++e)
            m[f.dom.cell(c)[e]] = f.cod.cell(c)[f.maps[c][e]];
        j["maps"][index_key(cell_index(c, n))] = std::move(m);
    }
    return j;
}

}  // namespace

RawCategory parse_fincat(std::string_view text)
{
    json j = parse_json(text);
    RawCategory raw;
    raw.objects = strings(field(j, "objects"), "objects");
    if (j.contains("morphisms"))
        for (const auto& m : j.at("morphisms"))
            raw.morphisms.push_back({get<std::string>(field(m, "id"), "id"), get<std::string>(field(m, "src"), "src"),
                                     get<std::string>(field(m, "tgt"), "tgt")});
    if (j.contains("compose"))
        for (const auto& c : j.at("compose"))
            raw.compose.push_back({get<std::string>(field(c, "g"), "g"), get<std::string>(field(c, "f"), "f"),
                                   get<std::string>(field(c, "gf"), "gf")});
    return raw;
}

std::string fincat_to_json(const FinCat& c)
{
    json j;
    j["objects"] = c.objects().labels();
    j["morphisms"] = json::array();
    const auto& mor = c.morphisms();
    for (Index m = 0; m < mor.size(); ++m)
        if (!c.is_identity(m))
            j["morphisms"].push_back({{"id", mor[m]}, {"src", c.objects()[c.src(m)]}, {"tgt", c.objects()[c.tgt(m)]}});
    j["compose"] = json::array();
    for (Index f = 0; f < mor.size(); ++f) {
        if (c.is_identity(f))
            continue;
        for (Index g : c.outgoing(c.tgt(f)))
            if (!c.is_identity(g)) {
                const Index gf = c.compose(g, f);
                const std::string label =
                    c.is_identity(gf) ? identity_label(c.objects()[c.src(gf)]) : mor[gf];
                j["compose"].push_back({{"g", mor[g]}, {"f", mor[f]}, {"gf", label}});
            }
    }
    return j.dump(2);
}

RawMSS parse_mss(std::string_view text)
{
    return mss_from_json(parse_json(text));
}

std::string mss_to_json(const TruncMSSet& x, bool verified)
{
    json j = mss_json(x);
    if (verified)
        j["segal"] = "verified";
    return j.dump(2);
}

NFoldMap parse_nfold_map(std::string_view text)
{
    json j = parse_json(text);
    NFoldMap f;
    f.dom = promote(validate_mss(mss_from_json(field(j, "dom"))));
    f.cod = promote(validate_mss(mss_from_json(field(j, "cod"))));
    if (f.dom.n() != f.cod.n())
        throw Error(ErrorKind::InvalidMap, "domain and codomain have different dimensions");
    const json& maps = field(j, "maps");
    const int n = f.dom.n();
    f.maps.resize(f.dom.size());
    for (std::size_t c = 0; c < f.dom.size(); ++c) {
        const std::string key = index_key(cell_index(c, n));
        if (!maps.contains(key))
            throw Error(ErrorKind::MissingCell, "map has no component at " + key, "at=" + key);
        f.maps[c].assign(f.dom.cell(c).size(), static_cast<Index>(-1));
        for (const auto& [a, b] : pairs_of(maps.at(key), "map"))
            f.maps[c].at(f.dom.cell(c).at(a)) = f.cod.cell(c).at(b);
        for (Index e = 0; e < f.maps[c].size(); ++e)
            if (f.maps[c][e] == static_cast<Index>(-1))
                throw Error(ErrorKind::InvalidMap, "map has no value on '" + f.dom.cell(c)[e] + "'", "at=" + key);
    }
    f.check();
    return f;
}

std::string nfold_map_to_json(const NFoldMap& f)
{
    return map_json(f).dump(2);
}

SurjTower parse_tower(std::string_view text)
{
    json j = parse_json(text);
    SurjTower t;
    const json& sets = field(j, "sets");
    if (!sets.is_array())
        throw Error(ErrorKind::ParseError, "sets must be an array");
    for (const auto& s : sets)
        t.sets.push_back(FinSet::from(strings(s, "set")));
    const json& maps = field(j, "maps");
    if (!maps.is_array() || maps.size() + 1 != t.sets.size())
        throw Error(ErrorKind::ParseError, "a tower needs one map per consecutive pair of sets");
    for (std::size_t i = 0; i < maps.size(); ++i) {
        IndexMap m(t.sets[i].size(), static_cast<Index>(-1));
        for (const auto& p : maps[i]) {
            auto from = get<std::string>(field(p, "from"), "from");
            auto to = get<std::string>(field(p, "to"), "to");
            m.at(t.sets[i].at(from)) = t.sets[i + 1].at(to);
        }
        for (Index e = 0; e < m.size(); ++e)
            if (m[e] == static_cast<Index>(-1))
                throw Error(ErrorKind::InvalidMap, "tower map " + std::to_string(i + 1) + " has no value on '" +
                                                       t.sets[i][e] + "'");
        t.maps.push_back(std::move(m));
    }
    t.check();
    return t;
}

std::string tower_to_json(const SurjTower& t)
{
    json j;
    j["sets"] = json::array();
    for (const auto& s : t.sets)
        j["sets"].push_back(s.labels());
    j["maps"] = json::array();
    for (std::size_t i = 0; i < t.maps.size(); ++i) {
        json arr = json::array();
        for (Index e = 0; e < t.maps[i].size(); ++e)
            arr.push_back({{"from", t.sets[i][e]}, {"to", t.sets[i + 1][t.maps[i][e]]}});
        j["maps"].push_back(std::move(arr));
    }
    return j.dump(2);
}

std::string hd_report_json(const HdResult& r, const DiscretizationData* d)
{
    json j;
    j["hd"] = static_cast<bool>(r);
    if (r.failure)
        j["failure"] = {{"clause", r.failure->clause}, {"location", r.failure->location}, {"reason", r.failure->reason}};
    else
        j["failure"] = nullptr;
    if (d) {
        j["discretization"] = d->underlying.labels();
        j["gamma"] = map_json(d->gamma);
    } else {
        j["discretization"] = nullptr;
        j["gamma"] = nullptr;
    }
    return j.dump(2);
}

std::string zero_type_report_json(const ZeroTypeReport& r)
{
    json j;
    j["pi0"] = {{"size", r.pi0_size}, {"discretization_size", r.discretization_size}, {"bijection", r.pi0_bijection}};
    json torsion = json::array();
    for (const auto& t : r.h1.torsion)
        torsion.push_back(t.str());
    j["h1"] = {{"free_rank", r.h1.free_rank}, {"torsion", torsion}};
    j["zero_type_necessary"] = r.zero_type_necessary();
    return j.dump(2);
}

Document classify(std::string_view text)
{
    json j = parse_json(text);
    if (!j.is_object())
        return Document::Unknown;
    if (j.contains("objects"))
        return Document::FinCat;
    if (j.contains("cells"))
        return Document::Mss;
    if (j.contains("dom") && j.contains("maps"))
        return Document::Map;
    if (j.contains("sets"))
        return Document::Tower;
    if (j.contains("hd"))
        return Document::Report;
    return Document::Unknown;
}

std::string extract_gamma(std::string_view report)
{
    json j = parse_json(report);
    const json& g = field(j, "gamma");
    if (g.is_null())
        throw Error(ErrorKind::ParseError, "report carries no gamma map");
    return g.dump();
}

}  // namespace hdcat::io
