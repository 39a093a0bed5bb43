#include "hdcat/fincat.hpp"

#include <algorithm>
#include <map>

#include "hdcat/error.hpp"

namespace hdcat {

std::string identity_label(std::string_view object)
{
    return "id:" + std::string(object);
}

FinCat FinCat::assemble(FinSet objects, FinSet morphisms, IndexMap src, IndexMap tgt, IndexMap id, CompTable comp)
{
    FinCat c;
    c.objects_ = std::move(objects);
    c.morphisms_ = std::move(morphisms);
    c.src_ = std::move(src);
    c.tgt_ = std::move(tgt);
    c.id_ = std::move(id);
    c.comp_ = std::move(comp);
    if (c.src_.size() != c.morphisms_.size() || c.tgt_.size() != c.morphisms_.size() ||
        c.id_.size() != c.objects_.size())
        throw Error(ErrorKind::InvalidArgument, "category parts have inconsistent sizes");
    c.out_.assign(c.objects_.size(), {});
    c.in_.assign(c.objects_.size(), {});
    for (Index m = 0; m < c.morphisms_.size(); ++m) {
        if (c.src_[m] >= c.objects_.size() || c.tgt_[m] >= c.objects_.size())
            throw Error(ErrorKind::DanglingReference, "morphism '" + c.morphisms_[m] + "' has an unknown endpoint");
        c.out_[c.src_[m]].push_back(m);
        c.in_[c.tgt_[m]].push_back(m);
    }
    return c;
}

std::optional<Index> FinCat::try_compose(Index g, Index f) const
{
    auto it = comp_.find(pair_key(g, f));
    if (it == comp_.end())
        return std::nullopt;
    return it->second;
}

Index FinCat::compose(Index g, Index f) const
{
    if (auto gf = try_compose(g, f))
        return *gf;
    throw Error(ErrorKind::IllTypedComposite, "no composite of '" + morphisms_[g] + "' after '" + morphisms_[f] + "'");
}

std::vector<Index> FinCat::hom(Index x, Index y) const
{
    std::vector<Index> out;
    for (Index m : out_[x])
        if (tgt_[m] == y)
            out.push_back(m);
    return out;
}

std::optional<Index> FinCat::inverse(Index m) const
{
    for (Index g : out_[tgt_[m]]) {
        if (tgt_[g] != src_[m])
            continue;
        auto gm = try_compose(g, m);
        auto mg = try_compose(m, g);
        if (gm && mg && *gm == id_[src_[m]] && *mg == id_[tgt_[m]])
            return g;
    }
    return std::nullopt;
}

bool operator==(const FinCat& a, const FinCat& b)
{
    return a.objects_ == b.objects_ && a.morphisms_ == b.morphisms_ && a.src_ == b.src_ && a.tgt_ == b.tgt_ &&
           a.id_ == b.id_ && a.comp_ == b.comp_;
}

void check_category_laws(const FinCat& c)
{
    const auto& mor = c.morphisms();
    for (Index x = 0; x < c.objects().size(); ++x) {
        Index i = c.id(x);
        if (c.src(i) != x || c.tgt(i) != x)
            throw Error(ErrorKind::MissingIdentity,
                        "identity of '" + c.objects()[x] + "' is not an endomorphism of it", c.objects()[x]);
    }
    for (const auto& [key, gf] : c.comp_table()) {
        Index g = static_cast<Index>(key >> 32);
        Index f = static_cast<Index>(key & 0xffffffffu);
        if (c.src(g) != c.tgt(f) || c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g))
            throw Error(ErrorKind::IllTypedComposite,
                        "composite ('" + mor[g] + "','" + mor[f] + "') -> '" + mor[gf] + "' is ill-typed",
                        mor[g] + "," + mor[f]);
    }
    for (Index f = 0; f < mor.size(); ++f) {
        for (Index g : c.outgoing(c.tgt(f))) {
            if (!c.try_compose(g, f))
                throw Error(ErrorKind::DanglingReference, "missing composite of '" + mor[g] + "' after '" + mor[f] + "'",
                            mor[g] + "," + mor[f]);
        }
        if (c.compose(c.id(c.tgt(f)), f) != f || c.compose(f, c.id(c.src(f))) != f)
            throw Error(ErrorKind::MissingIdentity, "unit law fails for '" + mor[f] + "'", mor[f]);
    }
    for (Index f = 0; f < mor.size(); ++f) {
        for (Index g : c.outgoing(c.tgt(f))) {
            Index gf = c.compose(g, f);
            for (Index h : c.outgoing(c.tgt(g))) {
                if (c.compose(h, gf) != c.compose(c.compose(h, g), f))
                    throw Error(ErrorKind::NonAssociative,
                                "(" + mor[h] + "," + mor[g] + "," + mor[f] + ") is not associative",
                                mor[h] + "," + mor[g] + "," + mor[f]);
            }
        }
    }
}

FinCat validate_fincat(const RawCategory& raw)
{
    FinSet objects = FinSet::from(raw.objects);
    std::vector<std::string> mor_labels;
    std::map<std::string, std::pair<std::string, std::string>, std::less<>> ends;
    for (const auto& x : objects) {
        mor_labels.push_back(identity_label(x));
        ends[identity_label(x)] = {x, x};
    }
    for (const auto& m : raw.morphisms) {
        if (!objects.find(m.src) || !objects.find(m.tgt))
            throw Error(ErrorKind::DanglingReference, "morphism '" + m.id + "' references an undeclared object", m.id);
        if (m.id.rfind("id:", 0) == 0) {
            // A declared identity must be the generated one.
            auto it = ends.find(m.id);
            if (it == ends.end() || it->second != std::pair{m.src, m.tgt})
                throw Error(ErrorKind::MissingIdentity, "'" + m.id + "' uses the reserved identity prefix", m.id);
            continue;
        }
        mor_labels.push_back(m.id);
        ends[m.id] = {m.src, m.tgt};
    }
    FinSet morphisms = FinSet::from(mor_labels);

    IndexMap src(morphisms.size()), tgt(morphisms.size()), id(objects.size());
    for (Index m = 0; m < morphisms.size(); ++m) {
        const auto& [s, t] = ends.at(morphisms[m]);
        src[m] = objects.at(s);
        tgt[m] = objects.at(t);
    }
    for (Index x = 0; x < objects.size(); ++x)
        id[x] = morphisms.at(identity_label(objects[x]));

    FinCat::CompTable comp;
    auto lookup = [&](const std::string& label, const RawComposite& entry) {
        auto i = morphisms.find(label);
        if (!i)
            throw Error(ErrorKind::DanglingReference,
                        "composite entry (" + entry.g + "," + entry.f + ") references unknown '" + label + "'",
                        entry.g + "," + entry.f);
        return *i;
    };
    for (const auto& entry : raw.compose) {
        Index g = lookup(entry.g, entry);
        Index f = lookup(entry.f, entry);
        Index gf = lookup(entry.gf, entry);
        if (src[g] != tgt[f] || src[gf] != src[f] || tgt[gf] != tgt[g])
            throw Error(ErrorKind::IllTypedComposite,
                        "composite (" + entry.g + "," + entry.f + ") -> " + entry.gf + " is ill-typed",
                        entry.g + "," + entry.f);
        bool unit_entry = (g == id[tgt[f]]) || (f == id[src[g]]);
        if (unit_entry) {
            Index expected = (g == id[tgt[f]]) ? f : g;
            if (gf != expected)
                throw Error(ErrorKind::MissingIdentity,
                            "composite (" + entry.g + "," + entry.f + ") contradicts the unit law",
                            entry.g + "," + entry.f);
        }
        auto [it, inserted] = comp.emplace(pair_key(g, f), gf);
        if (!inserted && it->second != gf)
            throw Error(ErrorKind::IllTypedComposite,
                        "composite (" + entry.g + "," + entry.f + ") declared twice with different values",
                        entry.g + "," + entry.f);
    }
    for (Index m = 0; m < morphisms.size(); ++m) {
        comp.emplace(pair_key(id[tgt[m]], m), m);
        comp.emplace(pair_key(m, id[src[m]]), m);
    }
    FinCat c = FinCat::assemble(std::move(objects), std::move(morphisms), std::move(src), std::move(tgt),
                                std::move(id), std::move(comp));
    check_category_laws(c);
    return c;
}

void CatFunctor::check() const
{
    if (omap.size() != dom.objects().size() || fmap.size() != dom.morphisms().size())
        throw Error(ErrorKind::InvalidMap, "functor maps have the wrong size");
    for (Index x : omap)
        if (x >= cod.objects().size())
            throw Error(ErrorKind::InvalidMap, "object image out of range");
    for (Index m : fmap)
        if (m >= cod.morphisms().size())
            throw Error(ErrorKind::InvalidMap, "morphism image out of range");
    for (Index m = 0; m < dom.morphisms().size(); ++m)
        if (cod.src(fmap[m]) != omap[dom.src(m)] || cod.tgt(fmap[m]) != omap[dom.tgt(m)])
            throw Error(ErrorKind::InvalidMap, "functor does not preserve the ends of '" + dom.morphisms()[m] + "'");
    for (Index x = 0; x < dom.objects().size(); ++x)
        if (fmap[dom.id(x)] != cod.id(omap[x]))
            throw Error(ErrorKind::InvalidMap, "functor does not preserve the identity of '" + dom.objects()[x] + "'");
    for (const auto& [key, gf] : dom.comp_table()) {
        Index g = static_cast<Index>(key >> 32);
        Index f = static_cast<Index>(key & 0xffffffffu);
        if (cod.compose(fmap[g], fmap[f]) != fmap[gf])
            throw Error(ErrorKind::InvalidMap, "functor does not preserve the composite of '" + dom.morphisms()[g] +
                                                   "' after '" + dom.morphisms()[f] + "'");
    }
}

CatFunctor identity_functor(const FinCat& c)
{
    return {c, c, identity_map(c.objects().size()), identity_map(c.morphisms().size())};
}

CatFunctor compose(const CatFunctor& second, const CatFunctor& first)
{
    if (!(first.cod == second.dom))
        throw Error(ErrorKind::InvalidMap, "composing functors with mismatched middle category");
    return {first.dom, second.cod, compose_maps(second.omap, first.omap), compose_maps(second.fmap, first.fmap)};
}

FinCat discrete_cat(const FinSet& s)
{
    std::vector<std::string> ids;
    ids.reserve(s.size());
    for (const auto& x : s)
        ids.push_back(identity_label(x));
    // "id:" prefixing preserves the order of s.
    FinSet mor = FinSet::from(std::move(ids));
    FinCat::CompTable comp;
    for (Index i = 0; i < s.size(); ++i)
        comp.emplace(pair_key(i, i), i);
    return FinCat::assemble(s, mor, identity_map(s.size()), identity_map(s.size()), identity_map(s.size()),
                            std::move(comp));
}

bool is_discrete(const FinCat& c)
{
    return c.morphisms().size() == c.objects().size();
}

bool is_groupoid(const FinCat& c)
{
    for (Index m = 0; m < c.morphisms().size(); ++m)
        if (!c.inverse(m))
            return false;
    return true;
}

Quotient q_components(const FinCat& c)
{
    DisjointSets ds(c.objects().size());
    for (Index m = 0; m < c.morphisms().size(); ++m)
        ds.unite(c.src(m), c.tgt(m));
    return quotient_from_roots(c.objects(), ds.roots());
}

Quotient p_isoclasses(const FinCat& c)
{
    DisjointSets ds(c.objects().size());
    for (Index m = 0; m < c.morphisms().size(); ++m)
        if (c.src(m) != c.tgt(m) && c.inverse(m))
            ds.unite(c.src(m), c.tgt(m));
    return quotient_from_roots(c.objects(), ds.roots());
}

FinCat max_subgroupoid(const FinCat& c)
{
    std::vector<std::string> kept;
    std::vector<Index> old;
    for (Index m = 0; m < c.morphisms().size(); ++m) {
        if (c.inverse(m)) {
            kept.push_back(c.morphisms()[m]);
            old.push_back(m);
        }
    }
    // Subsequence of a sorted set stays sorted.
    FinSet mor = FinSet::from(std::move(kept));
    std::vector<Index> renum(c.morphisms().size(), 0);
    for (Index i = 0; i < old.size(); ++i)
        renum[old[i]] = i;
    IndexMap src(old.size()), tgt(old.size()), id(c.objects().size());
    for (Index i = 0; i < old.size(); ++i) {
        src[i] = c.src(old[i]);
        tgt[i] = c.tgt(old[i]);
    }
    for (Index x = 0; x < c.objects().size(); ++x)
        id[x] = renum[c.id(x)];
    FinCat::CompTable comp;
    for (Index f : old)
        for (Index g : c.outgoing(c.tgt(f)))
            if (c.inverse(g))
                comp.emplace(pair_key(renum[g], renum[f]), renum[c.compose(g, f)]);
    return FinCat::assemble(c.objects(), std::move(mor), std::move(src), std::move(tgt), std::move(id),
                            std::move(comp));
}

CatFunctor unit_q(const FinCat& c)
{
    Quotient q = q_components(c);
    FinCat d = discrete_cat(q.classes);
    IndexMap fmap(c.morphisms().size());
    for (Index m = 0; m < c.morphisms().size(); ++m)
        fmap[m] = d.id(q.cls[c.src(m)]);
    return {c, std::move(d), std::move(q.cls), std::move(fmap)};
}

bool is_equivalence_relation(const FinCat& c)
{
    std::unordered_map<std::uint64_t, Index> seen;
    for (Index m = 0; m < c.morphisms().size(); ++m) {
        if (!seen.emplace(pair_key(c.src(m), c.tgt(m)), m).second)
            return false;
        if (!c.inverse(m))
            return false;
    }
    return true;
}

bool is_cat_equivalence(const CatFunctor& f)
{
    const FinCat& a = f.dom;
    const FinCat& b = f.cod;
    for (Index x = 0; x < a.objects().size(); ++x) {
        for (Index y = 0; y < a.objects().size(); ++y) {
            auto h = a.hom(x, y);
            auto target = b.hom(f.omap[x], f.omap[y]);
            if (h.size() != target.size())
                return false;
            std::vector<Index> images;
            for (Index m : h)
                images.push_back(f.fmap[m]);
            std::sort(images.begin(), images.end());
            if (std::adjacent_find(images.begin(), images.end()) != images.end())
                return false;
        }
    }
    Quotient iso = p_isoclasses(b);
    std::vector<bool> hit(iso.classes.size(), false);
    for (Index x : f.omap)
        hit[iso.cls[x]] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
}

namespace {

SetMap induced_on_quotients(const CatFunctor& f, const Quotient& qa, const Quotient& qb)
{
    IndexMap map(qa.classes.size());
    for (Index x = 0; x < f.dom.objects().size(); ++x)
        map[qa.cls[x]] = qb.cls[f.omap[x]];
    return {qa.classes, qb.classes, std::move(map)};
}

struct PairBuilder {
    std::vector<std::string> labels;
    std::vector<std::pair<Index, Index>> parts;
};

}  // namespace

SetMap q_map(const CatFunctor& f)
{
    return induced_on_quotients(f, q_components(f.dom), q_components(f.cod));
}

SetMap p_map(const CatFunctor& f)
{
    return induced_on_quotients(f, p_isoclasses(f.dom), p_isoclasses(f.cod));
}

namespace {

// Subcategory of C x D on the object pairs accepted by `keep`.
FinCat product_restricted(const FinCat& c, const FinCat& d, const std::function<bool(Index, Index)>& keep)
{
    PairBuilder obj, mor;
    for (Index x = 0; x < c.objects().size(); ++x)
        for (Index y = 0; y < d.objects().size(); ++y)
            if (keep(x, y)) {
                obj.labels.push_back(pair_label(c.objects()[x], d.objects()[y]));
                obj.parts.emplace_back(x, y);
            }
    auto [objects, operm] = FinSet::sorted(obj.labels);
    std::unordered_map<std::uint64_t, Index> obj_index;
    for (std::size_t i = 0; i < obj.parts.size(); ++i)
        obj_index[pair_key(obj.parts[i].first, obj.parts[i].second)] = operm[i];

    for (Index u = 0; u < c.morphisms().size(); ++u)
        for (Index v = 0; v < d.morphisms().size(); ++v)
            if (obj_index.count(pair_key(c.src(u), d.src(v))) && obj_index.count(pair_key(c.tgt(u), d.tgt(v)))) {
                mor.labels.push_back(pair_label(c.morphisms()[u], d.morphisms()[v]));
                mor.parts.emplace_back(u, v);
            }
    auto [morphisms, mperm] = FinSet::sorted(mor.labels);
    std::unordered_map<std::uint64_t, Index> mor_index;
    IndexMap src(morphisms.size()), tgt(morphisms.size()), id(objects.size());
    for (std::size_t i = 0; i < mor.parts.size(); ++i) {
        auto [u, v] = mor.parts[i];
        mor_index[pair_key(u, v)] = mperm[i];
        src[mperm[i]] = obj_index.at(pair_key(c.src(u), d.src(v)));
        tgt[mperm[i]] = obj_index.at(pair_key(c.tgt(u), d.tgt(v)));
    }
    for (std::size_t i = 0; i < obj.parts.size(); ++i) {
        auto [x, y] = obj.parts[i];
        id[operm[i]] = mor_index.at(pair_key(c.id(x), d.id(y)));
    }
    FinCat::CompTable comp;
    for (std::size_t i = 0; i < mor.parts.size(); ++i) {
        auto [u, v] = mor.parts[i];
        for (Index u2 : c.outgoing(c.tgt(u)))
            for (Index v2 : d.outgoing(d.tgt(v))) {
                auto g = mor_index.find(pair_key(u2, v2));
                if (g == mor_index.end())
                    continue;
                comp.emplace(pair_key(g->second, mperm[i]),
                             mor_index.at(pair_key(c.compose(u2, u), d.compose(v2, v))));
            }
    }
    return FinCat::assemble(std::move(objects), std::move(morphisms), std::move(src), std::move(tgt), std::move(id),
                            std::move(comp));
}

}  // namespace

FinCat product(const FinCat& c, const FinCat& d)
{
    return product_restricted(c, d, [](Index, Index) { return true; });
}

FinCat coproduct(const FinCat& c, const FinCat& d)
{
    std::vector<std::string> obj, mor;
    for (const auto& x : c.objects())
        obj.push_back("L." + x);
    for (const auto& x : d.objects())
        obj.push_back("R." + x);
    for (const auto& m : c.morphisms())
        mor.push_back("L." + m);
    for (const auto& m : d.morphisms())
        mor.push_back("R." + m);
    // Tagging preserves order, and every "L." sorts before every "R.".
    FinSet objects = FinSet::from(std::move(obj));
    FinSet morphisms = FinSet::from(std::move(mor));
    const Index oc = static_cast<Index>(c.objects().size());
    const Index mc = static_cast<Index>(c.morphisms().size());
    IndexMap src, tgt, id;
    for (Index m = 0; m < mc; ++m) {
        src.push_back(c.src(m));
        tgt.push_back(c.tgt(m));
    }
    for (Index m = 0; m < d.morphisms().size(); ++m) {
        src.push_back(oc + d.src(m));
        tgt.push_back(oc + d.tgt(m));
    }
    for (Index x = 0; x < oc; ++x)
        id.push_back(c.id(x));
    for (Index x = 0; x < d.objects().size(); ++x)
        id.push_back(mc + d.id(x));
    FinCat::CompTable comp;
    for (const auto& [key, gf] : c.comp_table())
        comp.emplace(key, gf);
    for (const auto& [key, gf] : d.comp_table())
        comp.emplace(pair_key(mc + static_cast<Index>(key >> 32), mc + static_cast<Index>(key & 0xffffffffu)),
                     mc + gf);
    return FinCat::assemble(std::move(objects), std::move(morphisms), std::move(src), std::move(tgt), std::move(id),
                            std::move(comp));
}

FinCat fiber_product_over_discrete(const CatFunctor& f, const CatFunctor& g)
{
    if (!is_discrete(f.cod))
        throw Error(ErrorKind::NotDiscreteBase, "base category has a non-identity morphism");
    if (!(f.cod == g.cod))
        throw Error(ErrorKind::InvalidMap, "functors have different codomains");
    return product_restricted(f.dom, g.dom, [&](Index x, Index y) { return f.omap[x] == g.omap[y]; });
}

FinSet nerve_level(const FinCat& c, int k)
{
    if (k < 0)
        throw Error(ErrorKind::InvalidArgument, "negative nerve level");
    if (k == 0)
        return c.objects();
    if (k == 1)
        return c.morphisms();
    std::vector<std::string> labels;
    std::vector<Index> chain;
    std::vector<std::string> parts(k);
    auto extend = [&](auto&& self, Index from) -> void {
        if (chain.size() == static_cast<std::size_t>(k)) {
            for (int j = 0; j < k; ++j)
                parts[k - 1 - j] = c.morphisms()[chain[j]];
            labels.push_back(tuple_label(parts));
            return;
        }
        for (Index m : c.outgoing(from)) {
            chain.push_back(m);
            self(self, c.tgt(m));
            chain.pop_back();
        }
    };
    for (Index x = 0; x < c.objects().size(); ++x)
        extend(extend, x);
    return FinSet::from(std::move(labels));
}

}  // namespace hdcat
