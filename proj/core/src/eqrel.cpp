#include "hdcat/eqrel.hpp"

#include <array>
#include <cmath>
#include <unordered_map>

#include "hdcat/error.hpp"
#include "hdcat/multinerve.hpp"

namespace hdcat {

namespace {

using Tuple = std::array<Index, 3>;

std::uint64_t tuple_key(const Tuple& t, int len, std::uint64_t size)
{
    std::uint64_t k = 0;
    for (int i = 0; i < len; ++i)
        k = k * size + t[i];
    return k;
}

std::string at_key(std::size_t cell, int n)
{
    return "at=" + index_key(cell_index(cell, n));
}

// Elements of X grouped by their image under f, for one cell.
std::vector<std::vector<Index>> fibers_of(const IndexMap& f, std::size_t cod_size)
{
    std::vector<std::vector<Index>> groups(cod_size);
    for (Index x = 0; x < f.size(); ++x)
        groups[f[x]].push_back(x);
    return groups;
}

void check_surjective(const NFoldMap& f)
{
    const int m = f.dom.n();
    for (std::size_t c = 0; c < f.dom.size(); ++c)
        if (!is_surjective(f.maps[c], f.cod.cell(c).size()))
            throw Error(ErrorKind::SurjectivityFailure, "map is not surjective at cell " + index_key(cell_index(c, m)),
                        at_key(c, m));
    for (int a = 0; a < m; ++a) {
        MultiIndex k(m, 0);
        k[a] = 3;
        GridCell dom = evaluate_grid(f.dom, k, GridMode::Evaluate);
        GridCell cod = evaluate_grid(f.cod, k, GridMode::Evaluate);
        const std::size_t base = cell_id(dom.layout.base);
        std::vector<char> hit(cod.count, 0);
        std::vector<Index> image(dom.layout.positions);
        for (std::size_t g = 0; g < dom.count; ++g) {
            auto grid = dom.grid(g);
            for (std::size_t p = 0; p < image.size(); ++p)
                image[p] = f.maps[base][grid[p]];
            hit[cod.find(image).value()] = 1;
        }
        for (char h : hit)
            if (!h)
                throw Error(ErrorKind::SurjectivityFailure, "map is not surjective at level 3 along axis " + std::to_string(a),
                            "at=" + index_key(k));
    }
}

NFoldCat checked_nfold(const EqrData& e)
{
    if (e.n < 1 || e.f.dom.n() != e.n - 1)
        throw Error(ErrorKind::InvalidArgument, "presentation has inconsistent dimensions");
    e.f.check();
    check_surjective(e.f);
    if (e.n == 1) {
        if (!e.target.empty())
            throw Error(ErrorKind::InvalidArgument, "a 1-dimensional presentation has no target presentation");
    } else {
        if (e.target.size() != 1 || e.target[0].n != e.n - 1)
            throw Error(ErrorKind::InvalidArgument, "target presentation missing or of the wrong dimension");
        if (!(checked_nfold(e.target[0]) == e.f.cod))
            throw Error(ErrorKind::InvalidArgument, "target presentation does not present the codomain");
    }
    return build_internal_eqrel_nfold(e.f);
}

TowerMorphism first_map_morphism(const SurjTower& t)
{
    TowerMorphism h;
    h.maps.push_back(t.maps[0]);
    for (int i = 2; i <= t.n(); ++i)
        h.maps.push_back(identity_map(t.sets[i].size()));
    return h;
}

}  // namespace

FinCat build_internal_eqrel_set(const SetMap& f)
{
    f.check();
    const FinSet& a = f.dom;
    auto groups = fibers_of(f.map, f.cod.size());
    std::vector<std::pair<Index, Index>> pairs;
    std::vector<std::string> labels;
    for (Index x = 0; x < a.size(); ++x)
        for (Index y : groups[f.map[x]]) {
            pairs.emplace_back(x, y);
            labels.push_back(pair_label(a[x], a[y]));
        }
    auto [mor, perm] = FinSet::sorted(std::move(labels));
    IndexMap src(mor.size()), tgt(mor.size()), id(a.size());
    std::unordered_map<std::uint64_t, Index> index;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [x, y] = pairs[i];
        tgt[perm[i]] = x;
        src[perm[i]] = y;
        index.emplace(pair_key(x, y), perm[i]);
        if (x == y)
            id[x] = perm[i];
    }
    FinCat::CompTable comp;
    for (auto [x, y] : pairs)
        for (Index z : groups[f.map[x]])
            comp.emplace(pair_key(index.at(pair_key(x, y)), index.at(pair_key(y, z))), index.at(pair_key(x, z)));
    return FinCat::assemble(a, std::move(mor), std::move(src), std::move(tgt), std::move(id), std::move(comp));
}

NFoldCat build_internal_eqrel_nfold(const NFoldMap& f)
{
    const NFoldCat& x = f.dom;
    const int m = x.n();
    const int n = m + 1;
    const std::size_t top = axis_stride(m);
    const std::size_t cells = cell_count(n);
    std::vector<std::vector<Tuple>> elems(cells);
    std::vector<std::unordered_map<std::uint64_t, Index>> lookup(cells);
    MssBuilder b(n);
    for (std::size_t c = 0; c < cells; ++c) {
        const int level = level_of(c, m);
        const std::size_t s = c % top;
        const FinSet& xs = x.cell(s);
        auto add = [&](Tuple t, std::string label) {
            lookup[c].emplace(tuple_key(t, level + 1, xs.size()), static_cast<Index>(elems[c].size()));
            elems[c].push_back(t);
            b.labels[c].push_back(std::move(label));
        };
        if (level == 0) {
            for (Index a = 0; a < xs.size(); ++a)
                add({a, 0, 0}, xs[a]);
            continue;
        }
        auto groups = fibers_of(f.maps[s], f.cod.cell(s).size());
        for (Index a = 0; a < xs.size(); ++a)
            for (Index a2 : groups[f.maps[s][a]]) {
                if (level == 1) {
                    add({a, a2, 0}, pair_label(xs[a], xs[a2]));
                    continue;
                }
                for (Index a3 : groups[f.maps[s][a]])
                    add({a, a2, a3}, pair_label(pair_label(xs[a], xs[a2]), pair_label(xs[a2], xs[a3])));
            }
    }
    auto find = [&](std::size_t c, Tuple t) {
        return lookup[c].at(tuple_key(t, level_of(c, m) + 1, x.cell(c % top).size()));
    };
    for (std::size_t c = 0; c < cells; ++c) {
        const int level = level_of(c, m);
        const std::size_t s = c % top;
        const auto& es = elems[c];
        auto along_last = [&](std::size_t to, auto&& project) {
            IndexMap out;
            out.reserve(es.size());
            for (const Tuple& t : es)
                out.push_back(find(to, project(t)));
            return out;
        };
        if (level == 1) {
            b.faces[c][m] = {along_last(c - top, [](const Tuple& t) { return Tuple{t[0], 0, 0}; }),
                             along_last(c - top, [](const Tuple& t) { return Tuple{t[1], 0, 0}; })};
        } else if (level == 2) {
            b.faces[c][m] = {along_last(c - top, [](const Tuple& t) { return Tuple{t[0], t[1], 0}; }),
                             along_last(c - top, [](const Tuple& t) { return Tuple{t[0], t[2], 0}; }),
                             along_last(c - top, [](const Tuple& t) { return Tuple{t[1], t[2], 0}; })};
        }
        if (level == 0) {
            b.degens[c][m] = {along_last(c + top, [](const Tuple& t) { return Tuple{t[0], t[0], 0}; })};
        } else if (level == 1) {
            b.degens[c][m] = {along_last(c + top, [](const Tuple& t) { return Tuple{t[0], t[1], t[1]}; }),
                              along_last(c + top, [](const Tuple& t) { return Tuple{t[0], t[0], t[1]}; })};
        }
        for (int a = 0; a < m; ++a) {
            const std::size_t st = axis_stride(a);
            auto componentwise = [&](const IndexMap& op, std::size_t to) {
                return along_last(to, [&](const Tuple& t) {
                    Tuple u{0, 0, 0};
                    for (int i = 0; i <= level; ++i)
                        u[i] = op[t[i]];
                    return u;
                });
            };
            for (std::size_t i = 0; i < b.faces[c][a].size(); ++i)
                b.faces[c][a][i] = componentwise(x.face(s, a, static_cast<int>(i)), c - st);
            for (std::size_t i = 0; i < b.degens[c][a].size(); ++i)
                b.degens[c][a][i] = componentwise(x.degen(s, a, static_cast<int>(i)), c + st);
        }
    }
    return promote(b.build());
}

void validate_eqr(const EqrData& e)
{
    checked_nfold(e);
}

NFoldCat eqr_to_nfold(const EqrData& e)
{
    return checked_nfold(e);
}

Normalized normalize_last_axis(const NFoldCat& x)
{
    const int n = x.n();
    if (n < 1)
        throw Error(ErrorKind::InvalidArgument, "normalization needs n >= 1");
    const int m = n - 1;
    const std::size_t top = axis_stride(m);
    std::vector<std::vector<std::string>> labels(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) {
        const int level = level_of(c, m);
        if (level == 0) {
            labels[c] = x.cell(c).labels();
            continue;
        }
        const auto& below = labels[c - top];
        const IndexMap& d0 = x.face(c, m, 0);
        const IndexMap& dl = x.face(c, m, level == 1 ? 1 : 2);
        for (Index e = 0; e < x.cell(c).size(); ++e)
            labels[c].push_back(pair_label(below[d0[e]], below[dl[e]]));
    }
    std::vector<IndexMap> perms;
    TruncMSSet carrier = relabel(x.carrier(), std::move(labels), &perms);
    Normalized out;
    out.object = detail::assume_segal(std::move(carrier));
    out.iso = {x, out.object, std::move(perms)};
    return out;
}

EqrData nfold_to_eqr(const NFoldCat& x, const HdCert& cert)
{
    const int n = x.n();
    if (n < 1)
        throw Error(ErrorKind::InvalidArgument, "presentations need n >= 1");
    const int m = n - 1;
    NFoldCat x0 = slice(x, m, 0);
    if (m == 0)
        return {1, {x0, cert.pn, cert.classes}, {}};
    Normalized np = normalize_last_axis(cert.pn);
    NFoldMap f{x0, np.object, {}};
    for (std::size_t s = 0; s < x0.size(); ++s)
        f.maps.push_back(compose_maps(np.iso.maps[s], cert.classes[s]));
    // Normalizing the last axis of p_n X leaves its level-0 cells, and so
    // its own p_{n-1} and class maps, unchanged.
    EqrData e{n, std::move(f), {}};
    e.target.push_back(nfold_to_eqr(np.object, cert.pn_certificate()));
    return e;
}

EqrData canonicalize_eqr(const EqrData& e)
{
    const NFoldCat& x = e.f.dom;
    const NFoldCat& y = e.f.cod;
    auto least_preimages = [&](const NFoldCat& y0) {
        std::vector<std::vector<std::string>> labels(y0.size());
        for (std::size_t t = 0; t < y0.size(); ++t) {
            labels[t].assign(y0.cell(t).size(), {});
            std::vector<char> seen(y0.cell(t).size(), 0);
            // Labels are sorted, so the first preimage met is the least.
            for (Index a = 0; a < x.cell(t).size(); ++a) {
                Index v = e.f.maps[t][a];
                if (!seen[v]) {
                    seen[v] = 1;
                    labels[t][v] = x.cell(t)[a];
                }
            }
            for (char s : seen)
                if (!s)
                    throw Error(ErrorKind::SurjectivityFailure, "map is not surjective", at_key(t, y0.n()));
        }
        return labels;
    };
    if (e.n == 1) {
        auto labels = least_preimages(y);
        auto [set, rho] = FinSet::sorted(std::move(labels[0]));
        NFoldMap f{x, set_as_nfold(set), {compose_maps(rho, e.f.maps[0])}};
        return {1, std::move(f), {}};
    }
    const EqrData& t = e.target_data();
    const NFoldCat& y0 = t.f.dom;
    std::vector<IndexMap> perms;
    NFoldCat y0c = detail::assume_segal(relabel(y0.carrier(), least_preimages(y0), &perms));
    NFoldMap rho{y0, y0c, perms};
    NFoldMap rho_inv{y0c, y0, {}};
    for (const auto& p : perms) {
        IndexMap inv(p.size());
        for (Index i = 0; i < p.size(); ++i)
            inv[p[i]] = i;
        rho_inv.maps.push_back(std::move(inv));
    }
    EqrData moved{t.n, compose(t.f, rho_inv), t.target};
    EqrData canon_target = canonicalize_eqr(moved);
    NFoldCat yc = build_internal_eqrel_nfold(canon_target.f);
    NFoldMap iso = eqrel_lift(rho, y, yc);
    EqrData out{e.n, compose(iso, e.f), {}};
    out.target.push_back(std::move(canon_target));
    return out;
}

EqrData slice_eqr(const EqrData& e, int level)
{
    if (e.n < 2)
        throw Error(ErrorKind::InvalidArgument, "slicing a presentation needs n >= 2");
    EqrData out{e.n - 1, slice_map(e.f, 0, level), {}};
    if (e.n >= 3)
        out.target.push_back(slice_eqr(e.target_data(), level));
    return out;
}

NFoldMap eqrel_lift(const NFoldMap& h0, const NFoldCat& dom, const NFoldCat& cod)
{
    const int n = dom.n();
    const int m = n - 1;
    if (n < 1 || cod.n() != n || h0.dom.n() != m)
        throw Error(ErrorKind::InvalidArgument, "lift has inconsistent dimensions");
    const std::size_t top = axis_stride(m);
    NFoldMap h{dom, cod, std::vector<IndexMap>(dom.size())};
    for (int level = 0; level <= kStoredLevel; ++level)
        for (std::size_t s = 0; s < top; ++s) {
            const std::size_t c = s + static_cast<std::size_t>(level) * top;
            IndexMap& out = h.maps[c];
            out.resize(dom.cell(c).size());
            if (level == 0) {
                out = h0.maps[s];
                continue;
            }
            const IndexMap& below = h.maps[c - top];
            if (level == 1) {
                std::unordered_map<std::uint64_t, Index> pairs;
                for (Index e = 0; e < cod.cell(c).size(); ++e)
                    pairs.emplace(pair_key(cod.face(c, m, 0)[e], cod.face(c, m, 1)[e]), e);
                for (Index e = 0; e < out.size(); ++e) {
                    auto it = pairs.find(pair_key(below[dom.face(c, m, 0)[e]], below[dom.face(c, m, 1)[e]]));
                    if (it == pairs.end())
                        throw Error(ErrorKind::InvalidMap, "pair '" + dom.cell(c)[e] + "' has no image", at_key(c, n));
                    out[e] = it->second;
                }
                continue;
            }
            for (Index z = 0; z < out.size(); ++z) {
                auto w = cod.segal_lift(m, c, h.maps[c - top][dom.face(c, m, 2)[z]], h.maps[c - top][dom.face(c, m, 0)[z]]);
                if (!w)
                    throw Error(ErrorKind::InvalidMap, "composable pair '" + dom.cell(c)[z] + "' has no image",
                                at_key(c, n));
                out[z] = *w;
            }
        }
    h.check();
    return h;
}

NFoldMap eqr_morphism_target_map(const NFoldMap& alpha, const EqrData& dom, const EqrData& cod)
{
    const int n = dom.n;
    if (cod.n != n || alpha.dom.n() != n)
        throw Error(ErrorKind::InvalidArgument, "morphism and presentations have different dimensions");
    const NFoldMap& f = dom.f;
    const NFoldMap& g = cod.f;
    NFoldMap bar{f.cod, g.cod, {}};
    constexpr Index unset = static_cast<Index>(-1);
    for (std::size_t s = 0; s < f.cod.size(); ++s) {
        IndexMap m(f.cod.cell(s).size(), unset);
        for (Index x = 0; x < f.maps[s].size(); ++x) {
            Index y = f.maps[s][x];
            Index image = g.maps[s][alpha.maps[s][x]];
            if (m[y] == unset)
                m[y] = image;
            else if (m[y] != image)
                throw Error(ErrorKind::NonCommutingSquare,
                            "no map on targets: '" + f.cod.cell(s)[y] + "' would go to both '" + g.cod.cell(s)[m[y]] +
                                "' and '" + g.cod.cell(s)[image] + "'",
                            at_key(s, n - 1) + " witness=" + f.dom.cell(s)[x]);
        }
        for (Index v : m)
            if (v == unset)
                throw Error(ErrorKind::SurjectivityFailure, "presentation map is not surjective", at_key(s, n - 1));
        bar.maps.push_back(std::move(m));
    }
    bar.check();
    return bar;
}

void SurjTower::check() const
{
    if (sets.empty() || maps.size() + 1 != sets.size())
        throw Error(ErrorKind::InvalidMap, "a tower needs one map between consecutive sets");
    for (std::size_t i = 0; i < maps.size(); ++i) {
        SetMap{sets[i], sets[i + 1], maps[i]}.check();
        if (!is_surjective(maps[i], sets[i + 1].size()))
            throw Error(ErrorKind::SurjectivityFailure, "tower map " + std::to_string(i + 1) + " is not surjective",
                        "stage=" + std::to_string(i + 1));
    }
}

void TowerMorphism::check(const SurjTower& dom, const SurjTower& cod) const
{
    if (maps.size() != dom.sets.size() || cod.sets.size() != dom.sets.size())
        throw Error(ErrorKind::InvalidMap, "tower morphism has the wrong number of components");
    for (std::size_t i = 0; i < maps.size(); ++i)
        SetMap{dom.sets[i], cod.sets[i], maps[i]}.check();
    for (std::size_t i = 0; i + 1 < maps.size(); ++i)
        for (Index x = 0; x < dom.sets[i].size(); ++x)
            if (cod.maps[i][maps[i][x]] != maps[i + 1][dom.maps[i][x]])
                throw Error(ErrorKind::NonCommutingSquare, "tower morphism does not commute",
                            "stage=" + std::to_string(i + 1) + " witness=" + dom.sets[i][x]);
}

SurjTower source_tower(const SurjTower& t)
{
    if (t.n() < 1)
        throw Error(ErrorKind::InvalidArgument, "a tower of length 0 has no source tower");
    SurjTower s;
    s.sets.push_back(t.sets[0]);
    for (int i = 2; i <= t.n(); ++i)
        s.sets.push_back(t.sets[i]);
    if (t.n() >= 2) {
        s.maps.push_back(compose_maps(t.maps[1], t.maps[0]));
        for (int i = 2; i < t.n(); ++i)
            s.maps.push_back(t.maps[i]);
    }
    return s;
}

SurjTower target_tower(const SurjTower& t)
{
    if (t.n() < 1)
        throw Error(ErrorKind::InvalidArgument, "a tower of length 0 has no target tower");
    return {{t.sets.begin() + 1, t.sets.end()}, {t.maps.begin() + 1, t.maps.end()}};
}

EqrData tower_to_eqr(const SurjTower& t)
{
    t.check();
    if (t.n() < 1)
        throw Error(ErrorKind::InvalidArgument, "a presentation needs a tower of length at least 1");
    if (t.n() == 1)
        return {1, set_map_as_nfold({t.sets[0], t.sets[1], t.maps[0]}), {}};
    SurjTower src = source_tower(t);
    SurjTower tgt = target_tower(t);
    EqrData e{t.n(), tower_map_to_nfold(src, tgt, first_map_morphism(t)), {}};
    e.target.push_back(tower_to_eqr(tgt));
    check_surjective(e.f);
    return e;
}

NFoldCat tower_nfold(const SurjTower& t)
{
    if (t.n() == 0)
        return set_as_nfold(t.sets[0]);
    return build_internal_eqrel_nfold(tower_map_to_nfold(source_tower(t), target_tower(t), first_map_morphism(t)));
}

NFoldMap tower_map_to_nfold(const SurjTower& dom, const SurjTower& cod, const TowerMorphism& h)
{
    h.check(dom, cod);
    if (dom.n() == 0)
        return set_map_as_nfold({dom.sets[0], cod.sets[0], h.maps[0]});
    TowerMorphism hs;
    hs.maps.push_back(h.maps[0]);
    for (std::size_t i = 2; i < h.maps.size(); ++i)
        hs.maps.push_back(h.maps[i]);
    NFoldMap h0 = tower_map_to_nfold(source_tower(dom), source_tower(cod), hs);
    return eqrel_lift(h0, tower_nfold(dom), tower_nfold(cod));
}

double tower_cell_size(const SurjTower& t, std::span<const int> k)
{
    const int n = t.n();
    if (static_cast<int>(k.size()) != n)
        throw Error(ErrorKind::InvalidArgument, "multi-index length differs from the tower length");
    std::vector<double> weight(t.sets[0].size(), 1.0);
    for (int j = 1; j <= n; ++j) {
        std::vector<double> next(t.sets[j].size(), 0.0);
        for (Index b = 0; b < weight.size(); ++b)
            next[t.maps[j - 1][b]] += weight[b];
        for (double& w : next)
            w = std::pow(w, k[n - j] + 1);
        weight = std::move(next);
    }
    double total = 0;
    for (double w : weight)
        total += w;
    return total;
}

double tower_stored_size(const SurjTower& t)
{
    double total = 0;
    for (std::size_t c = 0; c < cell_count(t.n()); ++c)
        total += tower_cell_size(t, cell_index(c, t.n()));
    return total;
}

}  // namespace hdcat
