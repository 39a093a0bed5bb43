#include "hdcat/nfold.hpp"

#include <algorithm>
#include <unordered_map>

#include "hdcat/error.hpp"

namespace hdcat {

struct NFoldCat::Impl {
    TruncMSSet carrier;
    /// lifts[axis][cell] maps pair_key(first, second) to the level-2 element;
    /// populated for cells at level 2 on the axis.
    std::vector<std::vector<std::unordered_map<std::uint64_t, Index>>> lifts;
};

namespace {

std::string where(int axis, std::size_t cell, int n)
{
    return "axis=" + std::to_string(axis) + " at=" + index_key(cell_index(cell, n));
}

[[noreturn]] void segal_failure(int axis, std::size_t cell, int n, const std::string& reason, const std::string& detail)
{
    throw Error(ErrorKind::SegalFailure, "Segal map along axis " + std::to_string(axis) + " at " +
                                             index_key(cell_index(cell, n)) + " is " + reason + ": " + detail,
                where(axis, cell, n) + " reason=" + reason);
}

}  // namespace

struct NFoldAccess {
    static NFoldCat make(TruncMSSet x, bool verify)
    {
        if (verify)
            check_mss(x);
        auto impl = std::make_shared<NFoldCat::Impl>();
        const int n = x.n;
        impl->lifts.assign(n, {});
        for (int a = 0; a < n; ++a) {
            impl->lifts[a].assign(x.size(), {});
            const std::size_t st = axis_stride(a);
            for (std::size_t c = 0; c < x.size(); ++c) {
                if (level_of(c, a) != 2)
                    continue;
                auto& table = impl->lifts[a][c];
                const IndexMap& d0 = x.faces[c][a][0];
                const IndexMap& d2 = x.faces[c][a][2];
                table.reserve(x.cells[c].size());
                for (Index z = 0; z < x.cells[c].size(); ++z) {
                    auto [it, fresh] = table.emplace(pair_key(d2[z], d0[z]), z);
                    if (!fresh)
                        segal_failure(a, c, n, "not injective",
                                      "'" + x.cells[c][it->second] + "' and '" + x.cells[c][z] +
                                          "' have the same composable pair");
                }
                if (!verify)
                    continue;
                // Count composable pairs in the level-1 cell.
                const std::size_t c1 = c - st;
                const std::size_t c0 = c1 - st;
                std::vector<std::size_t> into(x.cells[c0].size(), 0), out_of(x.cells[c0].size(), 0);
                for (Index e = 0; e < x.cells[c1].size(); ++e) {
                    ++into[x.faces[c1][a][0][e]];
                    ++out_of[x.faces[c1][a][1][e]];
                }
                std::size_t pairs = 0;
                for (std::size_t v = 0; v < into.size(); ++v)
                    pairs += into[v] * out_of[v];
                if (pairs != x.cells[c].size())
                    segal_failure(a, c, n, "not surjective",
                                  std::to_string(pairs) + " composable pairs but " + std::to_string(x.cells[c].size()) +
                                      " level-2 elements");
            }
        }
        impl->carrier = std::move(x);
        NFoldCat result(std::move(impl));
        if (verify)
            check_associativity(result);
        return result;
    }

    static void check_associativity(const NFoldCat& x)
    {
        const int n = x.n();
        for (int a = 0; a < n; ++a) {
            const std::size_t st = axis_stride(a);
            for (std::size_t c = 0; c < x.size(); ++c) {
                if (level_of(c, a) != 1)
                    continue;
                const IndexMap& tgt = x.face(c, a, 0);
                const IndexMap& src = x.face(c, a, 1);
                const std::size_t objects = x.cell(c - st).size();
                // With at most one element per (source, target) both sides
                // of the law coincide.
                std::unordered_map<std::uint64_t, Index> ends;
                bool thin = true;
                for (Index e = 0; e < tgt.size() && thin; ++e)
                    thin = ends.emplace(pair_key(src[e], tgt[e]), e).second;
                if (thin)
                    continue;
                std::vector<std::vector<Index>> out(objects);
                for (Index e = 0; e < src.size(); ++e)
                    out[src[e]].push_back(e);
                for (Index f = 0; f < src.size(); ++f) {
                    for (Index g : out[tgt[f]]) {
                        Index gf = *x.compose(a, c, g, f);
                        for (Index h : out[tgt[g]]) {
                            Index lhs = *x.compose(a, c, h, gf);
                            Index rhs = *x.compose(a, c, *x.compose(a, c, h, g), f);
                            if (lhs != rhs)
                                segal_failure(a, c, n, "not associative",
                                              "(" + x.cell(c)[h] + "," + x.cell(c)[g] + "," + x.cell(c)[f] + ")");
                        }
                    }
                }
            }
        }
    }
};

NFoldCat::NFoldCat()
{
    static const NFoldCat empty = set_as_nfold(FinSet());
    impl_ = empty.impl_;
}

const TruncMSSet& NFoldCat::carrier() const noexcept
{
    return impl_->carrier;
}

std::optional<Index> NFoldCat::segal_lift(int axis, std::size_t id2, Index first, Index second) const
{
    const auto& table = impl_->lifts[axis][id2];
    auto it = table.find(pair_key(first, second));
    if (it == table.end())
        return std::nullopt;
    return it->second;
}

std::optional<Index> NFoldCat::compose(int axis, std::size_t id1, Index second, Index first) const
{
    std::size_t id2 = id1 + axis_stride(axis);
    auto z = segal_lift(axis, id2, first, second);
    if (!z)
        return std::nullopt;
    return face(id2, axis, 1)[*z];
}

NFoldCat promote(TruncMSSet x)
{
    return NFoldAccess::make(std::move(x), true);
}

namespace detail {

NFoldCat assume_segal(TruncMSSet x)
{
    return NFoldAccess::make(std::move(x), false);
}

}  // namespace detail

void NFoldMap::check() const
{
    const int n = dom.n();
    if (cod.n() != n)
        throw Error(ErrorKind::InvalidMap, "domain and codomain have different dimensions");
    if (maps.size() != dom.size())
        throw Error(ErrorKind::InvalidMap, "map has the wrong number of cells");
    for (std::size_t c = 0; c < dom.size(); ++c) {
        if (maps[c].size() != dom.cell(c).size())
            throw Error(ErrorKind::InvalidMap, "cell map has the wrong size", "at=" + index_key(cell_index(c, n)));
        for (Index v : maps[c])
            if (v >= cod.cell(c).size())
                throw Error(ErrorKind::InvalidMap, "cell map leaves the codomain", "at=" + index_key(cell_index(c, n)));
    }
    for (std::size_t c = 0; c < dom.size(); ++c) {
        for (int a = 0; a < n; ++a) {
            const std::size_t st = axis_stride(a);
            auto square = [&](const IndexMap& dm, const IndexMap& cm, std::size_t to, const std::string& name) {
                for (Index e = 0; e < dm.size(); ++e)
                    if (cm[maps[c][e]] != maps[to][dm[e]])
                        throw Error(ErrorKind::InvalidMap,
                                    "map does not commute with " + name + " on '" + dom.cell(c)[e] + "'",
                                    where(a, c, n) + " map=" + name);
            };
            const auto& df = dom.carrier().faces[c][a];
            for (std::size_t i = 0; i < df.size(); ++i)
                square(df[i], cod.face(c, a, static_cast<int>(i)), c - st, "d" + std::to_string(i));
            const auto& dd = dom.carrier().degens[c][a];
            for (std::size_t i = 0; i < dd.size(); ++i)
                square(dd[i], cod.degen(c, a, static_cast<int>(i)), c + st, "s" + std::to_string(i));
        }
    }
}

NFoldMap identity_nfold_map(const NFoldCat& x)
{
    NFoldMap f{x, x, {}};
    for (std::size_t c = 0; c < x.size(); ++c)
        f.maps.push_back(identity_map(x.cell(c).size()));
    return f;
}

NFoldMap compose(const NFoldMap& second, const NFoldMap& first)
{
    if (!(first.cod == second.dom))
        throw Error(ErrorKind::InvalidMap, "composing maps with mismatched middle object");
    NFoldMap f{first.dom, second.cod, {}};
    for (std::size_t c = 0; c < first.maps.size(); ++c)
        f.maps.push_back(compose_maps(second.maps[c], first.maps[c]));
    return f;
}

NFoldCat set_as_nfold(const FinSet& s)
{
    return detail::assume_segal(constant_mss(0, s));
}

NFoldMap set_map_as_nfold(const SetMap& f)
{
    return {set_as_nfold(f.dom), set_as_nfold(f.cod), {f.map}};
}

NFoldCat nerve_nfold(const FinCat& c)
{
    MssBuilder b(1);
    const auto& mor = c.morphisms();
    b.labels[0] = c.objects().labels();
    b.labels[1] = mor.labels();
    // Level 2 in construction order: pairs (g, f) with g after f.
    std::vector<std::pair<Index, Index>> chains;
    for (Index f = 0; f < mor.size(); ++f)
        for (Index g : c.outgoing(c.tgt(f))) {
            chains.emplace_back(g, f);
            b.labels[2].push_back(pair_label(mor[g], mor[f]));
        }
    std::unordered_map<std::uint64_t, Index> chain_index;
    for (Index i = 0; i < chains.size(); ++i)
        chain_index[pair_key(chains[i].first, chains[i].second)] = i;

    b.faces[1][0][0] = c.tgt_map();
    b.faces[1][0][1] = c.src_map();
    b.degens[0][0][0] = c.id_map();
    IndexMap d0, d1, d2;
    for (auto [g, f] : chains) {
        d0.push_back(g);
        d1.push_back(c.compose(g, f));
        d2.push_back(f);
    }
    b.faces[2][0] = {d0, d1, d2};
    IndexMap s0, s1;
    for (Index m = 0; m < mor.size(); ++m) {
        s0.push_back(chain_index.at(pair_key(m, c.id(c.src(m)))));
        s1.push_back(chain_index.at(pair_key(c.id(c.tgt(m)), m)));
    }
    b.degens[1][0] = {s0, s1};
    return detail::assume_segal(b.build());
}

NFoldCat slice(const NFoldCat& x, int axis, int level)
{
    const int n = x.n();
    if (axis < 0 || axis >= n || level < 0 || level > kStoredLevel)
        throw Error(ErrorKind::InvalidArgument, "slice axis or level out of range");
    TruncMSSet y;
    y.n = n - 1;
    const std::size_t cells = cell_count(n - 1);
    y.cells.resize(cells);
    y.faces.assign(cells, std::vector<std::vector<IndexMap>>(n - 1));
    y.degens.assign(cells, std::vector<std::vector<IndexMap>>(n - 1));
    for (std::size_t c = 0; c < cells; ++c) {
        std::size_t old = insert_axis(c, axis, level);
        y.cells[c] = x.cell(old);
        for (int b = 0; b < n - 1; ++b) {
            int ob = b < axis ? b : b + 1;
            y.faces[c][b] = x.carrier().faces[old][ob];
            y.degens[c][b] = x.carrier().degens[old][ob];
        }
    }
    return detail::assume_segal(std::move(y));
}

NFoldMap slice_map(const NFoldMap& f, int axis, int level)
{
    NFoldMap g{slice(f.dom, axis, level), slice(f.cod, axis, level), {}};
    for (std::size_t c = 0; c < cell_count(f.dom.n() - 1); ++c)
        g.maps.push_back(f.maps[insert_axis(c, axis, level)]);
    return g;
}

SimplicialSlices xi(const NFoldCat& x, int axis)
{
    SimplicialSlices s;
    s.axis = axis;
    for (int k = 0; k <= kStoredLevel; ++k)
        s.levels[k] = slice(x, axis, k);
    const std::size_t cells = cell_count(x.n() - 1);
    for (int k = 0; k <= kStoredLevel; ++k) {
        if (k >= 1)
            for (int i = 0; i <= k; ++i) {
                NFoldMap m{s.levels[k], s.levels[k - 1], {}};
                for (std::size_t c = 0; c < cells; ++c)
                    m.maps.push_back(x.face(insert_axis(c, axis, k), axis, i));
                s.faces[k].push_back(std::move(m));
            }
        if (k <= 1)
            for (int i = 0; i <= k; ++i) {
                NFoldMap m{s.levels[k], s.levels[k + 1], {}};
                for (std::size_t c = 0; c < cells; ++c)
                    m.maps.push_back(x.degen(insert_axis(c, axis, k), axis, i));
                s.degens[k].push_back(std::move(m));
            }
    }
    return s;
}

NFoldCat xi_inverse(const SimplicialSlices& s)
{
    const int m = s.levels[0].n();
    const int n = m + 1;
    const int axis = s.axis;
    TruncMSSet x;
    x.n = n;
    x.cells.resize(cell_count(n));
    x.faces.assign(cell_count(n), std::vector<std::vector<IndexMap>>(n));
    x.degens.assign(cell_count(n), std::vector<std::vector<IndexMap>>(n));
    for (int k = 0; k <= kStoredLevel; ++k) {
        const NFoldCat& lvl = s.levels[k];
        if (lvl.n() != m)
            throw Error(ErrorKind::InvalidArgument, "slices have different dimensions");
        for (std::size_t c = 0; c < lvl.size(); ++c) {
            std::size_t id = insert_axis(c, axis, k);
            x.cells[id] = lvl.cell(c);
            for (int b = 0; b < m; ++b) {
                int ob = b < axis ? b : b + 1;
                x.faces[id][ob] = lvl.carrier().faces[c][b];
                x.degens[id][ob] = lvl.carrier().degens[c][b];
            }
            for (const auto& f : s.faces[k])
                x.faces[id][axis].push_back(f.maps[c]);
            for (const auto& d : s.degens[k])
                x.degens[id][axis].push_back(d.maps[c]);
        }
    }
    return promote(std::move(x));
}

FinCat category_along(const NFoldCat& x, int axis, std::span<const int> at)
{
    const int n = x.n();
    if (axis < 0 || axis >= n || static_cast<int>(at.size()) != n)
        throw Error(ErrorKind::InvalidArgument, "category_along needs an axis and a full multi-index");
    MultiIndex k(at.begin(), at.end());
    k[axis] = 0;
    const std::size_t c0 = cell_id(k);
    const std::size_t st = axis_stride(axis);
    const std::size_t c1 = c0 + st;
    const IndexMap& tgt = x.face(c1, axis, 0);
    const IndexMap& src = x.face(c1, axis, 1);
    std::vector<std::vector<Index>> out(x.cell(c0).size());
    for (Index e = 0; e < src.size(); ++e)
        out[src[e]].push_back(e);
    FinCat::CompTable comp;
    for (Index f = 0; f < src.size(); ++f)
        for (Index g : out[tgt[f]])
            comp.emplace(pair_key(g, f), *x.compose(axis, c1, g, f));
    return FinCat::assemble(x.cell(c0), x.cell(c1), src, tgt, x.degen(c0, axis, 0), std::move(comp));
}

FinCat category_at(const NFoldCat& x, std::span<const int> s)
{
    const int n = x.n();
    if (n < 1 || static_cast<int>(s.size()) != n - 1)
        throw Error(ErrorKind::InvalidArgument, "category_at needs n-1 entries");
    MultiIndex k(s.begin(), s.end());
    k.push_back(0);
    return category_along(x, n - 1, k);
}

CatFunctor functor_at(const NFoldMap& f, std::span<const int> s)
{
    const int n = f.dom.n();
    MultiIndex k(s.begin(), s.end());
    k.push_back(0);
    const std::size_t c0 = cell_id(k);
    const std::size_t c1 = c0 + axis_stride(n - 1);
    return {category_at(f.dom, s), category_at(f.cod, s), f.maps[c0], f.maps[c1]};
}

bool is_discrete(const NFoldCat& x)
{
    const FinSet& base = x.cell(0);
    const IndexMap id = identity_map(base.size());
    for (std::size_t c = 0; c < x.size(); ++c) {
        if (!(x.cell(c) == base))
            return false;
        for (const auto& per_axis : x.carrier().faces[c])
            for (const auto& m : per_axis)
                if (m != id)
                    return false;
        for (const auto& per_axis : x.carrier().degens[c])
            for (const auto& m : per_axis)
                if (m != id)
                    return false;
    }
    return true;
}

NFoldCat discrete_nfold(const FinSet& s, int n)
{
    return detail::assume_segal(constant_mss(n, s));
}

NFoldCat discrete_inclusion(const NFoldCat& y)
{
    const int m = y.n();
    const int n = m + 1;
    TruncMSSet x;
    x.n = n;
    x.cells.resize(cell_count(n));
    x.faces.assign(cell_count(n), std::vector<std::vector<IndexMap>>(n));
    x.degens.assign(cell_count(n), std::vector<std::vector<IndexMap>>(n));
    for (int k = 0; k <= kStoredLevel; ++k) {
        for (std::size_t c = 0; c < y.size(); ++c) {
            std::size_t id = insert_axis(c, m, k);
            x.cells[id] = y.cell(c);
            for (int b = 0; b < m; ++b) {
                x.faces[id][b] = y.carrier().faces[c][b];
                x.degens[id][b] = y.carrier().degens[c][b];
            }
            IndexMap ident = identity_map(y.cell(c).size());
            if (k >= 1)
                x.faces[id][m].assign(k + 1, ident);
            if (k <= 1)
                x.degens[id][m].assign(k + 1, ident);
        }
    }
    return detail::assume_segal(std::move(x));
}

NFoldMap discrete_inclusion(const NFoldMap& f)
{
    NFoldMap g{discrete_inclusion(f.dom), discrete_inclusion(f.cod), {}};
    const int m = f.dom.n();
    g.maps.resize(cell_count(m + 1));
    for (int k = 0; k <= kStoredLevel; ++k)
        for (std::size_t c = 0; c < f.maps.size(); ++c)
            g.maps[insert_axis(c, m, k)] = f.maps[c];
    return g;
}

const FinSet& underlying(const NFoldCat& x)
{
    if (!is_discrete(x))
        throw Error(ErrorKind::InvalidArgument, "underlying set requested of a non-discrete object");
    return x.cell(0);
}

namespace {

// Cellwise product restricted to pairs accepted by `keep`; records where
// every kept pair landed.
struct PairObject {
    NFoldCat object;
    std::vector<std::unordered_map<std::uint64_t, Index>> where;  // per cell: pair_key(x, y) -> index
    std::vector<std::vector<std::pair<Index, Index>>> parts;       // per cell, per element: (x, y)
};

PairObject pair_object(const NFoldCat& x, const NFoldCat& y, const std::function<bool(std::size_t, Index, Index)>& keep,
                       const std::function<std::vector<std::pair<Index, Index>>(std::size_t)>& candidates)
{
    const int n = x.n();
    if (y.n() != n)
        throw Error(ErrorKind::InvalidArgument, "objects have different dimensions");
    MssBuilder b(n);
    std::vector<std::vector<std::pair<Index, Index>>> parts(x.size());
    std::vector<std::unordered_map<std::uint64_t, Index>> local(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) {
        for (auto [i, j] : candidates(c)) {
            if (!keep(c, i, j))
                continue;
            local[c].emplace(pair_key(i, j), static_cast<Index>(parts[c].size()));
            parts[c].emplace_back(i, j);
            b.labels[c].push_back(pair_label(x.cell(c)[i], y.cell(c)[j]));
        }
    }
    for (std::size_t c = 0; c < x.size(); ++c) {
        for (int a = 0; a < n; ++a) {
            const std::size_t st = axis_stride(a);
            auto lift = [&](const IndexMap& fx, const IndexMap& fy, std::size_t to) {
                IndexMap out;
                out.reserve(parts[c].size());
                for (auto [i, j] : parts[c])
                    out.push_back(local[to].at(pair_key(fx[i], fy[j])));
                return out;
            };
            for (std::size_t i = 0; i < b.faces[c][a].size(); ++i)
                b.faces[c][a][i] = lift(x.face(c, a, static_cast<int>(i)), y.face(c, a, static_cast<int>(i)), c - st);
            for (std::size_t i = 0; i < b.degens[c][a].size(); ++i)
                b.degens[c][a][i] = lift(x.degen(c, a, static_cast<int>(i)), y.degen(c, a, static_cast<int>(i)), c + st);
        }
    }
    std::vector<IndexMap> perms;
    TruncMSSet carrier = b.build(&perms);
    PairObject out;
    out.object = detail::assume_segal(std::move(carrier));
    out.where.resize(x.size());
    out.parts.resize(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) {
        out.parts[c].resize(parts[c].size());
        for (std::size_t e = 0; e < parts[c].size(); ++e) {
            out.parts[c][perms[c][e]] = parts[c][e];
            out.where[c].emplace(pair_key(parts[c][e].first, parts[c][e].second), perms[c][e]);
        }
    }
    return out;
}

PairObject full_product(const NFoldCat& x, const NFoldCat& y)
{
    return pair_object(
        x, y, [](std::size_t, Index, Index) { return true; },
        [&](std::size_t c) {
            std::vector<std::pair<Index, Index>> all;
            all.reserve(x.cell(c).size() * y.cell(c).size());
            for (Index i = 0; i < x.cell(c).size(); ++i)
                for (Index j = 0; j < y.cell(c).size(); ++j)
                    all.emplace_back(i, j);
            return all;
        });
}

}  // namespace

NFoldCat product(const NFoldCat& x, const NFoldCat& y)
{
    return full_product(x, y).object;
}

NFoldMap product(const NFoldMap& f, const NFoldMap& g)
{
    PairObject dom = full_product(f.dom, g.dom);
    PairObject cod = full_product(f.cod, g.cod);
    NFoldMap h{dom.object, cod.object, {}};
    for (std::size_t c = 0; c < dom.parts.size(); ++c) {
        IndexMap m;
        for (auto [i, j] : dom.parts[c])
            m.push_back(cod.where[c].at(pair_key(f.maps[c][i], g.maps[c][j])));
        h.maps.push_back(std::move(m));
    }
    return h;
}

NFoldCat coproduct(const NFoldCat& x, const NFoldCat& y)
{
    const int n = x.n();
    if (y.n() != n)
        throw Error(ErrorKind::InvalidArgument, "objects have different dimensions");
    TruncMSSet z;
    z.n = n;
    z.faces.assign(x.size(), std::vector<std::vector<IndexMap>>(n));
    z.degens.assign(x.size(), std::vector<std::vector<IndexMap>>(n));
    for (std::size_t c = 0; c < x.size(); ++c) {
        std::vector<std::string> labels;
        for (const auto& e : x.cell(c))
            labels.push_back("L." + e);
        for (const auto& e : y.cell(c))
            labels.push_back("R." + e);
        z.cells.push_back(FinSet::from(std::move(labels)));
    }
    for (std::size_t c = 0; c < x.size(); ++c)
        for (int a = 0; a < n; ++a) {
            const std::size_t st = axis_stride(a);
            auto join = [&](const IndexMap& mx, const IndexMap& my, std::size_t to) {
                IndexMap out(mx.begin(), mx.end());
                const auto offset = static_cast<Index>(x.cell(to).size());
                for (Index v : my)
                    out.push_back(offset + v);
                return out;
            };
            for (std::size_t i = 0; i < x.carrier().faces[c][a].size(); ++i)
                z.faces[c][a].push_back(join(x.face(c, a, static_cast<int>(i)), y.face(c, a, static_cast<int>(i)), c - st));
            for (std::size_t i = 0; i < x.carrier().degens[c][a].size(); ++i)
                z.degens[c][a].push_back(
                    join(x.degen(c, a, static_cast<int>(i)), y.degen(c, a, static_cast<int>(i)), c + st));
        }
    return detail::assume_segal(std::move(z));
}

NFoldMap coproduct(const NFoldMap& f, const NFoldMap& g)
{
    NFoldMap h{coproduct(f.dom, g.dom), coproduct(f.cod, g.cod), {}};
    for (std::size_t c = 0; c < f.maps.size(); ++c) {
        IndexMap m(f.maps[c].begin(), f.maps[c].end());
        const auto offset = static_cast<Index>(f.cod.cell(c).size());
        for (Index v : g.maps[c])
            m.push_back(offset + v);
        h.maps.push_back(std::move(m));
    }
    return h;
}

Pullback pullback_over_discrete(const NFoldMap& f, const NFoldMap& g)
{
    if (!is_discrete(f.cod))
        throw Error(ErrorKind::NotDiscreteBase, "pullback base is not discrete");
    if (!(f.cod == g.cod))
        throw Error(ErrorKind::InvalidMap, "maps have different codomains");
    PairObject p = pair_object(
        f.dom, g.dom, [](std::size_t, Index, Index) { return true; },
        [&](std::size_t c) {
            std::vector<std::vector<Index>> by_value(f.cod.cell(c).size());
            for (Index j = 0; j < g.dom.cell(c).size(); ++j)
                by_value[g.maps[c][j]].push_back(j);
            std::vector<std::pair<Index, Index>> out;
            for (Index i = 0; i < f.dom.cell(c).size(); ++i)
                for (Index j : by_value[f.maps[c][i]])
                    out.emplace_back(i, j);
            return out;
        });
    Pullback pb{p.object, {p.object, f.dom, {}}, {p.object, g.dom, {}}};
    for (std::size_t c = 0; c < p.parts.size(); ++c) {
        IndexMap m1, m2;
        for (auto [i, j] : p.parts[c]) {
            m1.push_back(i);
            m2.push_back(j);
        }
        pb.first.maps.push_back(std::move(m1));
        pb.second.maps.push_back(std::move(m2));
    }
    return pb;
}

NFoldMap to_point(const NFoldCat& x)
{
    NFoldMap f{x, discrete_nfold(FinSet::from({"*"}), x.n()), {}};
    for (std::size_t c = 0; c < x.size(); ++c)
        f.maps.emplace_back(x.cell(c).size(), 0);
    return f;
}

NFoldCat sub_nfold(const NFoldCat& x, const std::function<bool(std::size_t, Index)>& keep)
{
    const int n = x.n();
    std::vector<IndexMap> kept(x.size());
    std::vector<std::vector<Index>> renum(x.size());
    TruncMSSet y;
    y.n = n;
    for (std::size_t c = 0; c < x.size(); ++c) {
        renum[c].assign(x.cell(c).size(), static_cast<Index>(-1));
        std::vector<std::string> labels;
        for (Index e = 0; e < x.cell(c).size(); ++e)
            if (keep(c, e)) {
                renum[c][e] = static_cast<Index>(kept[c].size());
                kept[c].push_back(e);
                labels.push_back(x.cell(c)[e]);
            }
        y.cells.push_back(FinSet::from(std::move(labels)));
    }
    y.faces.assign(x.size(), std::vector<std::vector<IndexMap>>(n));
    y.degens.assign(x.size(), std::vector<std::vector<IndexMap>>(n));
    for (std::size_t c = 0; c < x.size(); ++c)
        for (int a = 0; a < n; ++a) {
            const std::size_t st = axis_stride(a);
            auto restrict_map = [&](const IndexMap& m, std::size_t to) {
                IndexMap out;
                for (Index e : kept[c]) {
                    Index v = renum[to][m[e]];
                    if (v == static_cast<Index>(-1))
                        throw Error(ErrorKind::InvalidArgument, "sub-object is not closed under structure maps",
                                    where(a, c, n));
                    out.push_back(v);
                }
                return out;
            };
            for (const auto& m : x.carrier().faces[c][a])
                y.faces[c][a].push_back(restrict_map(m, c - st));
            for (const auto& m : x.carrier().degens[c][a])
                y.degens[c][a].push_back(restrict_map(m, c + st));
        }
    return promote(std::move(y));
}

NFoldMap inclusion_map(const NFoldCat& sub, const NFoldCat& x)
{
    NFoldMap f{sub, x, {}};
    for (std::size_t c = 0; c < sub.size(); ++c) {
        IndexMap m;
        for (const auto& e : sub.cell(c))
            m.push_back(x.cell(c).at(e));
        f.maps.push_back(std::move(m));
    }
    return f;
}

LevelwiseQuotient apply_levelwise_quotient(const NFoldCat& x, const std::function<Quotient(const FinCat&)>& q)
{
    const int n = x.n();
    if (n < 1)
        throw Error(ErrorKind::InvalidArgument, "levelwise quotient needs n >= 1");
    const int m = n - 1;
    const std::size_t cells = cell_count(m);
    LevelwiseQuotient out;
    TruncMSSet& y = out.carrier;
    y.n = m;
    y.cells.resize(cells);
    out.classes.resize(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        Quotient qc = q(category_at(x, cell_index(c, m)));
        y.cells[c] = std::move(qc.classes);
        out.classes[c] = std::move(qc.cls);
    }
    y.faces.assign(cells, std::vector<std::vector<IndexMap>>(m));
    y.degens.assign(cells, std::vector<std::vector<IndexMap>>(m));
    for (std::size_t c = 0; c < cells; ++c) {
        // Objects of category_at(x, s) live in cell s with last entry 0,
        // which has the same id as s.
        for (int a = 0; a < m; ++a) {
            const std::size_t st = axis_stride(a);
            auto induce = [&](const IndexMap& obj_map, std::size_t to, const std::string& name) {
                IndexMap out_map(y.cells[c].size(), static_cast<Index>(-1));
                for (Index o = 0; o < obj_map.size(); ++o) {
                    Index from = out.classes[c][o];
                    Index image = out.classes[to][obj_map[o]];
                    if (out_map[from] == static_cast<Index>(-1))
                        out_map[from] = image;
                    else if (out_map[from] != image)
                        throw Error(ErrorKind::FunctorialityViolation,
                                    "quotient does not respect " + name + " on class '" + y.cells[c][from] + "'",
                                    where(a, c, m) + " map=" + name);
                }
                return out_map;
            };
            for (std::size_t i = 0; i < x.carrier().faces[c][a].size(); ++i)
                y.faces[c][a].push_back(induce(x.face(c, a, static_cast<int>(i)), c - st, "d" + std::to_string(i)));
            for (std::size_t i = 0; i < x.carrier().degens[c][a].size(); ++i)
                y.degens[c][a].push_back(induce(x.degen(c, a, static_cast<int>(i)), c + st, "s" + std::to_string(i)));
        }
    }
    try {
        check_mss(y);
    } catch (const Error& e) {
        throw Error(ErrorKind::FunctorialityViolation, std::string("levelwise quotient is not a carrier: ") + e.what(),
                    e.location());
    }
    return out;
}

Index source_vertex(const NFoldCat& x, std::size_t id, int axis, Index e)
{
    const std::size_t st = axis_stride(axis);
    switch (level_of(id, axis)) {
    case 0: return e;
    case 1: return x.face(id, axis, 1)[e];
    default: return x.face(id - st, axis, 1)[x.face(id, axis, 2)[e]];
    }
}

}  // namespace hdcat
