#include "hdcat/multinerve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "hdcat/error.hpp"

namespace hdcat {

namespace {

std::string grid_key(std::span<const Index> grid)
{
    return std::string(reinterpret_cast<const char*>(grid.data()), grid.size() * sizeof(Index));
}

void fill_strides(GridLayout& l)
{
    const int n = static_cast<int>(l.k.size());
    l.stride.assign(n, 1);
    l.positions = 1;
    for (int a = n - 1; a >= 0; --a) {
        l.stride[a] = l.positions;
        l.positions *= static_cast<std::size_t>(l.extent[a]);
    }
}

MultiIndex coords_of(const GridLayout& l, std::size_t pos)
{
    MultiIndex c(l.k.size());
    for (std::size_t a = 0; a < l.k.size(); ++a)
        c[a] = static_cast<int>((pos / l.stride[a]) % static_cast<std::size_t>(l.extent[a]));
    return c;
}

std::size_t pos_of(const GridLayout& l, std::span<const int> c)
{
    std::size_t p = 0;
    for (std::size_t a = 0; a < c.size(); ++a)
        p += static_cast<std::size_t>(c[a]) * l.stride[a];
    return p;
}

void check_axis(const NFoldCat& x, std::span<const int> k, int axis)
{
    if (static_cast<int>(k.size()) != x.n() || axis < 0 || axis >= x.n())
        throw Error(ErrorKind::InvalidArgument, "multi-index or axis does not match the dimension");
}

}  // namespace

GridLayout GridLayout::make(std::span<const int> k, GridMode mode)
{
    GridLayout l;
    l.k.assign(k.begin(), k.end());
    const int n = static_cast<int>(k.size());
    l.base.resize(n);
    l.extent.resize(n);
    l.expanded.resize(n);
    for (int a = 0; a < n; ++a) {
        if (k[a] < 0)
            throw Error(ErrorKind::InvalidArgument, "negative multi-index entry");
        bool expand = mode == GridMode::Evaluate ? k[a] > kStoredLevel : k[a] >= 1;
        l.expanded[a] = expand;
        l.base[a] = expand ? 1 : k[a];
        l.extent[a] = expand ? k[a] : 1;
    }
    fill_strides(l);
    return l;
}

std::optional<Index> GridCell::find(std::span<const Index> grid) const
{
    auto it = lookup_.find(grid_key(grid));
    if (it == lookup_.end())
        return std::nullopt;
    return it->second;
}

void GridCell::index()
{
    lookup_.clear();
    lookup_.reserve(count);
    for (std::size_t g = 0; g < count; ++g)
        lookup_.emplace(grid_key(grid(g)), label_of[g]);
}

GridCell evaluate_grid(const NFoldCat& x, std::span<const int> k, GridMode mode, std::size_t max_elements)
{
    const int n = x.n();
    if (static_cast<int>(k.size()) != n)
        throw Error(ErrorKind::InvalidArgument, "multi-index has the wrong length");
    GridCell out;
    out.layout = GridLayout::make(k, mode);
    const GridLayout& l = out.layout;
    const std::size_t base_id = cell_id(l.base);
    const FinSet& base = x.cell(base_id);
    const std::size_t P = l.positions;

    // Per expanded axis: d0, and elements grouped by d1.
    std::vector<const IndexMap*> d0(n, nullptr);
    std::vector<std::vector<std::vector<Index>>> by_d1(n);
    for (int a = 0; a < n; ++a) {
        if (l.extent[a] < 2)
            continue;
        d0[a] = &x.face(base_id, a, 0);
        const IndexMap& d1 = x.face(base_id, a, 1);
        by_d1[a].assign(x.cell(base_id - axis_stride(a)).size(), {});
        for (Index e = 0; e < d1.size(); ++e)
            by_d1[a][d1[e]].push_back(e);
    }
    std::vector<std::vector<int>> constraints(P);
    for (std::size_t p = 0; p < P; ++p) {
        MultiIndex c = coords_of(l, p);
        for (int a = 0; a < n; ++a)
            if (c[a] > 0)
                constraints[p].push_back(a);
    }
    std::vector<Index> all(base.size());
    for (Index e = 0; e < all.size(); ++e)
        all[e] = e;

    std::vector<Index> cur(P);
    auto fill = [&](auto&& self, std::size_t p) -> void {
        if (p == P) {
            if (++out.count > max_elements)
                throw Error(ErrorKind::SizeExceeded, "multinerve cell " + index_key(k) + " has more than " +
                                                         std::to_string(max_elements) + " elements");
            out.data.insert(out.data.end(), cur.begin(), cur.end());
            return;
        }
        const auto& cons = constraints[p];
        if (cons.empty()) {
            for (Index e : all) {
                cur[p] = e;
                self(self, p + 1);
            }
            return;
        }
        const int a0 = cons[0];
        const auto& cand = by_d1[a0][(*d0[a0])[cur[p - l.stride[a0]]]];
        for (Index e : cand) {
            bool ok = true;
            for (std::size_t j = 1; j < cons.size() && ok; ++j) {
                const int a = cons[j];
                ok = x.face(base_id, a, 1)[e] == (*d0[a])[cur[p - l.stride[a]]];
            }
            if (!ok)
                continue;
            cur[p] = e;
            self(self, p + 1);
        }
    };
    fill(fill, 0);

    std::vector<int> nest;
    for (int a = 0; a < n; ++a)
        if (l.expanded[a])
            nest.push_back(a);
    std::vector<std::string> labels;
    labels.reserve(out.count);
    for (std::size_t g = 0; g < out.count; ++g) {
        auto grid = out.grid(g);
        auto build = [&](auto&& self, std::size_t j, std::size_t offset) -> std::string {
            if (j == nest.size())
                return base[grid[offset]];
            const int a = nest[j];
            std::vector<std::string> parts;
            parts.reserve(l.extent[a]);
            for (int t = l.extent[a] - 1; t >= 0; --t)
                parts.push_back(self(self, j + 1, offset + static_cast<std::size_t>(t) * l.stride[a]));
            return tuple_label(parts);
        };
        labels.push_back(build(build, 0, 0));
    }
    auto [set, perm] = FinSet::sorted(std::move(labels));
    out.labels = std::move(set);
    out.label_of = std::move(perm);
    out.grid_of.assign(out.count, 0);
    for (std::size_t g = 0; g < out.count; ++g)
        out.grid_of[out.label_of[g]] = static_cast<Index>(g);
    out.index();
    return out;
}

FinSet evaluate_multinerve(const NFoldCat& x, std::span<const int> k, std::size_t max_elements)
{
    if (static_cast<int>(k.size()) != x.n())
        throw Error(ErrorKind::InvalidArgument, "multi-index has the wrong length");
    if (std::all_of(k.begin(), k.end(), [](int v) { return v >= 0 && v <= kStoredLevel; }))
        return x.cell(k);
    return evaluate_grid(x, k, GridMode::Evaluate, max_elements).labels;
}

std::vector<Index> unfold_stored(const NFoldCat& x, std::span<const int> k, Index element)
{
    const int n = x.n();
    GridLayout l = GridLayout::make(k, GridMode::Full);
    std::vector<Index> grid(l.positions);
    for (std::size_t p = 0; p < l.positions; ++p) {
        MultiIndex c = coords_of(l, p);
        std::size_t cell = cell_id(k);
        Index cur = element;
        for (int a = 0; a < n; ++a) {
            if (k[a] != 2)
                continue;
            cur = x.face(cell, a, c[a] == 0 ? 2 : 0)[cur];
            cell -= axis_stride(a);
        }
        grid[p] = cur;
    }
    return grid;
}

Index fold_to_stored(const NFoldCat& x, std::span<const int> k, std::span<const Index> grid)
{
    const int n = x.n();
    GridLayout l = GridLayout::make(k, GridMode::Full);
    std::vector<Index> cur(grid.begin(), grid.end());
    MultiIndex level = l.base;
    for (int a = 0; a < n; ++a) {
        if (k[a] != 2)
            continue;
        GridLayout next = l;
        next.extent[a] = 1;
        fill_strides(next);
        level[a] = 2;
        const std::size_t lift_cell = cell_id(level);
        std::vector<Index> folded(next.positions);
        for (std::size_t q = 0; q < next.positions; ++q) {
            MultiIndex c = coords_of(next, q);
            c[a] = 0;
            Index first = cur[pos_of(l, c)];
            c[a] = 1;
            Index second = cur[pos_of(l, c)];
            auto z = x.segal_lift(a, lift_cell, first, second);
            if (!z)
                throw Error(ErrorKind::InvalidArgument, "grid entries are not composable along axis " + std::to_string(a));
            folded[q] = *z;
        }
        cur = std::move(folded);
        l = std::move(next);
    }
    return cur.at(0);
}

std::vector<Index> grid_face(const NFoldCat& x, std::span<const int> k, std::span<const Index> grid, int axis, int i)
{
    check_axis(x, k, axis);
    const int ka = k[axis];
    if (ka < 1 || i < 0 || i > ka)
        throw Error(ErrorKind::InvalidArgument, "face index out of range");
    GridLayout l = GridLayout::make(k, GridMode::Full);
    MultiIndex k2(k.begin(), k.end());
    --k2[axis];
    GridLayout l2 = GridLayout::make(k2, GridMode::Full);
    const std::size_t base_id = cell_id(l.base);
    std::vector<Index> out(l2.positions);
    if (ka == 1) {
        const IndexMap& d = x.face(base_id, axis, i);
        for (std::size_t p = 0; p < l.positions; ++p)
            out[p] = d[grid[p]];
        return out;
    }
    for (std::size_t q = 0; q < l2.positions; ++q) {
        MultiIndex c = coords_of(l2, q);
        const int t = c[axis];
        if (i == 0) {
            c[axis] = t + 1;
            out[q] = grid[pos_of(l, c)];
        } else if (i == ka) {
            out[q] = grid[pos_of(l, c)];
        } else if (t < i - 1) {
            out[q] = grid[pos_of(l, c)];
        } else if (t > i - 1) {
            c[axis] = t + 1;
            out[q] = grid[pos_of(l, c)];
        } else {
            c[axis] = i - 1;
            Index f = grid[pos_of(l, c)];
            c[axis] = i;
            Index g = grid[pos_of(l, c)];
            auto gf = x.compose(axis, base_id, g, f);
            if (!gf)
                throw Error(ErrorKind::InvalidArgument, "grid entries are not composable");
            out[q] = *gf;
        }
    }
    return out;
}

std::vector<Index> grid_degen(const NFoldCat& x, std::span<const int> k, std::span<const Index> grid, int axis, int i)
{
    check_axis(x, k, axis);
    const int ka = k[axis];
    if (i < 0 || i > ka)
        throw Error(ErrorKind::InvalidArgument, "degeneracy index out of range");
    GridLayout l = GridLayout::make(k, GridMode::Full);
    MultiIndex k2(k.begin(), k.end());
    ++k2[axis];
    GridLayout l2 = GridLayout::make(k2, GridMode::Full);
    const std::size_t base_id = cell_id(l.base);
    std::vector<Index> out(l2.positions);
    if (ka == 0) {
        const IndexMap& s = x.degen(base_id, axis, 0);
        for (std::size_t p = 0; p < l.positions; ++p)
            out[p] = s[grid[p]];
        return out;
    }
    const std::size_t vertex_cell = base_id - axis_stride(axis);
    const IndexMap& s0 = x.degen(vertex_cell, axis, 0);
    for (std::size_t q = 0; q < l2.positions; ++q) {
        MultiIndex c = coords_of(l2, q);
        const int t = c[axis];
        if (t < i) {
            out[q] = grid[pos_of(l, c)];
        } else if (t > i) {
            c[axis] = t - 1;
            out[q] = grid[pos_of(l, c)];
        } else if (i < ka) {
            out[q] = s0[x.face(base_id, axis, 1)[grid[pos_of(l, c)]]];
        } else {
            c[axis] = ka - 1;
            out[q] = s0[x.face(base_id, axis, 0)[grid[pos_of(l, c)]]];
        }
    }
    return out;
}

NFoldCat slice_at_level(const NFoldCat& x, int axis, int level, std::size_t max_elements)
{
    const int n = x.n();
    if (axis < 0 || axis >= n || level < 0)
        throw Error(ErrorKind::InvalidArgument, "slice axis or level out of range");
    if (level <= kStoredLevel)
        return slice(x, axis, level);
    const int m = n - 1;
    const std::size_t cells = cell_count(m);
    std::vector<GridCell> grids;
    grids.reserve(cells);
    MssBuilder b(m);
    for (std::size_t t = 0; t < cells; ++t) {
        MultiIndex k = cell_index(insert_axis(t, axis, 0), n);
        k[axis] = level;
        grids.push_back(evaluate_grid(x, k, GridMode::Evaluate, max_elements));
        b.labels[t] = grids.back().labels.labels();
    }
    for (std::size_t t = 0; t < cells; ++t) {
        const GridCell& g = grids[t];
        const std::size_t base_id = cell_id(g.layout.base);
        for (int bb = 0; bb < m; ++bb) {
            const int ob = bb < axis ? bb : bb + 1;
            const std::size_t st = axis_stride(bb);
            auto lift = [&](const IndexMap& op, std::size_t to) {
                IndexMap out(g.count);
                std::vector<Index> image(g.layout.positions);
                for (Index e = 0; e < g.count; ++e) {
                    auto grid = g.grid_at_label(e);
                    for (std::size_t p = 0; p < image.size(); ++p)
                        image[p] = op[grid[p]];
                    out[e] = grids[to].find(image).value();
                }
                return out;
            };
            for (std::size_t i = 0; i < b.faces[t][bb].size(); ++i)
                b.faces[t][bb][i] = lift(x.face(base_id, ob, static_cast<int>(i)), t - st);
            for (std::size_t i = 0; i < b.degens[t][bb].size(); ++i)
                b.degens[t][bb][i] = lift(x.degen(base_id, ob, static_cast<int>(i)), t + st);
        }
    }
    return promote(b.build());
}

namespace {

// Chains are keyed by their edge indices read in base |edges|.
struct ChainKeys {
    std::uint64_t radix = 1;

    std::uint64_t operator()(std::span<const Index> edges) const
    {
        std::uint64_t key = 0;
        for (auto it = edges.rbegin(); it != edges.rend(); ++it)
            key = key * radix + *it;
        return key;
    }
};

struct Chains {
    NFoldCat object;
    std::vector<ChainKeys> keys;
    std::vector<std::unordered_map<std::uint64_t, Index>> lookup;

    Index at(std::size_t t, std::span<const Index> edges) const { return lookup[t].at(keys[t](edges)); }
};

Chains build_chains(const NFoldCat& x, int axis, int s, const NFoldMap& gamma0)
{
    const int n = x.n();
    if (axis < 0 || axis >= n || s < 1)
        throw Error(ErrorKind::InvalidArgument, "chain length or axis out of range");
    const int m = n - 1;
    if (gamma0.dom.n() != m || gamma0.maps.size() != cell_count(m))
        throw Error(ErrorKind::InvalidMap, "level-0 map has the wrong dimension");
    const std::size_t cells = cell_count(m);
    std::vector<std::vector<Index>> chains(cells);  // flattened, s per chain
    std::vector<std::unordered_map<std::uint64_t, Index>> local(cells);
    std::vector<ChainKeys> keys(cells);
    MssBuilder b(m);
    for (std::size_t t = 0; t < cells; ++t) {
        const std::size_t c1 = insert_axis(t, axis, 1);
        const IndexMap& tgt = x.face(c1, axis, 0);
        const IndexMap& src = x.face(c1, axis, 1);
        const IndexMap& gamma = gamma0.maps[t];
        const FinSet& edges = x.cell(c1);
        keys[t].radix = std::max<std::uint64_t>(edges.size(), 1);
        if (std::pow(static_cast<double>(keys[t].radix), s) >= 0x1p63)
            throw Error(ErrorKind::SizeExceeded, "too many chains to index");
        std::vector<std::vector<Index>> by_src(gamma0.cod.cell(t).size());
        for (Index e = 0; e < edges.size(); ++e)
            by_src[gamma[src[e]]].push_back(e);
        std::vector<Index> cur(s);
        std::vector<std::string> parts(s);
        auto extend = [&](auto&& self, int j) -> void {
            if (j == s) {
                for (int q = 0; q < s; ++q)
                    parts[s - 1 - q] = edges[cur[q]];
                local[t].emplace(keys[t](cur), static_cast<Index>(b.labels[t].size()));
                b.labels[t].push_back(tuple_label(parts));
                chains[t].insert(chains[t].end(), cur.begin(), cur.end());
                return;
            }
            if (j == 0) {
                for (Index e = 0; e < edges.size(); ++e) {
                    cur[0] = e;
                    self(self, 1);
                }
                return;
            }
            for (Index e : by_src[gamma[tgt[cur[j - 1]]]]) {
                cur[j] = e;
                self(self, j + 1);
            }
        };
        extend(extend, 0);
    }
    for (std::size_t t = 0; t < cells; ++t) {
        const std::size_t c1 = insert_axis(t, axis, 1);
        const std::size_t count = chains[t].size() / static_cast<std::size_t>(s);
        for (int bb = 0; bb < m; ++bb) {
            const int ob = bb < axis ? bb : bb + 1;
            const std::size_t st = axis_stride(bb);
            auto lift = [&](const IndexMap& op, std::size_t to) {
                IndexMap out(count);
                std::vector<Index> image(s);
                for (std::size_t e = 0; e < count; ++e) {
                    for (int q = 0; q < s; ++q)
                        image[q] = op[chains[t][e * s + q]];
                    auto it = local[to].find(keys[to](image));
                    if (it == local[to].end())
                        throw Error(ErrorKind::InvalidMap, "level-0 map does not commute with structure maps");
                    out[e] = it->second;
                }
                return out;
            };
            for (std::size_t i = 0; i < b.faces[t][bb].size(); ++i)
                b.faces[t][bb][i] = lift(x.face(c1, ob, static_cast<int>(i)), t - st);
            for (std::size_t i = 0; i < b.degens[t][bb].size(); ++i)
                b.degens[t][bb][i] = lift(x.degen(c1, ob, static_cast<int>(i)), t + st);
        }
    }
    std::vector<IndexMap> perms;
    TruncMSSet carrier = b.build(&perms);
    Chains out{promote(std::move(carrier)), std::move(keys), std::move(local)};
    for (std::size_t t = 0; t < cells; ++t)
        for (auto& [key, idx] : out.lookup[t])
            idx = perms[t][idx];
    return out;
}

}  // namespace

NFoldCat chain_object(const NFoldCat& x, int axis, int s, const NFoldMap& gamma0)
{
    return build_chains(x, axis, s, gamma0).object;
}

NFoldMap induced_segal_map(const NFoldCat& x, int axis, int s, const NFoldMap& gamma0)
{
    const int n = x.n();
    if (s < 1)
        throw Error(ErrorKind::InvalidArgument, "induced Segal map needs s >= 1");
    Chains chains = build_chains(x, axis, s, gamma0);
    NFoldMap f{slice_at_level(x, axis, s), chains.object, {}};
    const std::size_t cells = cell_count(n - 1);
    std::vector<Index> edges(s);
    for (std::size_t t = 0; t < cells; ++t) {
        IndexMap m(f.dom.cell(t).size());
        if (s <= kStoredLevel) {
            const std::size_t cs = insert_axis(t, axis, s);
            for (Index z = 0; z < m.size(); ++z) {
                if (s == 1) {
                    edges[0] = z;
                } else {
                    edges[0] = x.face(cs, axis, 2)[z];
                    edges[1] = x.face(cs, axis, 0)[z];
                }
                m[z] = chains.at(t, edges);
            }
        } else {
            MultiIndex k = cell_index(insert_axis(t, axis, 0), n);
            k[axis] = s;
            GridCell g = evaluate_grid(x, k, GridMode::Evaluate);
            const std::size_t step = g.layout.stride[axis];
            for (Index z = 0; z < m.size(); ++z) {
                auto grid = g.grid_at_label(z);
                for (int q = 0; q < s; ++q)
                    edges[q] = grid[static_cast<std::size_t>(q) * step];
                m[z] = chains.at(t, edges);
            }
        }
        f.maps.push_back(std::move(m));
    }
    f.check();
    return f;
}

}  // namespace hdcat
