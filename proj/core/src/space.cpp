#include "hdcat/space.hpp"

#include <map>

#include "hdcat/error.hpp"

namespace hdcat {

namespace {

void expect_equal(const IndexMap& lhs, const IndexMap& rhs, const std::string& relation, int k)
{
    if (lhs != rhs)
        throw Error(ErrorKind::IdentityViolation, "simplicial identity " + relation + " fails at level " + std::to_string(k),
                    "relation=" + relation + " level=" + std::to_string(k));
}

}  // namespace

void TruncSSet::check() const
{
    if (static_cast<int>(sets.size()) != m + 1 || static_cast<int>(faces.size()) != m + 1 ||
        static_cast<int>(degens.size()) != m + 1)
        throw Error(ErrorKind::MissingCell, "simplicial set has the wrong number of levels");
    auto name = [](char op1, int i, char op2, int j) {
        return std::string(1, op1) + std::to_string(i) + std::string(1, op2) + std::to_string(j);
    };
    for (int k = 2; k <= m; ++k)
        for (int j = 1; j <= k; ++j)
            for (int i = 0; i < j; ++i)
                expect_equal(compose_maps(faces[k - 1][i], faces[k][j]), compose_maps(faces[k - 1][j - 1], faces[k][i]),
                             name('d', i, 'd', j), k);
    for (int k = 0; k < m; ++k) {
        const IndexMap id = identity_map(sets[k].size());
        for (int j = 0; j <= k; ++j) {
            for (int i = 0; i <= k + 1; ++i) {
                IndexMap lhs = compose_maps(faces[k + 1][i], degens[k][j]);
                if (i == j || i == j + 1)
                    expect_equal(lhs, id, name('d', i, 's', j), k);
                else if (i < j)
                    expect_equal(lhs, compose_maps(degens[k - 1][j - 1], faces[k][i]), name('d', i, 's', j), k);
                else
                    expect_equal(lhs, compose_maps(degens[k - 1][j], faces[k][i - 1]), name('d', i, 's', j), k);
            }
        }
        if (k + 2 <= m)
            for (int j = 0; j <= k; ++j)
                for (int i = 0; i <= j; ++i)
                    expect_equal(compose_maps(degens[k + 1][i], degens[k][j]),
                                 compose_maps(degens[k + 1][j + 1], degens[k][i]), name('s', i, 's', j), k);
    }
}

TruncSSet diag_classifying(const NFoldCat& x, int m, std::size_t max_elements)
{
    if (m < 0)
        throw Error(ErrorKind::InvalidArgument, "truncation level must be non-negative");
    const int n = x.n();
    TruncSSet y;
    y.m = m;
    y.sets.resize(m + 1);
    y.faces.resize(m + 1);
    y.degens.resize(m + 1);
    std::vector<GridCell> grids(m + 1);
    auto diagonal = [n](int k) { return MultiIndex(n, k); };
    auto stored = [&](int k) { return k <= kStoredLevel || n == 0; };
    for (int k = 0; k <= m; ++k) {
        if (stored(k)) {
            y.sets[k] = n == 0 ? x.cell(0) : x.cell(diagonal(k));
        } else {
            grids[k] = evaluate_grid(x, diagonal(k), GridMode::Evaluate, max_elements);
            y.sets[k] = grids[k].labels;
        }
    }
    for (int k = 1; k <= m; ++k)
        for (int i = 0; i <= k; ++i) {
            IndexMap map;
            if (stored(k)) {
                map = identity_map(y.sets[k].size());
                std::size_t cell = n == 0 ? 0 : cell_id(diagonal(k));
                for (int a = 0; a < n; ++a) {
                    map = compose_maps(x.face(cell, a, i), map);
                    cell -= axis_stride(a);
                }
            } else {
                for (Index e = 0; e < y.sets[k].size(); ++e) {
                    auto span = grids[k].grid_at_label(e);
                    std::vector<Index> grid(span.begin(), span.end());
                    MultiIndex kv = diagonal(k);
                    for (int a = 0; a < n; ++a) {
                        grid = grid_face(x, kv, grid, a, i);
                        --kv[a];
                    }
                    map.push_back(stored(k - 1) ? fold_to_stored(x, kv, grid) : grids[k - 1].find(grid).value());
                }
            }
            y.faces[k].push_back(std::move(map));
        }
    for (int k = 0; k < m; ++k)
        for (int i = 0; i <= k; ++i) {
            IndexMap map;
            if (stored(k + 1)) {
                map = identity_map(y.sets[k].size());
                std::size_t cell = n == 0 ? 0 : cell_id(diagonal(k));
                for (int a = 0; a < n; ++a) {
                    map = compose_maps(x.degen(cell, a, i), map);
                    cell += axis_stride(a);
                }
            } else {
                for (Index e = 0; e < y.sets[k].size(); ++e) {
                    std::vector<Index> grid;
                    if (stored(k)) {
                        grid = unfold_stored(x, diagonal(k), e);
                    } else {
                        auto span = grids[k].grid_at_label(e);
                        grid.assign(span.begin(), span.end());
                    }
                    MultiIndex kv = diagonal(k);
                    for (int a = 0; a < n; ++a) {
                        grid = grid_degen(x, kv, grid, a, i);
                        ++kv[a];
                    }
                    map.push_back(grids[k + 1].find(grid).value());
                }
            }
            y.degens[k].push_back(std::move(map));
        }
    return y;
}

Quotient pi0(const TruncSSet& y)
{
    if (y.m < 1)
        throw Error(ErrorKind::InvalidArgument, "components need level 1");
    DisjointSets ds(y.sets[0].size());
    for (Index e = 0; e < y.sets[1].size(); ++e)
        ds.unite(y.faces[1][0][e], y.faces[1][1][e]);
    return quotient_from_roots(y.sets[0], ds.roots());
}

Homology1 h1(const TruncSSet& y)
{
    if (y.m < 2)
        throw Error(ErrorKind::InvalidArgument, "first homology needs level 2");
    const std::size_t v = y.sets[0].size();
    const std::size_t e = y.sets[1].size();
    const std::size_t components = pi0(y).classes.size();
    const std::size_t rank1 = v - components;
    SparseIntMatrix d2;
    d2.rows = e;
    d2.cols = y.sets[2].size();
    for (Index z = 0; z < d2.cols; ++z)
        for (int i = 0; i <= 2; ++i)
            d2.entries.push_back({y.faces[2][i][z], z, i % 2 == 0 ? 1 : -1});
    SmithForm snf = smith_normal_form(d2);
    Homology1 h;
    h.free_rank = e - rank1 - snf.rank();
    for (const auto& f : snf.factors)
        if (f > 1)
            h.torsion.push_back(f);
    return h;
}

ZeroTypeReport verify_zero_type(const NFoldCat& x, const HdCert& cert, std::size_t max_elements)
{
    TruncSSet y = diag_classifying(x, 2, max_elements);
    Quotient q = pi0(y);
    DiscretizationData d = discretize(x, cert);
    ZeroTypeReport r;
    r.pi0_size = q.classes.size();
    r.discretization_size = d.underlying.size();
    // Y_0 is the bottom cell of x.
    std::map<Index, Index> induced;
    bool consistent = true;
    for (Index e = 0; e < y.sets[0].size(); ++e) {
        auto [it, fresh] = induced.emplace(q.cls[e], d.gamma.maps[0][e]);
        if (!fresh && it->second != d.gamma.maps[0][e])
            consistent = false;
    }
    IndexMap m(q.classes.size());
    for (auto [cls, image] : induced)
        m[cls] = image;
    r.pi0_bijection = consistent && induced.size() == q.classes.size() && is_bijective(m, d.underlying.size());
    r.h1 = h1(y);
    return r;
}

}  // namespace hdcat
