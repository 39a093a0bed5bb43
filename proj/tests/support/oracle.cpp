#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>

#include <boost/integer/common_factor.hpp>

namespace hdtest {

using namespace hdcat;

std::vector<std::string> chain_labels(const FinCat& c, int k)
{
    const auto& mor = c.morphisms();
    std::vector<std::string> out;
    if (k == 0) {
        out = c.objects().labels();
    } else if (k == 1) {
        out = mor.labels();
    } else {
        std::vector<Index> chain;
        std::function<void()> grow = [&] {
            if (static_cast<int>(chain.size()) == k) {
                std::string label = "(";
                for (auto it = chain.rbegin(); it != chain.rend(); ++it)
                    label += (it == chain.rbegin() ? "" : ",") + mor[*it];
                out.push_back(label + ")");
                return;
            }
            for (Index m = 0; m < mor.size(); ++m)
                if (chain.empty() || c.src(m) == c.tgt(chain.back())) {
                    chain.push_back(m);
                    grow();
                    chain.pop_back();
                }
        };
        grow();
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t fiber_product_count(const FinCat& c, int k)
{
    const std::size_t m = c.morphisms().size();
    if (k == 0)
        return c.objects().size();
    std::size_t count = 0;
    std::vector<Index> tuple(static_cast<std::size_t>(k), 0);
    if (m == 0)
        return 0;
    for (;;) {
        bool ok = true;
        for (int i = 0; i + 1 < k && ok; ++i)
            ok = c.tgt(tuple[i]) == c.src(tuple[i + 1]);
        count += ok;
        int pos = 0;
        while (pos < k && ++tuple[pos] == m)
            tuple[pos++] = 0;
        if (pos == k)
            return count;
    }
}

std::size_t kernel_pair_count(const IndexMap& f)
{
    std::size_t count = 0;
    for (Index a : f)
        for (Index b : f)
            count += a == b;
    return count;
}

std::size_t tower_grid_count(const SurjTower& t, const std::vector<int>& k)
{
    const int n = static_cast<int>(k.size());
    // image[j][x]: S_0 element x pushed to S_j.
    std::vector<IndexMap> image(t.sets.size());
    image[0] = identity_map(t.sets[0].size());
    for (std::size_t j = 1; j < t.sets.size(); ++j)
        image[j] = compose_maps(t.maps[j - 1], image[j - 1]);
    std::vector<std::size_t> extent(n), stride(n);
    std::size_t positions = 1;
    for (int a = n - 1; a >= 0; --a) {
        extent[a] = static_cast<std::size_t>(k[a]) + 1;
        stride[a] = positions;
        positions *= extent[a];
    }
    std::vector<Index> grid(positions);
    std::function<std::size_t(std::size_t)> fill = [&](std::size_t p) -> std::size_t {
        if (p == positions)
            return 1;
        std::size_t total = 0;
        for (Index x = 0; x < t.sets[0].size(); ++x) {
            bool ok = true;
            for (int a = 0; a < n && ok; ++a)
                if ((p / stride[a]) % extent[a] > 0) {
                    const auto& level = image[n - a];
                    ok = level[grid[p - stride[a]]] == level[x];
                }
            if (ok) {
                grid[p] = x;
                total += fill(p + 1);
            }
        }
        return total;
    };
    return fill(0);
}

namespace {

BigInt determinant(std::vector<std::vector<BigInt>> m)
{
    // Fraction-free elimination (Bareiss).
    const std::size_t n = m.size();
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m[pivot][k] == 0)
            ++pivot;
        if (pivot == n)
            return 0;
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit)
{
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    if (k > n)
        return;
    for (;;) {
        visit(pick);
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j)
            pick[j] = pick[j - 1] + 1;
    }
}

}  // namespace

std::vector<BigInt> determinantal_factors(const std::vector<std::vector<BigInt>>& a)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<BigInt> out;
    BigInt previous = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        BigInt g = 0;
        subsets(rows, k, [&](const std::vector<std::size_t>& r) {
            subsets(cols, k, [&](const std::vector<std::size_t>& c) {
                std::vector<std::vector<BigInt>> minor(k, std::vector<BigInt>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        minor[i][j] = a[r[i]][c[j]];
                g = boost::integer::gcd(g, BigInt(abs(determinant(std::move(minor)))));
            });
        });
        if (g == 0)
            break;
        out.push_back(g / previous);
        previous = g;
    }
    return out;
}

bool quotient_preserves_fiber_product(const CatFunctor& f, const CatFunctor& g, Quotient (*quot)(const FinCat&))
{
    FinCat pb = fiber_product_over_discrete(f, g);
    Quotient qp = quot(pb);
    Quotient qc = quot(f.dom);
    Quotient qd = quot(g.dom);
    // Pairs of classes over the same object of E.
    std::vector<std::pair<Index, Index>> expected;
    for (Index a = 0; a < qc.classes.size(); ++a)
        for (Index b = 0; b < qd.classes.size(); ++b) {
            Index ra = f.dom.objects().at(qc.classes[a]);
            Index rb = g.dom.objects().at(qd.classes[b]);
            if (f.omap[ra] == g.omap[rb])
                expected.emplace_back(a, b);
        }
    std::vector<std::optional<std::pair<Index, Index>>> image(qp.classes.size());
    for (Index o = 0; o < pb.objects().size(); ++o) {
        const std::string& label = pb.objects()[o];
        // Labels are "(c,d)"; recover c and d through the factors.
        std::optional<std::pair<Index, Index>> found;
        for (Index c = 0; c < f.dom.objects().size() && !found; ++c)
            for (Index d = 0; d < g.dom.objects().size() && !found; ++d)
                if (pair_label(f.dom.objects()[c], g.dom.objects()[d]) == label)
                    found = std::pair{qc.cls[c], qd.cls[d]};
        if (!found)
            return false;
        auto& slot = image[qp.cls[o]];
        if (slot && *slot != *found)
            return false;
        slot = found;
    }
    std::vector<std::pair<Index, Index>> got;
    for (auto& s : image)
        got.push_back(s.value());
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    return got == expected && std::adjacent_find(got.begin(), got.end()) == got.end();
}

}  // namespace hdtest
