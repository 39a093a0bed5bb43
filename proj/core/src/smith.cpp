#include "hdcat/smith.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace hdcat {

SmithForm smith_normal_form(std::vector<std::vector<BigInt>> a)
{
    SmithForm out;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i != j)
            for (auto& r : a)
                std::swap(r[i], r[j]);
    };
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // Least nonzero absolute value in the trailing block.
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr == rows)
            break;
        std::swap(a[t], a[pr]);
        swap_cols(t, pc);
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0)
                    continue;
                BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j)
                    a[i][j] -= q * a[t][j];
                if (a[i][t] != 0)
                    dirty = true;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0)
                    continue;
                BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i)
                    a[i][j] -= q * a[i][t];
                if (a[t][j] != 0)
                    dirty = true;
            }
            if (dirty) {
                // Move the least remainder in row or column t to the pivot.
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (a[i][t] != 0 && abs(a[i][t]) < abs(a[bi][bj])) {
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[t][j] != 0 && abs(a[t][j]) < abs(a[bi][bj])) {
                        bi = t;
                        bj = j;
                    }
                std::swap(a[t], a[bi]);
                swap_cols(t, bj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the block.
            bool fixed = true;
            for (std::size_t i = t + 1; i < rows && fixed; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < cols; ++k)
                            a[t][k] += a[i][k];
                        fixed = false;
                        break;
                    }
            if (fixed)
                break;
        }
        out.factors.push_back(abs(a[t][t]));
    }
    return out;
}

SmithForm smith_normal_form(const SparseIntMatrix& m)
{
    std::vector<std::map<std::size_t, BigInt>> rows(m.rows);
    for (const auto& e : m.entries) {
        BigInt& v = rows[e.row][e.col];
        v += e.value;
        if (v == 0)
            rows[e.row].erase(e.col);
    }
    std::vector<std::set<std::size_t>> cols(m.cols);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (const auto& [c, v] : rows[r])
            cols[c].insert(r);

    std::size_t units = 0;
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t c = 0; c < m.cols; ++c) {
            if (cols[c].empty())
                continue;
            std::size_t best = m.rows;
            for (std::size_t r : cols[c]) {
                const BigInt& v = rows[r].at(c);
                if ((v == 1 || v == -1) && (best == m.rows || rows[r].size() < rows[best].size()))
                    best = r;
            }
            if (best == m.rows)
                continue;
            const BigInt u = rows[best].at(c);
            const auto pivot_row = rows[best];
            std::vector<std::size_t> others(cols[c].begin(), cols[c].end());
            for (std::size_t r : others) {
                if (r == best)
                    continue;
                BigInt factor = rows[r].at(c) * u;
                for (const auto& [j, v] : pivot_row) {
                    BigInt& w = rows[r][j];
                    w -= factor * v;
                    if (w == 0) {
                        rows[r].erase(j);
                        cols[j].erase(r);
                    } else {
                        cols[j].insert(r);
                    }
                }
            }
            for (const auto& [j, v] : pivot_row)
                cols[j].erase(best);
            rows[best].clear();
            ++units;
            progress = true;
        }
    }

    std::vector<std::size_t> live_rows, live_cols;
    for (std::size_t r = 0; r < m.rows; ++r)
        if (!rows[r].empty())
            live_rows.push_back(r);
    for (std::size_t c = 0; c < m.cols; ++c)
        if (!cols[c].empty())
            live_cols.push_back(c);
    std::map<std::size_t, std::size_t> col_pos;
    for (std::size_t j = 0; j < live_cols.size(); ++j)
        col_pos[live_cols[j]] = j;
    std::vector<std::vector<BigInt>> dense(live_rows.size(), std::vector<BigInt>(live_cols.size()));
    for (std::size_t i = 0; i < live_rows.size(); ++i)
        for (const auto& [c, v] : rows[live_rows[i]])
            dense[i][col_pos.at(c)] = v;
    SmithForm rest = smith_normal_form(std::move(dense));
    SmithForm out;
    out.factors.assign(units, BigInt(1));
    out.factors.insert(out.factors.end(), rest.factors.begin(), rest.factors.end());
    return out;
}

}  // namespace hdcat
