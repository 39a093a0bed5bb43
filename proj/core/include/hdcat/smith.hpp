#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hdcat {

using BigInt = boost::multiprecision::cpp_int;

/// Integer matrix given by its nonzero entries.
struct SparseIntMatrix {
    struct Entry {
        std::size_t row;
        std::size_t col;
        long long value;
    };
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Entry> entries;  // repeated positions are summed
};

/// Nonzero invariant factors d_1 | d_2 | ... | d_r (all positive); r is
/// the rank.
struct SmithForm {
    std::vector<BigInt> factors;
    std::size_t rank() const { return factors.size(); }
};

/// Smith normal form of a dense matrix, pivoting on the least absolute
/// value.
SmithForm smith_normal_form(std::vector<std::vector<BigInt>> a);

/// Eliminates unit pivots sparsely, then finishes the remainder densely.
SmithForm smith_normal_form(const SparseIntMatrix& m);

}  // namespace hdcat
