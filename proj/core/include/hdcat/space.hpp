#pragma once

#include <vector>

#include "hdcat/hd.hpp"
#include "hdcat/multinerve.hpp"
#include "hdcat/smith.hpp"

namespace hdcat {

/// A simplicial set truncated at level m.
struct TruncSSet {
    int m = 0;
    std::vector<FinSet> sets;
    /// faces[k][i] : Y_k -> Y_{k-1} for 1 <= k <= m.
    std::vector<std::vector<IndexMap>> faces;
    /// degens[k][i] : Y_k -> Y_{k+1} for k < m.
    std::vector<std::vector<IndexMap>> degens;

    /// Throws IdentityViolation naming the relation.
    void check() const;
};

/// Diagonal of the multinerve: Y_k = X(k,...,k), with faces and
/// degeneracies applied along every axis.
TruncSSet diag_classifying(const NFoldCat& x, int m, std::size_t max_elements = kDefaultMaxElements);

/// Components: coequalizer of d0, d1 : Y_1 -> Y_0.
Quotient pi0(const TruncSSet& y);

/// H_1 = Z^free_rank + sum of Z/t for t in torsion (each t > 1).
struct Homology1 {
    std::size_t free_rank = 0;
    std::vector<BigInt> torsion;
    bool trivial() const { return free_rank == 0 && torsion.empty(); }
};

/// First homology of the unnormalized chain complex. m >= 2.
Homology1 h1(const TruncSSet& y);

struct ZeroTypeReport {
    std::size_t pi0_size = 0;
    std::size_t discretization_size = 0;
    /// Whether the map pi0 -> X^d induced by gamma<n> is a bijection.
    bool pi0_bijection = false;
    Homology1 h1;
    bool zero_type_necessary() const { return pi0_bijection && h1.trivial(); }
};

ZeroTypeReport verify_zero_type(const NFoldCat& x, const HdCert& cert, std::size_t max_elements = kDefaultMaxElements);

}  // namespace hdcat
