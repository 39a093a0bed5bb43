#pragma once

#include <string>
#include <vector>

#include <hdcat/eqrel.hpp>
#include <hdcat/fincat.hpp>
#include <hdcat/smith.hpp>

// Brute-force reference computations. None of these call the library
// routine they are compared against.
namespace hdtest {

/// Composable k-chains by depth-first search over morphisms, labelled like
/// nerve_level, in sorted order.
std::vector<std::string> chain_labels(const hdcat::FinCat& c, int k);

/// Number of k-tuples of morphisms (m1, ..., mk) with tgt m_i = src m_{i+1},
/// by filtering the k-fold product.
std::size_t fiber_product_count(const hdcat::FinCat& c, int k);

/// Number of pairs (a, a') with f a = f a'.
std::size_t kernel_pair_count(const hdcat::IndexMap& f);

/// Size of the tower object at k (any entries): grids of S_0-points on
/// [k_0] x ... x [k_{n-1}] whose neighbours along axis a agree in
/// S_{n-a}, counted by backtracking.
std::size_t tower_grid_count(const hdcat::SurjTower& t, const std::vector<int>& k);

/// Invariant factors from determinantal divisors: d_k is the gcd of the
/// k x k minors and the factors are d_k / d_{k-1}.
std::vector<hdcat::BigInt> determinantal_factors(const std::vector<std::vector<hdcat::BigInt>>& a);

/// Whether quot(C x_E D) is the fiber product of quot C and quot D over E:
/// the classes of the pairs "(c,d)" are matched with pairs of classes
/// through the labels, and the matching must be a bijection.
bool quotient_preserves_fiber_product(const hdcat::CatFunctor& f, const hdcat::CatFunctor& g,
                                      hdcat::Quotient (*quot)(const hdcat::FinCat&));

}  // namespace hdtest
