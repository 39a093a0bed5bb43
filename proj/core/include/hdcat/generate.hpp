#pragma once

#include <cstdint>
#include <random>

#include "hdcat/eqrel.hpp"
#include "hdcat/multinerve.hpp"

namespace hdcat {

/// Longest tower the generator accepts.
inline constexpr int kMaxTowerLength = 4;

struct TowerSpec {
    int n = 2;
    /// Upper bound on |S_0|; later sets are no larger.
    std::size_t max_set_size = 4;
    /// Bound on the total number of stored elements of the tower object.
    std::size_t max_elements = kDefaultMaxElements;
    /// Rejected draws before giving up with SizeExceeded.
    int attempts = 256;
};

/// Random tower with non-increasing sizes and random surjections, redrawn
/// until its object fits the element bound. Throws SizeExceeded for
/// n > kMaxTowerLength or when no draw fits.
SurjTower random_tower(std::mt19937_64& rng, const TowerSpec& spec);
SurjTower random_tower(std::uint64_t seed, const TowerSpec& spec);

/// Random morphism dom -> cod: h_n is drawn first (a bijection when
/// `bijective_top` and the top sets have equal size), then each h_i is
/// lifted through the fibers of cod.
TowerMorphism random_tower_morphism(std::mt19937_64& rng, const SurjTower& dom, const SurjTower& cod,
                                    bool bijective_top = false);

/// Nerve of the walking arrow along `axis` of an otherwise discrete
/// n-fold category.
NFoldCat arrow_along(int n, int axis);

/// The carrier of x with one level-2 element of the top cell duplicated,
/// which breaks injectivity of the Segal map along every axis. n >= 1.
TruncMSSet duplicate_top_element(const NFoldCat& x, Index element = 0);

enum class Mutation { ArrowInFirstAxis, ArrowInLastAxis, SegalCorruption };

}  // namespace hdcat
