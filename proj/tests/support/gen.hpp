#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <hdcat/eqrel.hpp>
#include <hdcat/fincat.hpp>
#include <hdcat/generate.hpp>

// Seeded instance generators shared by the unit, property and acceptance
// suites.
namespace hdtest {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);
bool coin(Rng& rng, double p = 0.5);

/// Reflexive-transitive closure of random edges on `objects` objects.
hdcat::FinCat random_preorder(Rng& rng, std::size_t objects);
/// Free category on a random DAG with possibly parallel edges; morphisms
/// are the non-empty paths.
hdcat::FinCat random_free_dag(Rng& rng, std::size_t objects);
/// Z/k as a one-object groupoid on "*".
hdcat::FinCat cyclic_group(std::size_t k);
/// Indiscrete groupoid on `objects` objects.
hdcat::FinCat indiscrete(std::size_t objects);

/// Mixture of the above, combined by coproducts and products, with at most
/// `max_objects` objects.
hdcat::FinCat random_fincat(Rng& rng, std::size_t max_objects = 6);

hdcat::FinSet named_set(const char* prefix, std::size_t size);
/// Functor C -> discrete E, constant on each component of C.
hdcat::CatFunctor random_functor_to_discrete(Rng& rng, const hdcat::FinCat& c, const hdcat::FinCat& e);

/// Element cap of the tower corpus. Cells of a tower object grow like
/// |fiber|^(3^n), so draws above the cap are redrawn.
inline constexpr std::size_t kCorpusCap = 1000;
inline constexpr std::uint64_t kCorpusSeeds = 100;

/// Tower for one corpus entry: seeds 1..kCorpusSeeds, n in 1..3.
hdcat::SurjTower corpus_tower(std::uint64_t seed, int n, std::size_t cap = kCorpusCap);

/// A second tower of length n whose top set has the size `top`, or a free
/// draw when no such tower turns up.
hdcat::SurjTower tower_with_top(Rng& rng, int n, std::size_t top, std::size_t cap);

}  // namespace hdtest
