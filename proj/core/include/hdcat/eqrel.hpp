#pragma once

#include <vector>

#include "hdcat/hd.hpp"
#include "hdcat/nfold.hpp"

namespace hdcat {

/// The groupoid A[f]: objects A, a morphism "(a,a')" from a' to a whenever
/// f a = f a', identities "(a,a)".
FinCat build_internal_eqrel_set(const SetMap& f);

/// X[f] for f : X -> Y of (n-1)-fold categories: a new last axis with
/// level 0 = X, level 1 = pairs "(x,x')" with f x = f x' (target x, source
/// x'), level 2 = composable pairs "((x,y),(y,z))". Other axes act
/// componentwise.
NFoldCat build_internal_eqrel_nfold(const NFoldMap& f);

/// An object of eqr^n: f : X -> Y of (n-1)-fold categories, levelwise
/// surjective, with Y presented by `target` when n >= 2.
struct EqrData {
    int n = 0;
    NFoldMap f;
    std::vector<EqrData> target;  // one entry when n >= 2

    const EqrData& target_data() const { return target.at(0); }
    friend bool operator==(const EqrData&, const EqrData&) = default;
};

/// Checks dimensions, levelwise surjectivity at every stored cell (and
/// along every axis at level 3), and that f's codomain is the object
/// presented by the target. Throws SurjectivityFailure or InvalidArgument.
void validate_eqr(const EqrData& e);

/// X[f] after validation.
NFoldCat eqr_to_nfold(const EqrData& e);

/// Presentation of a certified X: f is the class map X_0 -> p_n X along
/// the last axis, with p_n X relabelled so that its own last axis is in
/// eqr form, and the target presented recursively.
EqrData nfold_to_eqr(const NFoldCat& x, const HdCert& cert);

/// Rewrites the labels along the last axis: level 1 as "(d0,d1)" and level
/// 2 as "(d0,d2)" of the new labels. Requires a thin last axis. Returns the
/// object and the relabelling isomorphism from x.
struct Normalized {
    NFoldCat object;
    NFoldMap iso;
};
Normalized normalize_last_axis(const NFoldCat& x);

/// The presentation equal to nfold_to_eqr(eqr_to_nfold(e)): every target
/// level-0 element is relabelled by its least preimage.
EqrData canonicalize_eqr(const EqrData& e);

/// Restriction to level `level` along axis 0. n >= 2.
EqrData slice_eqr(const EqrData& e, int level);

/// Extends h0 : X -> X' to X[f] -> X'[f'] given both objects. Throws
/// InvalidMap when a pair has no image.
NFoldMap eqrel_lift(const NFoldMap& h0, const NFoldCat& dom, const NFoldCat& cod);

/// For alpha : X[f] -> X'[f'], the map Y -> Y' with f' alpha_0 = alpha' f.
/// Throws NonCommutingSquare naming the cell and element.
NFoldMap eqr_morphism_target_map(const NFoldMap& alpha, const EqrData& dom, const EqrData& cod);

/// S_0 -> S_1 -> ... -> S_n with every map surjective.
struct SurjTower {
    std::vector<FinSet> sets;
    std::vector<IndexMap> maps;  // maps[i] : sets[i] -> sets[i + 1]

    int n() const { return static_cast<int>(sets.size()) - 1; }
    /// Throws SurjectivityFailure or InvalidMap.
    void check() const;
    friend bool operator==(const SurjTower&, const SurjTower&) = default;
};

/// Component maps h_i : S_i -> S'_i commuting with the tower maps.
struct TowerMorphism {
    std::vector<IndexMap> maps;
    /// Throws NonCommutingSquare.
    void check(const SurjTower& dom, const SurjTower& cod) const;
};

/// (S_0 -> S_2 -> ... -> S_n) with the first two maps composed.
SurjTower source_tower(const SurjTower& t);
/// (S_1 -> ... -> S_n).
SurjTower target_tower(const SurjTower& t);

EqrData tower_to_eqr(const SurjTower& t);
/// eqr_to_nfold(tower_to_eqr(t)); a set when n = 0.
NFoldCat tower_nfold(const SurjTower& t);
NFoldMap tower_map_to_nfold(const SurjTower& dom, const SurjTower& cod, const TowerMorphism& h);

/// Number of elements of the tower object at multi-index k (any entries),
/// from the fiber sizes alone.
double tower_cell_size(const SurjTower& t, std::span<const int> k);
/// Sum of tower_cell_size over all stored cells.
double tower_stored_size(const SurjTower& t);

}  // namespace hdcat
