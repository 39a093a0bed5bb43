#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hdcat/fincat.hpp"
#include "hdcat/multisimp.hpp"

namespace hdcat {

/// A truncated multi-simplicial set whose Segal maps are bijections along
/// every axis, with the inverse bijections recorded. Copies are cheap.
///
/// Along an axis, level 1 has d0 = target and d1 = source, and a level-2
/// element z is the composable pair (second, first) = (d0 z, d2 z) with
/// composite d1 z.
class NFoldCat {
public:
    /// The empty 0-fold category.
    NFoldCat();

    int n() const noexcept { return carrier().n; }
    const TruncMSSet& carrier() const noexcept;
    std::size_t size() const noexcept { return carrier().size(); }
    const FinSet& cell(std::size_t id) const { return carrier().cells[id]; }
    const FinSet& cell(std::span<const int> k) const { return carrier().cell(k); }
    const IndexMap& face(std::size_t id, int axis, int i) const { return carrier().faces[id][axis][i]; }
    const IndexMap& degen(std::size_t id, int axis, int i) const { return carrier().degens[id][axis][i]; }

    /// The level-2 element of cell `id2` (level 2 on `axis`) whose first
    /// edge is `first` and second edge is `second`.
    std::optional<Index> segal_lift(int axis, std::size_t id2, Index first, Index second) const;
    /// Composite "second after first" of two level-1 elements of cell `id1`.
    std::optional<Index> compose(int axis, std::size_t id1, Index second, Index first) const;

    friend bool operator==(const NFoldCat& a, const NFoldCat& b) { return a.carrier() == b.carrier(); }

private:
    struct Impl;
    explicit NFoldCat(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;

    friend struct NFoldAccess;
};

/// Verifies the carrier, builds the Segal inverses and checks they are
/// bijective and define associative composition. Throws SegalFailure with
/// location "axis=a at=k reason=...".
NFoldCat promote(TruncMSSet x);

/// A map of n-fold categories, one index map per stored cell.
struct NFoldMap {
    NFoldCat dom;
    NFoldCat cod;
    std::vector<IndexMap> maps;

    /// Throws InvalidMap unless every cell map is total and every face and
    /// degeneracy square commutes.
    void check() const;
    friend bool operator==(const NFoldMap&, const NFoldMap&) = default;
};

NFoldMap identity_nfold_map(const NFoldCat& x);
NFoldMap compose(const NFoldMap& second, const NFoldMap& first);

/// 0-fold categories are sets.
NFoldCat set_as_nfold(const FinSet& s);
NFoldMap set_map_as_nfold(const SetMap& f);

/// The 2-truncated nerve of C as a 1-fold category.
NFoldCat nerve_nfold(const FinCat& c);

/// Freezes `axis` at `level` (0, 1 or 2).
NFoldCat slice(const NFoldCat& x, int axis, int level);
NFoldMap slice_map(const NFoldMap& f, int axis, int level);

/// Levels 0..2 of x along one axis as (n-1)-fold categories, with the face
/// and degeneracy maps between them.
struct SimplicialSlices {
    int axis = 0;
    std::array<NFoldCat, 3> levels;
    /// faces[k][i] : levels[k] -> levels[k-1] for k >= 1.
    std::array<std::vector<NFoldMap>, 3> faces;
    /// degens[k][i] : levels[k] -> levels[k+1] for k <= 1.
    std::array<std::vector<NFoldMap>, 3> degens;
};

SimplicialSlices xi(const NFoldCat& x, int axis);
NFoldCat xi_inverse(const SimplicialSlices& s);

/// Category along `axis` with the other axes frozen at `at` (entry at
/// `axis` ignored).
FinCat category_along(const NFoldCat& x, int axis, std::span<const int> at);
/// Category along the last axis at s (n-1 entries).
FinCat category_at(const NFoldCat& x, std::span<const int> s);
/// Functor induced by f along the last axis at s.
CatFunctor functor_at(const NFoldMap& f, std::span<const int> s);

bool is_discrete(const NFoldCat& x);
/// The discrete n-fold category on s.
NFoldCat discrete_nfold(const FinSet& s, int n);
/// Adds a constant last axis.
NFoldCat discrete_inclusion(const NFoldCat& y);
NFoldMap discrete_inclusion(const NFoldMap& f);

/// Underlying set of a discrete n-fold category.
const FinSet& underlying(const NFoldCat& x);

NFoldCat product(const NFoldCat& x, const NFoldCat& y);
NFoldCat coproduct(const NFoldCat& x, const NFoldCat& y);
NFoldMap product(const NFoldMap& f, const NFoldMap& g);
NFoldMap coproduct(const NFoldMap& f, const NFoldMap& g);

struct Pullback {
    NFoldCat object;
    NFoldMap first;
    NFoldMap second;
};

/// X x_Z Y for f : X -> Z, g : Y -> Z with Z discrete; pairs labelled "(x,y)".
/// Throws NotDiscreteBase.
Pullback pullback_over_discrete(const NFoldMap& f, const NFoldMap& g);

/// The unique map to the discrete n-fold category on one point "*".
NFoldMap to_point(const NFoldCat& x);

/// Sub-object of x on the elements accepted by `keep(cell, element)`;
/// must be closed under all structure maps. Labels are kept.
NFoldCat sub_nfold(const NFoldCat& x, const std::function<bool(std::size_t, Index)>& keep);
/// Inclusion of a sub-object built by sub_nfold.
NFoldMap inclusion_map(const NFoldCat& sub, const NFoldCat& x);

/// Levelwise quotient of the objects of every category_at(x, s) (a Cat ->
/// Set functor such as q or p). The quotient's action on structure maps is
/// induced on representatives; throws FunctorialityViolation if that is
/// not well defined. Returns an (n-1)-dimensional carrier and the class
/// maps of the objects per cell.
struct LevelwiseQuotient {
    TruncMSSet carrier;
    std::vector<IndexMap> classes;
};
LevelwiseQuotient apply_levelwise_quotient(const NFoldCat& x, const std::function<Quotient(const FinCat&)>& q);

/// Vertex of a level-k element along axis (k <= 2): its source.
Index source_vertex(const NFoldCat& x, std::size_t id, int axis, Index e);

}  // namespace hdcat

namespace hdcat::detail {

/// Builds the Segal inverses of a carrier known to be an n-fold category
/// (output of a construction), skipping verification.
NFoldCat assume_segal(TruncMSSet x);

}  // namespace hdcat::detail
