#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hdcat/nfold.hpp"

namespace hdcat {

/// Certificate that an n-fold category is homotopically discrete.
///  n = 0: every set qualifies.
///  n = 1: the category is an equivalence relation.
///  n >= 2: the slices along axis 0 at levels 0, 1, 2 are certified, every
///          category along the last axis is a groupoid, and p_n(X) is
///          certified.
/// For n >= 1 the certificate also holds p_n(X) and the class maps.
struct HdCert {
    int n = 0;
    std::vector<HdCert> slices;
    NFoldCat pn;
    std::vector<HdCert> pn_cert;  // one entry when n >= 1
    /// Per cell s of p_n(X): the iso class of every object of category_at(X, s).
    std::vector<IndexMap> classes;

    const HdCert& pn_certificate() const { return pn_cert.at(0); }
};

/// First violated clause. `clause` is a path such as
/// "slice(axis=0,level=1)/groupoidal"; `location` names the cell.
struct HdFailure {
    std::string clause;
    std::string location;
    std::string reason;
};

struct HdResult {
    std::optional<HdCert> cert;
    std::optional<HdFailure> failure;
    explicit operator bool() const { return cert.has_value(); }
};

struct HdOptions {
    /// Also certify the level-3 slice along axis 0 (evaluated through the
    /// Segal inverses).
    bool spot_check_level3 = true;
};

HdResult is_hd(const NFoldCat& x, const HdOptions& options = {});
/// Throws NotHomotopicallyDiscrete with the failing clause.
HdCert certify_hd(const NFoldCat& x, const HdOptions& options = {});

struct PnResult {
    NFoldCat object;
    std::vector<IndexMap> classes;
};

/// Levelwise iso classes along the last axis. n >= 1. Throws SegalFailure
/// or FunctorialityViolation when the result is not an (n-1)-fold category.
PnResult p_n(const NFoldCat& x);

/// The map induced on p_n by f, given the class maps of both sides.
NFoldMap p_n_map(const NFoldMap& f, const HdCert& dom, const HdCert& cod);

/// X -> discrete_inclusion(p_n X), sending an element to the class of its
/// vertex along the last axis.
NFoldMap gamma_n(const NFoldCat& x, const HdCert& cert);

struct DiscretizationData {
    /// X^d as a discrete n-fold category, and its underlying set.
    NFoldCat xd;
    FinSet underlying;
    /// gamma<n> : X -> X^d.
    NFoldMap gamma;
    /// The chain X -> d p_n X -> d d p_{n-1} p_n X -> ... -> X^d, whose
    /// composite is gamma.
    std::vector<NFoldMap> steps;
};

DiscretizationData discretize(const NFoldCat& x, const HdCert& cert);

/// Value of gamma<n> on the element `e` of cell `id`, as an index into
/// the underlying set of X^d.
Index discrete_class(const DiscretizationData& d, std::size_t id, Index e);

struct Fiber {
    NFoldCat object;
    HdCert cert;
};

/// X(a, b): elements of the level-1 slice along axis 0 whose target is in
/// class a and source in class b of X_0^d. n >= 1. Throws UnknownPoint.
Fiber fiber(const NFoldCat& x, const HdCert& cert, const std::string& a, const std::string& b);

/// Map X^d -> Y^d induced by f. Throws InvalidMap if f does not respect
/// the classes.
SetMap induced_discrete_map(const NFoldMap& f, const DiscretizationData& dom, const DiscretizationData& cod);

/// Decides n-equivalence by recursion on fibers and p_n.
bool is_n_equivalence(const NFoldMap& f, const HdCert& dom, const HdCert& cod);
/// Decides n-equivalence by bijectivity of f^d.
bool is_n_equivalence_via_discretization(const NFoldMap& f, const HdCert& dom, const HdCert& cod);

struct SegalEquivReport {
    int s = 0;
    /// Both deciders on mu_s.
    bool recursive = false;
    bool via_discretization = false;
    /// (X_1 x_{X_0} X_1)^d -> (X_1 x_{X_0^d} X_1)^d is a bijection.
    bool discretization_identity = false;

    bool ok() const { return recursive && via_discretization && discretization_identity; }
};

/// Builds the induced Segal map mu_s along axis 0 with gamma<n-1> on X_0
/// and decides whether it is an (n-1)-equivalence. n >= 2, s >= 2.
SegalEquivReport check_induced_segal_equiv(const NFoldCat& x, const HdCert& cert, int s);

enum class ClosureOp { Coproduct, Product, Pullback };

struct ClosureResult {
    NFoldCat object;
    HdCert cert;
    /// The induced map from the result's discretization to the expected
    /// combination of the inputs' discretizations is a bijection.
    bool discretization_identity = false;
};

/// For Pullback, f : X -> Z and g : Y -> Z with Z discrete; for the other
/// operations only the domains are used. Throws NotDiscreteBase or
/// NotHomotopicallyDiscrete.
ClosureResult hd_closure(ClosureOp op, const NFoldMap& f, const NFoldMap& g);
ClosureResult hd_closure(ClosureOp op, const NFoldCat& x, const NFoldCat& y);

}  // namespace hdcat
