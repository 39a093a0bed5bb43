#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hdcat/finset.hpp"

namespace hdcat {

/// Input form of a finite category. Identities are implicit: every object x
/// gets a morphism "id:x", and composites with identities are filled in.
struct RawMorphism {
    std::string id;
    std::string src;
    std::string tgt;
};

struct RawComposite {
    std::string g;
    std::string f;
    std::string gf;
};

struct RawCategory {
    std::vector<std::string> objects;
    std::vector<RawMorphism> morphisms;
    std::vector<RawComposite> compose;
};

std::string identity_label(std::string_view object);

/// A finite category with an explicit, total composition table.
class FinCat {
public:
    using CompTable = std::unordered_map<std::uint64_t, Index>;

    FinCat() = default;

    /// Builds a category from indexed parts without checking the laws; see
    /// check_category_laws. `comp` is keyed by pair_key(g, f).
    static FinCat assemble(FinSet objects, FinSet morphisms, IndexMap src, IndexMap tgt, IndexMap id, CompTable comp);

    const FinSet& objects() const noexcept { return objects_; }
    const FinSet& morphisms() const noexcept { return morphisms_; }
    Index src(Index m) const { return src_[m]; }
    Index tgt(Index m) const { return tgt_[m]; }
    Index id(Index x) const { return id_[x]; }
    const IndexMap& src_map() const noexcept { return src_; }
    const IndexMap& tgt_map() const noexcept { return tgt_; }
    const IndexMap& id_map() const noexcept { return id_; }
    const CompTable& comp_table() const noexcept { return comp_; }

    std::optional<Index> try_compose(Index g, Index f) const;
    /// g after f; throws IllTypedComposite when not composable.
    Index compose(Index g, Index f) const;

    const std::vector<Index>& outgoing(Index x) const { return out_[x]; }
    const std::vector<Index>& incoming(Index x) const { return in_[x]; }
    std::vector<Index> hom(Index x, Index y) const;

    bool is_identity(Index m) const { return id_[src_[m]] == m; }
    std::optional<Index> inverse(Index m) const;

    friend bool operator==(const FinCat& a, const FinCat& b);

private:
    FinSet objects_;
    FinSet morphisms_;
    IndexMap src_;
    IndexMap tgt_;
    IndexMap id_;
    CompTable comp_;
    std::vector<std::vector<Index>> out_;
    std::vector<std::vector<Index>> in_;
};

/// Checks typing, identity, totality and associativity; throws the
/// matching ErrorKind naming the offending entries.
void check_category_laws(const FinCat& c);

FinCat validate_fincat(const RawCategory& raw);

struct CatFunctor {
    FinCat dom;
    FinCat cod;
    IndexMap omap;
    IndexMap fmap;

    /// Throws InvalidMap unless src, tgt, identities and composites are preserved.
    void check() const;
};

CatFunctor identity_functor(const FinCat& c);
CatFunctor compose(const CatFunctor& second, const CatFunctor& first);

FinCat discrete_cat(const FinSet& s);
bool is_discrete(const FinCat& c);
bool is_groupoid(const FinCat& c);

/// Path components, labelled by least member.
Quotient q_components(const FinCat& c);
/// Isomorphism classes of objects, labelled by least member.
Quotient p_isoclasses(const FinCat& c);
FinCat max_subgroupoid(const FinCat& c);
CatFunctor unit_q(const FinCat& c);

/// Groupoid with at most one morphism per ordered pair of objects.
bool is_equivalence_relation(const FinCat& c);

/// Fully faithful and essentially surjective, by enumeration.
bool is_cat_equivalence(const CatFunctor& f);

/// Maps induced on components and on iso classes.
SetMap q_map(const CatFunctor& f);
SetMap p_map(const CatFunctor& f);

FinCat product(const FinCat& c, const FinCat& d);
/// Disjoint union with identifiers tagged "L." and "R.".
FinCat coproduct(const FinCat& c, const FinCat& d);
/// C x_E D for functors into a discrete E; labels "(c,d)". Throws NotDiscreteBase.
FinCat fiber_product_over_discrete(const CatFunctor& f, const CatFunctor& g);

/// Composable k-chains. Level 0 is the objects, level 1 the morphisms, and a
/// chain x0 -m1-> x1 -> ... -mk-> xk with k >= 2 is labelled "(mk,...,m1)".
FinSet nerve_level(const FinCat& c, int k);

}  // namespace hdcat
