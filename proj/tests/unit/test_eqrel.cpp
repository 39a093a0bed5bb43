#include <doctest.h>

#include <hdcat/eqrel.hpp>
#include <hdcat/generate.hpp>
#include <hdcat/hd.hpp>
#include <hdcat/multinerve.hpp>

#include "check.hpp"
#include "fixtures.hpp"
#include "gen.hpp"
#include "oracle.hpp"

using namespace hdcat;
using namespace hdtest;

TEST_CASE("build_internal_eqrel_set examples")
{
    FinSet a = FinSet::from({"a", "b", "c"});
    FinCat id = build_internal_eqrel_set(SetMap{a, a, {0, 1, 2}});
    CHECK(is_discrete(id));
    CHECK(id.morphisms().size() == 3);

    FinCat two = build_internal_eqrel_set(SetMap{FinSet::from({"a", "b"}), FinSet::from({"*"}), {0, 0}});
    CHECK(two.morphisms().size() == 4);
    CHECK(is_equivalence_relation(two));
    CHECK(p_isoclasses(two).cls == (IndexMap{0, 0}));

    FinCat af = build_internal_eqrel_set(abc_to_xy());
    CHECK(af.morphisms().size() == 5);
    CHECK(q_components(af).classes.size() == 2);
    CHECK(af.morphisms().find("(a,b)").has_value());
}

TEST_CASE("property: A[f] is an equivalence relation with quotient B")
{
    Rng rng(501);
    for (int i = 0; i < 100; ++i) {
        FinSet a = named_set("a", uniform(rng, 1, 7));
        FinSet b = named_set("b", uniform(rng, 1, a.size()));
        IndexMap m(a.size());
        for (Index e = 0; e < m.size(); ++e)
            m[e] = e < b.size() ? e : static_cast<Index>(uniform(rng, 0, b.size() - 1));
        std::shuffle(m.begin(), m.end(), rng);
        FinCat c = build_internal_eqrel_set(SetMap{a, b, m});
        CHECK(is_equivalence_relation(c));
        CHECK(c.morphisms().size() == kernel_pair_count(m));
        CHECK(q_components(c).classes.size() == b.size());
    }
}

TEST_CASE("build_internal_eqrel_nfold examples")
{
    NFoldCat x = tower_nfold(tower_of_sizes({4, 2}));
    NFoldCat xid = build_internal_eqrel_nfold(identity_nfold_map(x));
    NFoldCat dx = discrete_inclusion(x);
    for (std::size_t c = 0; c < dx.size(); ++c)
        CHECK(xid.cell(c).size() == dx.cell(c).size());
    CHECK(normalize_last_axis(xid).object == normalize_last_axis(dx).object);

    SetMap f = abc_to_xy();
    CHECK(build_internal_eqrel_nfold(set_map_as_nfold(f)) == nerve_nfold(build_internal_eqrel_set(f)));
}

TEST_CASE("property: cells of X[f] are kernel pairs")
{
    Rng rng(502);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SurjTower dom = corpus_tower(seed, 2, 300);
        SurjTower cod = tower_with_top(rng, 2, dom.sets.back().size(), 300);
        NFoldMap f = tower_map_to_nfold(dom, cod, random_tower_morphism(rng, dom, cod));
        NFoldCat xf = build_internal_eqrel_nfold(f);
        REQUIRE(xf.n() == f.dom.n() + 1);
        const int last = xf.n() - 1;
        for (std::size_t c = 0; c < f.dom.size(); ++c) {
            CHECK(xf.cell(insert_axis(c, last, 0)).size() == f.dom.cell(c).size());
            CHECK(xf.cell(insert_axis(c, last, 1)).size() == kernel_pair_count(f.maps[c]));
            std::vector<std::size_t> fiber(f.cod.cell(c).size(), 0);
            for (Index v : f.maps[c])
                ++fiber[v];
            std::size_t triples = 0;
            for (std::size_t s : fiber)
                triples += s * s * s;
            CHECK(xf.cell(insert_axis(c, last, 2)).size() == triples);
        }
        CHECK(is_hd(xf));
    }
}

TEST_CASE("tower 3 -> 2 -> 1")
{
    SurjTower t = tower_of_sizes({3, 2, 1});
    NFoldCat x = tower_nfold(t);
    CHECK(x.cell(MultiIndex{0, 0}).size() == 3);
    for (std::size_t c = 0; c < x.size(); ++c) {
        MultiIndex k = cell_index(c, 2);
        CHECK(x.cell(c).size() == tower_grid_count(t, k));
        CHECK(static_cast<double>(x.cell(c).size()) == tower_cell_size(t, k));
    }
    HdCert cert = certify_hd(x);
    CHECK(discretize(x, cert).underlying.size() == 1);
    NFoldCat y = tower_nfold(target_tower(t));
    PnResult p = p_n(x);
    for (std::size_t c = 0; c < y.size(); ++c)
        CHECK(p.object.cell(c).size() == y.cell(c).size());
}

TEST_CASE("property: tower object sizes match the grid oracle")
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed)
        for (int n = 1; n <= 3; ++n) {
            SurjTower t = corpus_tower(seed, n, 1000);
            NFoldCat x = tower_nfold(t);
            double total = 0;
            for (std::size_t c = 0; c < x.size(); ++c) {
                MultiIndex k = cell_index(c, n);
                CHECK(x.cell(c).size() == tower_grid_count(t, k));
                total += static_cast<double>(x.cell(c).size());
            }
            CHECK(total == tower_stored_size(t));
            CHECK(is_hd(x));
        }
}

TEST_CASE("validate_eqr rejects non-surjective data")
{
    EqrData e = tower_to_eqr(tower_of_sizes({3, 2}));
    CHECK_NOTHROW(validate_eqr(e));
    EqrData bad = e;
    for (auto& m : bad.f.maps)
        std::fill(m.begin(), m.end(), 0);
    CHECK(error_kind([&] { validate_eqr(bad); }).has_value());

    SetMap f{FinSet::from({"a", "b"}), FinSet::from({"x", "y", "z"}), {0, 1}};
    EqrData ns{1, set_map_as_nfold(f), {}};
    CHECK(error_kind([&] { validate_eqr(ns); }) == ErrorKind::SurjectivityFailure);
}

TEST_CASE("nfold_to_eqr examples")
{
    NFoldCat d = discrete_nfold(FinSet::from({"p", "q"}), 2);
    EqrData e = nfold_to_eqr(d, certify_hd(d));
    CHECK(e.n == 2);
    for (const auto& m : e.f.maps)
        CHECK(is_bijective(m, m.size()));
    CHECK(eqr_to_nfold(e) == normalize_last_axis(d).object);

    NFoldCat af = nerve_nfold(build_internal_eqrel_set(abc_to_xy()));
    EqrData ea = nfold_to_eqr(af, certify_hd(af));
    // Classes are labelled by their least representative.
    CHECK(ea.f.cod.cell(0) == FinSet::from({"a", "c"}));
    CHECK(ea.f.maps[0] == IndexMap{0, 0, 1});
}

TEST_CASE("property: round trips are identities on canonical representations")
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed)
        for (int n = 1; n <= 3; ++n) {
            SurjTower t = corpus_tower(seed, n, 1000);
            EqrData e = tower_to_eqr(t);
            NFoldCat x = eqr_to_nfold(e);
            HdCert cert = certify_hd(x);
            EqrData back = nfold_to_eqr(x, cert);
            CHECK(back == canonicalize_eqr(e));
            CHECK(eqr_to_nfold(back) == x);
            CHECK(canonicalize_eqr(back) == back);
        }
}

TEST_CASE("property: slices of X[f] are presented by slice_eqr")
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        for (int n = 2; n <= 3; ++n) {
            EqrData e = tower_to_eqr(corpus_tower(seed, n, 600));
            NFoldCat x = eqr_to_nfold(e);
            for (int level = 0; level <= 2; ++level)
                CHECK(eqr_to_nfold(slice_eqr(e, level)) == slice(x, 0, level));
        }
}

TEST_CASE("normalize_last_axis")
{
    NFoldCat x = nerve_nfold(e2());
    Normalized nx = normalize_last_axis(x);
    CHECK_NOTHROW(nx.iso.check());
    CHECK(nx.object.cell(1).find("(0,1)").has_value());
    CHECK(error_kind([] { normalize_last_axis(nerve_nfold(z2())); }).has_value());
}

TEST_CASE("eqr_morphism_target_map")
{
    Rng rng(503);
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        SurjTower dom = corpus_tower(seed, 2, 300);
        SurjTower cod = tower_with_top(rng, 2, dom.sets.back().size(), 300);
        TowerMorphism h = random_tower_morphism(rng, dom, cod);
        NFoldMap alpha = tower_map_to_nfold(dom, cod, h);
        EqrData ed = tower_to_eqr(dom);
        EqrData ec = tower_to_eqr(cod);

        NFoldMap id = eqr_morphism_target_map(identity_nfold_map(alpha.dom), ed, ed);
        CHECK(id == identity_nfold_map(ed.f.cod));

        // The target map is the morphism of the truncated towers.
        NFoldMap bar = eqr_morphism_target_map(alpha, ed, ec);
        TowerMorphism shifted{std::vector<IndexMap>(h.maps.begin() + 1, h.maps.end())};
        CHECK(bar == tower_map_to_nfold(target_tower(dom), target_tower(cod), shifted));

    }

    // Remap one object into another class while a classmate keeps its image.
    SurjTower t = tower_of_sizes({4, 2, 1});
    EqrData e = tower_to_eqr(t);
    NFoldMap bad = identity_nfold_map(eqr_to_nfold(e));
    REQUIRE(e.f.maps[0][0] == e.f.maps[0][2]);
    REQUIRE(e.f.maps[0][0] != e.f.maps[0][1]);
    bad.maps[0][0] = 1;
    auto r = raised([&] { eqr_morphism_target_map(bad, e, e); });
    REQUIRE(r);
    CHECK(r->kind == ErrorKind::NonCommutingSquare);
    CHECK_FALSE(r->location.empty());
}

TEST_CASE("eqrel_lift extends a map of level-0 objects")
{
    Rng rng(504);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SurjTower dom = corpus_tower(seed, 2, 300);
        SurjTower cod = tower_with_top(rng, 2, dom.sets.back().size(), 300);
        NFoldMap alpha = tower_map_to_nfold(dom, cod, random_tower_morphism(rng, dom, cod));
        NFoldMap h0 = slice_map(alpha, 1, 0);
        CHECK(eqrel_lift(h0, alpha.dom, alpha.cod) == alpha);
    }
}
