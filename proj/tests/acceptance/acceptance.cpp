// Acceptance suite: one PASS/FAIL line per criterion, each with a pinned
// wall-clock budget. Exit status 0 iff every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <hdcat/eqrel.hpp>
#include <hdcat/error.hpp>
#include <hdcat/fincat.hpp>
#include <hdcat/generate.hpp>
#include <hdcat/hd.hpp>
#include <hdcat/space.hpp>

#include "fixtures.hpp"
#include "gen.hpp"
#include "oracle.hpp"

using namespace hdcat;
using namespace hdtest;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    std::string first_failure;

    void fail(const std::string& what)
    {
        if (ok)
            first_failure = what;
        ok = false;
    }
};

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<Outcome()> run;
};

std::string describe(const SurjTower& t)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < t.sets.size(); ++i)
        out << (i ? "-" : "") << t.sets[i].size();
    return out.str();
}

// Every tower in the corpus, in seed order.
template <class F>
void for_each_corpus_tower(int min_n, std::size_t cap, F&& f)
{
    for (std::uint64_t seed = 1; seed <= kCorpusSeeds; ++seed)
        for (int n = min_n; n <= 3; ++n)
            f(seed, n, corpus_tower(seed, n, cap));
}

Outcome quotient_preservation()
{
    Outcome out;
    int cases = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        Rng rng(10'000 + seed);
        FinCat e = discrete_cat(named_set("e", uniform(rng, 1, 6)));
        FinCat c = random_fincat(rng, 6);
        FinCat d = random_fincat(rng, 6);
        CatFunctor f = random_functor_to_discrete(rng, c, e);
        CatFunctor g = random_functor_to_discrete(rng, d, e);
        if (!quotient_preserves_fiber_product(f, g, q_components))
            out.fail("q, seed " + std::to_string(seed));
        if (!quotient_preserves_fiber_product(f, g, p_isoclasses))
            out.fail("p, seed " + std::to_string(seed));
        ++cases;
    }
    out.detail = std::to_string(cases) + " pairs";
    return out;
}

Outcome nerve_oracle()
{
    Outcome out;
    Rng rng(20'000);
    for (int i = 0; i < 100; ++i) {
        FinCat c = random_fincat(rng, 6);
        for (int k = 0; k <= 4; ++k) {
            FinSet level = nerve_level(c, k);
            const std::size_t expected = k == 0 ? c.objects().size() : fiber_product_count(c, k);
            if (level.size() != expected || level.labels() != chain_labels(c, k))
                out.fail("category " + std::to_string(i) + ", k=" + std::to_string(k));
        }
    }
    out.detail = "100 categories, k <= 4";
    return out;
}

Outcome round_trip()
{
    Outcome out;
    int count = 0;
    for_each_corpus_tower(1, kCorpusCap, [&](std::uint64_t seed, int n, const SurjTower& t) {
        const std::string at = "seed " + std::to_string(seed) + " n=" + std::to_string(n) + " " + describe(t);
        EqrData e = canonicalize_eqr(tower_to_eqr(t));
        NFoldCat x = eqr_to_nfold(e);
        HdCert cert = certify_hd(x);
        // eqr -> cathd -> eqr
        if (!(nfold_to_eqr(x, cert) == e))
            out.fail("eqr round trip, " + at);
        // cathd -> eqr -> cathd
        if (!(eqr_to_nfold(nfold_to_eqr(x, cert)) == x))
            out.fail("cathd round trip, " + at);
        ++count;
    });
    out.detail = std::to_string(count) + " towers";
    return out;
}

Outcome hd_certification()
{
    Outcome out;
    int positives = 0, negatives = 0;
    for_each_corpus_tower(1, kCorpusCap, [&](std::uint64_t seed, int n, const SurjTower& t) {
        const std::string at = "seed " + std::to_string(seed) + " n=" + std::to_string(n);
        NFoldCat x = tower_nfold(t);
        if (!is_hd(x))
            out.fail("tower rejected, " + at);
        ++positives;
        for (Mutation m : {Mutation::ArrowInFirstAxis, Mutation::ArrowInLastAxis}) {
            const int axis = m == Mutation::ArrowInFirstAxis ? 0 : n - 1;
            HdResult r = is_hd(coproduct(x, arrow_along(n, axis)));
            if (r || r.failure->clause.empty() || r.failure->location.empty())
                out.fail("arrow along axis " + std::to_string(axis) + " accepted or unlocated, " + at);
            ++negatives;
        }
        try {
            promote(duplicate_top_element(x));
            out.fail("Segal corruption accepted, " + at);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SegalFailure || e.location().empty())
                out.fail("Segal corruption reported as " + std::string(to_string(e.kind())) + ", " + at);
        }
        ++negatives;
    });
    out.detail = std::to_string(positives) + " accepted, " + std::to_string(negatives) + " mutations rejected";
    return out;
}

Outcome equivalence_deciders()
{
    Outcome out;
    int equivalences = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        Rng rng(30'000 + seed);
        const int n = static_cast<int>(1 + seed % 3);
        SurjTower dom = corpus_tower(1 + seed % kCorpusSeeds, n);
        SurjTower cod = tower_with_top(rng, n, dom.sets.back().size(), kCorpusCap);
        TowerMorphism h = random_tower_morphism(rng, dom, cod, coin(rng));
        NFoldMap f = tower_map_to_nfold(dom, cod, h);
        HdCert cd = certify_hd(f.dom, HdOptions{false});
        HdCert cc = certify_hd(f.cod, HdOptions{false});
        const bool recursive = is_n_equivalence(f, cd, cc);
        const bool via_d = is_n_equivalence_via_discretization(f, cd, cc);
        if (recursive != via_d)
            out.fail("deciders disagree, seed " + std::to_string(seed));
        if (recursive != is_bijective(h.maps.back(), cod.sets.back().size()))
            out.fail("decision differs from top bijectivity, seed " + std::to_string(seed));
        equivalences += recursive;

        // gamma<n> : X -> X^d is an n-equivalence.
        DiscretizationData d = discretize(f.dom, cd);
        HdCert cxd = certify_hd(d.xd, HdOptions{false});
        if (!is_n_equivalence(d.gamma, cd, cxd) || !is_n_equivalence_via_discretization(d.gamma, cd, cxd))
            out.fail("gamma rejected, seed " + std::to_string(seed));
    }

    int triples = 0, closed = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Rng rng(40'000 + seed);
        const int n = static_cast<int>(1 + seed % 3);
        SurjTower a = corpus_tower(seed, n);
        SurjTower b = tower_with_top(rng, n, a.sets.back().size(), kCorpusCap);
        SurjTower c = tower_with_top(rng, n, a.sets.back().size(), kCorpusCap);
        NFoldMap f = tower_map_to_nfold(a, b, random_tower_morphism(rng, a, b, coin(rng, 0.7)));
        NFoldMap g = tower_map_to_nfold(b, c, random_tower_morphism(rng, b, c, coin(rng, 0.7)));
        NFoldMap gf = compose(g, f);
        HdCert ca = certify_hd(f.dom, HdOptions{false});
        HdCert cb = certify_hd(f.cod, HdOptions{false});
        HdCert cc = certify_hd(g.cod, HdOptions{false});
        const bool ef = is_n_equivalence(f, ca, cb);
        const bool eg = is_n_equivalence(g, cb, cc);
        const bool egf = is_n_equivalence(gf, ca, cc);
        if (egf != is_n_equivalence_via_discretization(gf, ca, cc))
            out.fail("deciders disagree on a composite, seed " + std::to_string(seed));
        if ((ef && eg && !egf) || (ef && egf && !eg) || (eg && egf && !ef))
            out.fail("2-out-of-3, seed " + std::to_string(seed));
        closed += ef + eg + egf >= 2;
        ++triples;
    }
    out.detail = "200 maps (" + std::to_string(equivalences) + " equivalences), " + std::to_string(triples) +
                 " triples (" + std::to_string(closed) + " with two equivalences)";
    return out;
}

Outcome induced_segal()
{
    Outcome out;
    int objects = 0;
    for_each_corpus_tower(2, kCorpusCap, [&](std::uint64_t seed, int n, const SurjTower& t) {
        NFoldCat x = tower_nfold(t);
        HdCert cert = certify_hd(x, HdOptions{false});
        for (int s = 2; s <= 3; ++s) {
            SegalEquivReport r = check_induced_segal_equiv(x, cert, s);
            if (!r.ok())
                out.fail("s=" + std::to_string(s) + ", seed " + std::to_string(seed) + " n=" + std::to_string(n) +
                         (r.discretization_identity ? "" : " (discretization identity)"));
        }
        ++objects;
    });
    out.detail = std::to_string(objects) + " objects, s in {2,3}";
    return out;
}

// A map X -> Z to a discrete base factoring through the discretization.
NFoldMap map_to_base(Rng& rng, const NFoldCat& x, const DiscretizationData& d, const NFoldCat& z)
{
    IndexMap pick(d.underlying.size());
    for (auto& v : pick)
        v = static_cast<Index>(uniform(rng, 0, underlying(z).size() - 1));
    NFoldMap f{x, z, {}};
    for (std::size_t c = 0; c < x.size(); ++c) {
        IndexMap m;
        for (Index e = 0; e < x.cell(c).size(); ++e)
            m.push_back(pick[discrete_class(d, c, e)]);
        f.maps.push_back(std::move(m));
    }
    return f;
}

Outcome closure()
{
    constexpr std::size_t kCap = 200;
    Outcome out;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Rng rng(50'000 + seed);
        const int n = static_cast<int>(1 + seed % 3);
        NFoldCat x = tower_nfold(corpus_tower(seed, n, kCap));
        NFoldCat y = tower_nfold(corpus_tower(kCorpusSeeds + 1 - seed, n, kCap));
        const std::string at = "seed " + std::to_string(seed);
        try {
            for (ClosureOp op : {ClosureOp::Coproduct, ClosureOp::Product})
                if (!hd_closure(op, x, y).discretization_identity)
                    out.fail(std::string(op == ClosureOp::Coproduct ? "coproduct" : "product") + ", " + at);

            NFoldCat z = discrete_nfold(named_set("z", uniform(rng, 1, 3)), n);
            DiscretizationData dx = discretize(x, certify_hd(x, HdOptions{false}));
            DiscretizationData dy = discretize(y, certify_hd(y, HdOptions{false}));
            NFoldMap f = map_to_base(rng, x, dx, z);
            NFoldMap g = map_to_base(rng, y, dy, z);
            ClosureResult pb = hd_closure(ClosureOp::Pullback, f, g);
            if (!pb.discretization_identity)
                out.fail("pullback, " + at);

            // Independent count of X^d x_{Z^d} Y^d: pairs of classes over the
            // same point, read off the object cells.
            std::set<std::pair<Index, Index>> pairs;
            std::map<Index, Index> fx, gy;
            for (Index e = 0; e < x.cell(0).size(); ++e)
                fx[discrete_class(dx, 0, e)] = f.maps[0][e];
            for (Index e = 0; e < y.cell(0).size(); ++e)
                gy[discrete_class(dy, 0, e)] = g.maps[0][e];
            for (auto [a, za] : fx)
                for (auto [b, zb] : gy)
                    if (za == zb)
                        pairs.emplace(a, b);
            DiscretizationData dp = discretize(pb.object, pb.cert);
            if (dp.underlying.size() != pairs.size())
                out.fail("pullback discretization size, " + at);
        } catch (const Error& e) {
            out.fail(std::string(to_string(e.kind())) + ", " + at);
        }
    }
    out.detail = "100 cases x {coproduct, product, pullback}";
    return out;
}

Outcome zero_type()
{
    Outcome out;
    int objects = 0;
    for_each_corpus_tower(1, kCorpusCap, [&](std::uint64_t seed, int n, const SurjTower& t) {
        NFoldCat x = tower_nfold(t);
        ZeroTypeReport r = verify_zero_type(x, certify_hd(x, HdOptions{false}));
        if (!r.pi0_bijection || r.pi0_size != t.sets.back().size() || !r.h1.trivial())
            out.fail("seed " + std::to_string(seed) + " n=" + std::to_string(n));
        ++objects;
    });
    Homology1 control = h1(diag_classifying(nerve_nfold(z2()), 2));
    if (control.free_rank != 0 || control.torsion != std::vector<BigInt>{2})
        out.fail("Z/2 control");
    out.detail = std::to_string(objects) + " objects; Z/2 control H1 = Z/2";
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance suite"};
    std::vector<int> only;
    app.add_option("--only", only, "Run only these criteria")->check(CLI::Range(1, 8));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "q/p preserve fiber products over discrete bases", 10, quotient_preservation},
        {2, "nerve levels match the chain oracle", 10, nerve_oracle},
        {3, "eqr/cathd round trips are identities", 60, round_trip},
        {4, "hd certification and mutation rejection", 60, hd_certification},
        {5, "equivalence deciders agree; gamma; 2-out-of-3", 60, equivalence_deciders},
        {6, "induced Segal maps are equivalences", 60, induced_segal},
        {7, "closure under coproduct, product, pullback", 30, closure},
        {8, "0-type checks and Z/2 control", 30, zero_type},
    };

    bool all = true;
    for (const Criterion& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end())
            continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.budget_seconds)
            o.fail("over budget");
        all = all && o.ok;
        std::printf("[%s] %d %s: %s; %.2f s of %.0f s%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), seconds, c.budget_seconds, o.ok ? "" : "; first failure: ",
                    o.first_failure.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
