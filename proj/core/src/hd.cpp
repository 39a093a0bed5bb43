#include "hdcat/hd.hpp"

#include <map>

#include "hdcat/error.hpp"
#include "hdcat/multinerve.hpp"

namespace hdcat {

namespace {

constexpr Index kUnset = static_cast<Index>(-1);

// Certificates of derived objects skip the level-3 spot check.
constexpr HdOptions kNested{false};

HdFailure nest(const std::string& prefix, HdFailure inner)
{
    inner.clause = prefix + "/" + inner.clause;
    return inner;
}

std::optional<HdFailure> equivalence_relation_failure(const FinCat& c, const std::string& at)
{
    const auto& mor = c.morphisms();
    for (Index m = 0; m < mor.size(); ++m)
        if (!c.inverse(m))
            return HdFailure{"equivalence_relation", at + "morphism=" + mor[m], "not invertible"};
    for (Index x = 0; x < c.objects().size(); ++x) {
        std::map<Index, Index> seen;
        for (Index m : c.outgoing(x)) {
            auto [it, fresh] = seen.emplace(c.tgt(m), m);
            if (!fresh)
                return HdFailure{"equivalence_relation", at + "morphisms=" + mor[it->second] + "," + mor[m],
                                 "parallel morphisms"};
        }
    }
    return std::nullopt;
}

HdResult check(const NFoldCat& x, const HdOptions& options)
{
    const int n = x.n();
    HdResult r;
    HdCert cert;
    cert.n = n;
    if (n == 0) {
        r.cert = std::move(cert);
        return r;
    }
    if (n == 1) {
        if (auto f = equivalence_relation_failure(category_at(x, {}), "")) {
            r.failure = std::move(f);
            return r;
        }
    } else {
        const int m = n - 1;
        for (std::size_t s = 0; s < cell_count(m); ++s) {
            MultiIndex at = cell_index(s, m);
            FinCat c = category_at(x, at);
            for (Index e = 0; e < c.morphisms().size(); ++e)
                if (!c.inverse(e)) {
                    r.failure = HdFailure{"groupoidal", "axis=" + std::to_string(m) + " at=" + index_key(at) +
                                                            " morphism=" + c.morphisms()[e],
                                          "not invertible"};
                    return r;
                }
        }
        const int top = options.spot_check_level3 ? 3 : kStoredLevel;
        for (int level = 0; level <= top; ++level) {
            const std::string name = "slice(axis=0,level=" + std::to_string(level) + ")";
            NFoldCat sl;
            try {
                sl = slice_at_level(x, 0, level);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::SizeExceeded)
                    throw;
                r.failure = HdFailure{name, e.location(), e.what()};
                return r;
            }
            HdResult sub = check(sl, kNested);
            if (!sub) {
                r.failure = nest(name, std::move(*sub.failure));
                return r;
            }
            if (level <= kStoredLevel)
                cert.slices.push_back(std::move(*sub.cert));
        }
    }
    try {
        PnResult p = p_n(x);
        cert.pn = std::move(p.object);
        cert.classes = std::move(p.classes);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SizeExceeded)
            throw;
        r.failure = HdFailure{"p_n", e.location(), e.what()};
        return r;
    }
    HdResult sub = check(cert.pn, kNested);
    if (!sub) {
        r.failure = nest("p_n", std::move(*sub.failure));
        return r;
    }
    cert.pn_cert.push_back(std::move(*sub.cert));
    r.cert = std::move(cert);
    return r;
}

// Builds the map on classes induced by pairs (class in domain, image).
IndexMap induce_on_classes(std::size_t dom_size, const std::vector<std::pair<Index, Index>>& pairs,
                           const std::string& what)
{
    IndexMap out(dom_size, kUnset);
    for (auto [u, v] : pairs) {
        if (out[u] == kUnset)
            out[u] = v;
        else if (out[u] != v)
            throw Error(ErrorKind::InvalidMap, what + " is not constant on a class");
    }
    for (Index v : out)
        if (v == kUnset)
            throw Error(ErrorKind::InvalidMap, what + " misses a class");
    return out;
}

Fiber fiber_with(const NFoldCat& x, const DiscretizationData& d0, Index a, Index b)
{
    NFoldCat x1 = slice(x, 0, 1);
    auto keep = [&](std::size_t t, Index e) {
        const std::size_t c1 = insert_axis(t, 0, 1);
        const IndexMap& gamma = d0.gamma.maps[t];
        return gamma[x.face(c1, 0, 0)[e]] == a && gamma[x.face(c1, 0, 1)[e]] == b;
    };
    NFoldCat obj = sub_nfold(x1, keep);
    HdCert cert = certify_hd(obj, kNested);
    return {std::move(obj), std::move(cert)};
}

HdCert slice0_cert(const HdCert& cert)
{
    if (cert.n >= 2)
        return cert.slices.at(0);
    return HdCert{};
}

// Restriction of the level-1 part of f to fibers, matched by label.
NFoldMap restrict_to_fibers(const NFoldMap& f, const Fiber& from, const Fiber& to)
{
    NFoldMap g{from.object, to.object, {}};
    for (std::size_t t = 0; t < from.object.size(); ++t) {
        const std::size_t c1 = insert_axis(t, 0, 1);
        IndexMap m;
        m.reserve(from.object.cell(t).size());
        for (const auto& label : from.object.cell(t)) {
            Index image = f.maps[c1][f.dom.cell(c1).at(label)];
            m.push_back(to.object.cell(t).at(f.cod.cell(c1)[image]));
        }
        g.maps.push_back(std::move(m));
    }
    return g;
}

}  // namespace

HdResult is_hd(const NFoldCat& x, const HdOptions& options)
{
    return check(x, options);
}

HdCert certify_hd(const NFoldCat& x, const HdOptions& options)
{
    HdResult r = check(x, options);
    if (!r)
        throw Error(ErrorKind::NotHomotopicallyDiscrete,
                    "clause " + r.failure->clause + " fails: " + r.failure->reason,
                    "clause=" + r.failure->clause + " " + r.failure->location);
    return std::move(*r.cert);
}

PnResult p_n(const NFoldCat& x)
{
    LevelwiseQuotient q = apply_levelwise_quotient(x, [](const FinCat& c) { return p_isoclasses(c); });
    return {promote(std::move(q.carrier)), std::move(q.classes)};
}

NFoldMap p_n_map(const NFoldMap& f, const HdCert& dom, const HdCert& cod)
{
    NFoldMap g{dom.pn, cod.pn, {}};
    for (std::size_t s = 0; s < dom.pn.size(); ++s) {
        std::vector<std::pair<Index, Index>> pairs;
        for (Index o = 0; o < dom.classes[s].size(); ++o)
            pairs.emplace_back(dom.classes[s][o], cod.classes[s][f.maps[s][o]]);
        g.maps.push_back(induce_on_classes(dom.pn.cell(s).size(), pairs, "map on iso classes"));
    }
    g.check();
    return g;
}

NFoldMap gamma_n(const NFoldCat& x, const HdCert& cert)
{
    const int n = x.n();
    if (n < 1)
        throw Error(ErrorKind::InvalidArgument, "gamma_n needs n >= 1");
    NFoldMap g{x, discrete_inclusion(cert.pn), {}};
    const std::size_t top = axis_stride(n - 1);
    for (std::size_t c = 0; c < x.size(); ++c) {
        const IndexMap& cls = cert.classes[c % top];
        IndexMap m(x.cell(c).size());
        for (Index e = 0; e < m.size(); ++e)
            m[e] = cls[source_vertex(x, c, n - 1, e)];
        g.maps.push_back(std::move(m));
    }
    return g;
}

DiscretizationData discretize(const NFoldCat& x, const HdCert& cert)
{
    DiscretizationData d;
    if (x.n() == 0) {
        d.xd = x;
        d.underlying = x.cell(0);
        d.gamma = identity_nfold_map(x);
        return d;
    }
    NFoldMap g = gamma_n(x, cert);
    DiscretizationData sub = discretize(cert.pn, cert.pn_certificate());
    NFoldMap lifted = discrete_inclusion(sub.gamma);
    d.xd = discrete_inclusion(sub.xd);
    d.underlying = sub.underlying;
    d.gamma = compose(lifted, g);
    d.steps.push_back(std::move(g));
    for (const auto& step : sub.steps)
        d.steps.push_back(discrete_inclusion(step));
    return d;
}

Index discrete_class(const DiscretizationData& d, std::size_t id, Index e)
{
    return d.gamma.maps.at(id).at(e);
}

Fiber fiber(const NFoldCat& x, const HdCert& cert, const std::string& a, const std::string& b)
{
    if (x.n() < 1)
        throw Error(ErrorKind::InvalidArgument, "fibers need n >= 1");
    DiscretizationData d0 = discretize(slice(x, 0, 0), slice0_cert(cert));
    return fiber_with(x, d0, d0.underlying.at(a), d0.underlying.at(b));
}

SetMap induced_discrete_map(const NFoldMap& f, const DiscretizationData& dom, const DiscretizationData& cod)
{
    std::vector<std::pair<Index, Index>> pairs;
    for (Index e = 0; e < f.dom.cell(0).size(); ++e)
        pairs.emplace_back(dom.gamma.maps[0][e], cod.gamma.maps[0][f.maps[0][e]]);
    return {dom.underlying, cod.underlying, induce_on_classes(dom.underlying.size(), pairs, "induced discrete map")};
}

bool is_n_equivalence(const NFoldMap& f, const HdCert& dom, const HdCert& cod)
{
    const int n = f.dom.n();
    if (n == 0)
        return is_bijective(f.maps[0], f.cod.cell(0).size());
    if (n == 1)
        return is_cat_equivalence(functor_at(f, {}));
    DiscretizationData dx = discretize(slice(f.dom, 0, 0), dom.slices.at(0));
    DiscretizationData dy = discretize(slice(f.cod, 0, 0), cod.slices.at(0));
    SetMap f0 = induced_discrete_map(slice_map(f, 0, 0), dx, dy);
    const auto sx = static_cast<Index>(dx.underlying.size());
    for (Index a = 0; a < sx; ++a)
        for (Index b = 0; b < sx; ++b) {
            Fiber from = fiber_with(f.dom, dx, a, b);
            Fiber to = fiber_with(f.cod, dy, f0.map[a], f0.map[b]);
            if (!is_n_equivalence(restrict_to_fibers(f, from, to), from.cert, to.cert))
                return false;
        }
    return is_n_equivalence(p_n_map(f, dom, cod), dom.pn_certificate(), cod.pn_certificate());
}

bool is_n_equivalence_via_discretization(const NFoldMap& f, const HdCert& dom, const HdCert& cod)
{
    DiscretizationData dx = discretize(f.dom, dom);
    DiscretizationData dy = discretize(f.cod, cod);
    SetMap fd = induced_discrete_map(f, dx, dy);
    return is_bijective(fd.map, fd.cod.size());
}

SegalEquivReport check_induced_segal_equiv(const NFoldCat& x, const HdCert& cert, int s)
{
    if (x.n() < 2 || s < 2)
        throw Error(ErrorKind::InvalidArgument, "induced Segal maps need n >= 2 and s >= 2");
    SegalEquivReport r;
    r.s = s;
    NFoldCat x0 = slice(x, 0, 0);
    DiscretizationData d0 = discretize(x0, cert.slices.at(0));
    NFoldMap mu = induced_segal_map(x, 0, s, d0.gamma);
    HdCert dom = s <= kStoredLevel ? cert.slices.at(s) : certify_hd(mu.dom, kNested);
    HdCert cod = certify_hd(mu.cod, kNested);
    r.recursive = is_n_equivalence(mu, dom, cod);
    r.via_discretization = is_n_equivalence_via_discretization(mu, dom, cod);

    NFoldCat strict = chain_object(x, 0, 2, identity_nfold_map(x0));
    NFoldCat loose = s == 2 ? mu.cod : chain_object(x, 0, 2, d0.gamma);
    HdCert strict_cert = certify_hd(strict, kNested);
    HdCert loose_cert = s == 2 ? cod : certify_hd(loose, kNested);
    NFoldMap incl = inclusion_map(strict, loose);
    SetMap id = induced_discrete_map(incl, discretize(strict, strict_cert), discretize(loose, loose_cert));
    r.discretization_identity = is_bijective(id.map, id.cod.size());
    return r;
}

ClosureResult hd_closure(ClosureOp op, const NFoldMap& f, const NFoldMap& g)
{
    const NFoldCat& x = f.dom;
    const NFoldCat& y = g.dom;
    DiscretizationData dx = discretize(x, certify_hd(x, kNested));
    DiscretizationData dy = discretize(y, certify_hd(y, kNested));
    const auto nx = static_cast<Index>(dx.underlying.size());
    const auto ny = static_cast<Index>(dy.underlying.size());
    ClosureResult r;
    std::vector<std::pair<Index, Index>> pairs;
    std::size_t expected = 0;
    switch (op) {
    case ClosureOp::Coproduct: {
        r.object = coproduct(x, y);
        // "L." sorts before "R.", and tagging keeps order within each part.
        const auto x0 = static_cast<Index>(x.cell(0).size());
        r.cert = certify_hd(r.object, kNested);
        DiscretizationData dp = discretize(r.object, r.cert);
        for (Index e = 0; e < r.object.cell(0).size(); ++e) {
            Index v = e < x0 ? dx.gamma.maps[0][e] : nx + dy.gamma.maps[0][e - x0];
            pairs.emplace_back(dp.gamma.maps[0][e], v);
        }
        expected = nx + ny;
        IndexMap m = induce_on_classes(dp.underlying.size(), pairs, "coproduct comparison");
        r.discretization_identity = is_bijective(m, expected);
        return r;
    }
    case ClosureOp::Product:
    case ClosureOp::Pullback: {
        Pullback pb = op == ClosureOp::Product ? pullback_over_discrete(to_point(x), to_point(y))
                                               : pullback_over_discrete(f, g);
        r.object = pb.object;
        r.cert = certify_hd(r.object, kNested);
        DiscretizationData dp = discretize(r.object, r.cert);
        // Target: pairs (u, v) of X^d x Y^d over Z^d, numbered u * ny + v.
        std::vector<char> allowed(static_cast<std::size_t>(nx) * ny, 1);
        if (op == ClosureOp::Pullback) {
            const NFoldCat& z = f.cod;
            DiscretizationData dz = discretize(z, certify_hd(z, kNested));
            SetMap fd = induced_discrete_map(f, dx, dz);
            SetMap gd = induced_discrete_map(g, dy, dz);
            for (Index u = 0; u < nx; ++u)
                for (Index v = 0; v < ny; ++v)
                    allowed[static_cast<std::size_t>(u) * ny + v] = fd.map[u] == gd.map[v];
        }
        std::vector<Index> number(allowed.size(), kUnset);
        Index count = 0;
        for (std::size_t i = 0; i < allowed.size(); ++i)
            if (allowed[i])
                number[i] = count++;
        for (Index e = 0; e < r.object.cell(0).size(); ++e) {
            Index u = dx.gamma.maps[0][pb.first.maps[0][e]];
            Index v = dy.gamma.maps[0][pb.second.maps[0][e]];
            pairs.emplace_back(dp.gamma.maps[0][e], number[static_cast<std::size_t>(u) * ny + v]);
        }
        IndexMap m = induce_on_classes(dp.underlying.size(), pairs, "pullback comparison");
        r.discretization_identity = is_bijective(m, count);
        return r;
    }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown closure operation");
}

ClosureResult hd_closure(ClosureOp op, const NFoldCat& x, const NFoldCat& y)
{
    return hd_closure(op, to_point(x), to_point(y));
}

}  // namespace hdcat
