#include "hdcat/multisimp.hpp"

#include <charconv>
#include <unordered_map>

#include "hdcat/error.hpp"

namespace hdcat {

std::size_t cell_count(int n)
{
    std::size_t c = 1;
    for (int a = 0; a < n; ++a)
        c *= 3;
    return c;
}

std::size_t axis_stride(int axis)
{
    return cell_count(axis);
}

std::size_t insert_axis(std::size_t id, int axis, int level)
{
    std::size_t st = axis_stride(axis);
    return id % st + st * static_cast<std::size_t>(level) + (id / st) * st * 3;
}

std::size_t cell_id(std::span<const int> k)
{
    std::size_t id = 0;
    for (std::size_t a = k.size(); a-- > 0;)
        id = id * 3 + static_cast<std::size_t>(k[a]);
    return id;
}

MultiIndex cell_index(std::size_t id, int n)
{
    MultiIndex k(n);
    for (int a = 0; a < n; ++a) {
        k[a] = static_cast<int>(id % 3);
        id /= 3;
    }
    return k;
}

std::string index_key(std::span<const int> k)
{
    std::string out;
    for (std::size_t a = 0; a < k.size(); ++a) {
        if (a)
            out.push_back(',');
        out += std::to_string(k[a]);
    }
    return out;
}

MultiIndex parse_index_key(std::string_view key, int n)
{
    MultiIndex k;
    if (n == 0) {
        if (!key.empty())
            throw Error(ErrorKind::ParseError, "index '" + std::string(key) + "' has too many entries");
        return k;
    }
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = key.find(',', pos);
        std::string_view part = key.substr(pos, comma == std::string_view::npos ? key.size() - pos : comma - pos);
        int value = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc() || ptr != part.data() + part.size() || value < 0)
            throw Error(ErrorKind::ParseError, "bad multi-index '" + std::string(key) + "'");
        k.push_back(value);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    if (static_cast<int>(k.size()) != n)
        throw Error(ErrorKind::ParseError,
                    "multi-index '" + std::string(key) + "' should have " + std::to_string(n) + " entries");
    return k;
}

std::size_t TruncMSSet::total_elements() const
{
    std::size_t total = 0;
    for (const auto& c : cells)
        total += c.size();
    return total;
}

namespace {

template <class Maps>
void shape_maps(Maps& maps, int n)
{
    std::size_t cells = cell_count(n);
    maps.assign(cells, {});
    for (std::size_t c = 0; c < cells; ++c)
        maps[c].assign(n, {});
}

void shape_all(int n, std::vector<std::vector<std::vector<IndexMap>>>& faces,
               std::vector<std::vector<std::vector<IndexMap>>>& degens)
{
    shape_maps(faces, n);
    shape_maps(degens, n);
    for (std::size_t c = 0; c < cell_count(n); ++c) {
        for (int a = 0; a < n; ++a) {
            int k = level_of(c, a);
            if (k >= 1)
                faces[c][a].assign(k + 1, {});
            if (k <= 1)
                degens[c][a].assign(k + 1, {});
        }
    }
}

std::string where(int axis, std::size_t cell, int n)
{
    return "axis=" + std::to_string(axis) + " at=" + index_key(cell_index(cell, n));
}

// Compares two maps out of cell `cell`; reports the first disagreeing element.
void require_equal(const TruncMSSet& x, std::size_t cell, const IndexMap& lhs, const IndexMap& rhs, int axis,
                   const std::string& relation)
{
    for (Index e = 0; e < lhs.size(); ++e) {
        if (lhs[e] != rhs[e])
            throw Error(ErrorKind::IdentityViolation,
                        relation + " fails on element '" + x.cells[cell][e] + "'",
                        where(axis, cell, x.n) + " relation=" + relation + " witness=" + x.cells[cell][e]);
    }
}

void require_identity(const TruncMSSet& x, std::size_t cell, const IndexMap& m, int axis, const std::string& relation)
{
    require_equal(x, cell, m, identity_map(m.size()), axis, relation);
}

std::string op_name(char kind, int i)
{
    return std::string(1, kind) + std::to_string(i);
}

}  // namespace

MssBuilder::MssBuilder(int n_) : n(n_), labels(cell_count(n_))
{
    shape_all(n, faces, degens);
}

TruncMSSet MssBuilder::build(std::vector<IndexMap>* perms)
{
    TruncMSSet x;
    x.n = n;
    std::size_t cells = cell_count(n);
    std::vector<IndexMap> perm(cells);
    x.cells.resize(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        auto [set, p] = FinSet::sorted(std::move(labels[c]));
        x.cells[c] = std::move(set);
        perm[c] = std::move(p);
    }
    shape_all(n, x.faces, x.degens);
    auto transport = [&](const IndexMap& m, std::size_t from, std::size_t to) {
        if (m.size() != perm[from].size())
            throw Error(ErrorKind::MissingCell, "structure map missing or of wrong size", where(0, from, n));
        IndexMap out(m.size());
        for (Index e = 0; e < m.size(); ++e)
            out[perm[from][e]] = perm[to][m[e]];
        return out;
    };
    for (std::size_t c = 0; c < cells; ++c) {
        for (int a = 0; a < n; ++a) {
            for (std::size_t i = 0; i < faces[c][a].size(); ++i)
                x.faces[c][a][i] = transport(faces[c][a][i], c, c - axis_stride(a));
            for (std::size_t i = 0; i < degens[c][a].size(); ++i)
                x.degens[c][a][i] = transport(degens[c][a][i], c, c + axis_stride(a));
        }
    }
    if (perms)
        *perms = std::move(perm);
    return x;
}

void check_mss(const TruncMSSet& x)
{
    const int n = x.n;
    const std::size_t cells = cell_count(n);
    if (n < 0 || x.cells.size() != cells || x.faces.size() != cells || x.degens.size() != cells)
        throw Error(ErrorKind::MissingCell, "carrier does not have 3^n cells");

    for (std::size_t c = 0; c < cells; ++c) {
        if (x.faces[c].size() != static_cast<std::size_t>(n) || x.degens[c].size() != static_cast<std::size_t>(n))
            throw Error(ErrorKind::MissingCell, "structure maps missing", "at=" + index_key(cell_index(c, n)));
        for (int a = 0; a < n; ++a) {
            int k = level_of(c, a);
            std::size_t nf = k >= 1 ? k + 1 : 0;
            std::size_t nd = k <= 1 ? k + 1 : 0;
            if (x.faces[c][a].size() != nf || x.degens[c][a].size() != nd)
                throw Error(ErrorKind::MissingCell, "wrong number of structure maps", where(a, c, n));
            auto check_map = [&](const IndexMap& m, std::size_t to, char kind, int i) {
                if (m.size() != x.cells[c].size())
                    throw Error(ErrorKind::MissingCell, "map " + op_name(kind, i) + " is missing or incomplete",
                                where(a, c, n) + " map=" + op_name(kind, i));
                for (Index v : m)
                    if (v >= x.cells[to].size())
                        throw Error(ErrorKind::InvalidMap, "map " + op_name(kind, i) + " leaves its target cell",
                                    where(a, c, n) + " map=" + op_name(kind, i));
            };
            for (std::size_t i = 0; i < nf; ++i)
                check_map(x.faces[c][a][i], c - axis_stride(a), 'd', static_cast<int>(i));
            for (std::size_t i = 0; i < nd; ++i)
                check_map(x.degens[c][a][i], c + axis_stride(a), 's', static_cast<int>(i));
        }
    }

    for (std::size_t c = 0; c < cells; ++c) {
        for (int a = 0; a < n; ++a) {
            const std::size_t st = axis_stride(a);
            const int k = level_of(c, a);
            auto d = [&](std::size_t at, int i) -> const IndexMap& { return x.faces[at][a][i]; };
            auto s = [&](std::size_t at, int i) -> const IndexMap& { return x.degens[at][a][i]; };
            if (k == 2) {
                for (int j = 1; j <= 2; ++j)
                    for (int i = 0; i < j; ++i)
                        require_equal(x, c, compose_maps(d(c - st, i), d(c, j)), compose_maps(d(c - st, j - 1), d(c, i)),
                                      a, op_name('d', i) + op_name('d', j) + "=" + op_name('d', j - 1) + op_name('d', i));
            }
            if (k == 0) {
                require_equal(x, c, compose_maps(s(c + st, 0), s(c, 0)), compose_maps(s(c + st, 1), s(c, 0)), a,
                              "s0s0=s1s0");
                require_identity(x, c, compose_maps(d(c + st, 0), s(c, 0)), a, "d0s0=id");
                require_identity(x, c, compose_maps(d(c + st, 1), s(c, 0)), a, "d1s0=id");
            }
            if (k == 1) {
                require_identity(x, c, compose_maps(d(c + st, 0), s(c, 0)), a, "d0s0=id");
                require_identity(x, c, compose_maps(d(c + st, 1), s(c, 0)), a, "d1s0=id");
                require_equal(x, c, compose_maps(d(c + st, 2), s(c, 0)), compose_maps(s(c - st, 0), d(c, 1)), a,
                              "d2s0=s0d1");
                require_equal(x, c, compose_maps(d(c + st, 0), s(c, 1)), compose_maps(s(c - st, 0), d(c, 0)), a,
                              "d0s1=s0d0");
                require_identity(x, c, compose_maps(d(c + st, 1), s(c, 1)), a, "d1s1=id");
                require_identity(x, c, compose_maps(d(c + st, 2), s(c, 1)), a, "d2s1=id");
            }
        }
    }

    // Cross-axis commutation of every pair of operators.
    struct Op {
        char kind;
        int i;
        std::ptrdiff_t shift;
    };
    auto ops_at = [&](std::size_t c, int a) {
        std::vector<Op> ops;
        const auto st = static_cast<std::ptrdiff_t>(axis_stride(a));
        for (std::size_t i = 0; i < x.faces[c][a].size(); ++i)
            ops.push_back({'d', static_cast<int>(i), -st});
        for (std::size_t i = 0; i < x.degens[c][a].size(); ++i)
            ops.push_back({'s', static_cast<int>(i), st});
        return ops;
    };
    auto map_of = [&](std::size_t c, int a, const Op& op) -> const IndexMap& {
        return op.kind == 'd' ? x.faces[c][a][op.i] : x.degens[c][a][op.i];
    };
    for (std::size_t c = 0; c < cells; ++c) {
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                for (const Op& alpha : ops_at(c, a)) {
                    for (const Op& beta : ops_at(c, b)) {
                        std::size_t ca = c + alpha.shift;
                        std::size_t cb = c + beta.shift;
                        const IndexMap lhs = compose_maps(map_of(ca, b, beta), map_of(c, a, alpha));
                        const IndexMap rhs = compose_maps(map_of(cb, a, alpha), map_of(c, b, beta));
                        require_equal(x, c, lhs, rhs, a,
                                      op_name(alpha.kind, alpha.i) + "@" + std::to_string(a) + " commutes with " +
                                          op_name(beta.kind, beta.i) + "@" + std::to_string(b));
                    }
                }
            }
        }
    }
}

TruncMSSet validate_mss(const RawMSS& raw)
{
    if (raw.n < 0)
        throw Error(ErrorKind::ParseError, "negative dimension");
    const int n = raw.n;
    const std::size_t cells = cell_count(n);
    MssBuilder b(n);
    std::vector<bool> seen(cells, false);
    for (const auto& [key, elems] : raw.cells) {
        MultiIndex k = parse_index_key(key, n);
        for (int v : k)
            if (v > kStoredLevel)
                throw Error(ErrorKind::ParseError, "cell index '" + key + "' exceeds the stored level");
        std::size_t c = cell_id(k);
        seen[c] = true;
        b.labels[c] = elems;
    }
    for (std::size_t c = 0; c < cells; ++c)
        if (!seen[c])
            throw Error(ErrorKind::MissingCell, "cell " + index_key(cell_index(c, n)) + " is missing",
                        "at=" + index_key(cell_index(c, n)));
    // Sort first so that maps can be resolved by label.
    std::vector<FinSet> sets(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        sets[c] = FinSet::from(b.labels[c]);
        b.labels[c] = sets[c].labels();
    }

    auto place = [&](const RawMSS::Map& m, bool face) {
        if (m.axis < 0 || m.axis >= n)
            throw Error(ErrorKind::ParseError, "map axis " + std::to_string(m.axis) + " out of range");
        MultiIndex k = parse_index_key(m.at, n);
        for (int v : k)
            if (v > kStoredLevel)
                throw Error(ErrorKind::ParseError, "map index '" + m.at + "' exceeds the stored level");
        std::size_t c = cell_id(k);
        int lvl = k[m.axis];
        bool defined = face ? (lvl >= 1 && m.i >= 0 && m.i <= lvl) : (lvl <= 1 && m.i >= 0 && m.i <= lvl);
        std::string name = op_name(face ? 'd' : 's', m.i);
        if (!defined)
            throw Error(ErrorKind::ParseError, "map " + name + " is not defined at " + m.at, where(m.axis, c, n));
        std::size_t to = face ? c - axis_stride(m.axis) : c + axis_stride(m.axis);
        IndexMap out(sets[c].size(), static_cast<Index>(-1));
        for (const auto& [from, image] : m.pairs) {
            auto fi = sets[c].find(from);
            auto ti = sets[to].find(image);
            if (!fi || !ti)
                throw Error(ErrorKind::UnknownPoint, "map " + name + " refers to unknown element '" + (fi ? image : from) + "'",
                            where(m.axis, c, n));
            out[*fi] = *ti;
        }
        for (Index e = 0; e < out.size(); ++e)
            if (out[e] == static_cast<Index>(-1))
                throw Error(ErrorKind::MissingCell, "map " + name + " has no value on '" + sets[c][e] + "'",
                            where(m.axis, c, n) + " map=" + name);
        auto& slot = face ? b.faces[c][m.axis][m.i] : b.degens[c][m.axis][m.i];
        slot = std::move(out);
    };
    for (const auto& m : raw.faces)
        place(m, true);
    for (const auto& m : raw.degens)
        place(m, false);
    for (std::size_t c = 0; c < cells; ++c)
        for (int a = 0; a < n; ++a) {
            for (std::size_t i = 0; i < b.faces[c][a].size(); ++i)
                if (b.faces[c][a][i].size() != sets[c].size())
                    throw Error(ErrorKind::MissingCell, "face " + op_name('d', static_cast<int>(i)) + " missing",
                                where(a, c, n));
            for (std::size_t i = 0; i < b.degens[c][a].size(); ++i)
                if (b.degens[c][a][i].size() != sets[c].size())
                    throw Error(ErrorKind::MissingCell, "degeneracy " + op_name('s', static_cast<int>(i)) + " missing",
                                where(a, c, n));
        }
    TruncMSSet x = b.build();
    check_mss(x);
    return x;
}

RawMSS to_raw(const TruncMSSet& x)
{
    RawMSS raw;
    raw.n = x.n;
    for (std::size_t c = 0; c < x.size(); ++c) {
        std::string key = index_key(cell_index(c, x.n));
        raw.cells[key] = x.cells[c].labels();
        for (int a = 0; a < x.n; ++a) {
            auto emit = [&](const IndexMap& m, int i, std::size_t to, std::vector<RawMSS::Map>& out) {
                RawMSS::Map rm{a, i, key, {}};
                rm.pairs.reserve(m.size());
                for (Index e = 0; e < m.size(); ++e)
                    rm.pairs.emplace_back(x.cells[c][e], x.cells[to][m[e]]);
                out.push_back(std::move(rm));
            };
            for (std::size_t i = 0; i < x.faces[c][a].size(); ++i)
                emit(x.faces[c][a][i], static_cast<int>(i), c - axis_stride(a), raw.faces);
            for (std::size_t i = 0; i < x.degens[c][a].size(); ++i)
                emit(x.degens[c][a][i], static_cast<int>(i), c + axis_stride(a), raw.degens);
        }
    }
    return raw;
}

TruncMSSet relabel(const TruncMSSet& x, std::vector<std::vector<std::string>> labels, std::vector<IndexMap>* perms)
{
    MssBuilder b(x.n);
    b.labels = std::move(labels);
    b.faces = x.faces;
    b.degens = x.degens;
    return b.build(perms);
}

std::vector<int> inverse_permutation(std::span<const int> sigma)
{
    std::vector<int> inv(sigma.size());
    for (std::size_t a = 0; a < sigma.size(); ++a)
        inv[sigma[a]] = static_cast<int>(a);
    return inv;
}

TruncMSSet permute_axes(const TruncMSSet& x, std::span<const int> sigma)
{
    const int n = x.n;
    if (static_cast<int>(sigma.size()) != n)
        throw Error(ErrorKind::InvalidArgument, "permutation has the wrong length");
    std::vector<bool> used(n, false);
    for (int v : sigma) {
        if (v < 0 || v >= n || used[v])
            throw Error(ErrorKind::InvalidArgument, "not a permutation");
        used[v] = true;
    }
    TruncMSSet y;
    y.n = n;
    y.cells.resize(x.size());
    shape_all(n, y.faces, y.degens);
    for (std::size_t c = 0; c < x.size(); ++c) {
        MultiIndex k = cell_index(c, n);
        MultiIndex kk(n);
        for (int a = 0; a < n; ++a)
            kk[sigma[a]] = k[a];
        std::size_t cc = cell_id(kk);
        y.cells[cc] = x.cells[c];
        for (int a = 0; a < n; ++a) {
            y.faces[cc][sigma[a]] = x.faces[c][a];
            y.degens[cc][sigma[a]] = x.degens[c][a];
        }
    }
    return y;
}

TruncMSSet apply_levelwise(const SetFunctor& f, const TruncMSSet& x)
{
    TruncMSSet y;
    y.n = x.n;
    y.cells.reserve(x.size());
    for (const auto& c : x.cells)
        y.cells.push_back(f.on_set(c));
    shape_all(x.n, y.faces, y.degens);
    for (std::size_t c = 0; c < x.size(); ++c) {
        for (int a = 0; a < x.n; ++a) {
            for (std::size_t i = 0; i < x.faces[c][a].size(); ++i)
                y.faces[c][a][i] = f.on_map({x.cells[c], x.cells[c - axis_stride(a)], x.faces[c][a][i]});
            for (std::size_t i = 0; i < x.degens[c][a].size(); ++i)
                y.degens[c][a][i] = f.on_map({x.cells[c], x.cells[c + axis_stride(a)], x.degens[c][a][i]});
        }
    }
    try {
        check_mss(y);
    } catch (const Error& e) {
        throw Error(ErrorKind::FunctorialityViolation, std::string("levelwise image is not a carrier: ") + e.what(),
                    e.location());
    }
    return y;
}

TruncMSSet constant_mss(int n, const FinSet& s)
{
    TruncMSSet x;
    x.n = n;
    x.cells.assign(cell_count(n), s);
    shape_all(n, x.faces, x.degens);
    IndexMap id = identity_map(s.size());
    for (auto& per_cell : x.faces)
        for (auto& per_axis : per_cell)
            for (auto& m : per_axis)
                m = id;
    for (auto& per_cell : x.degens)
        for (auto& per_axis : per_cell)
            for (auto& m : per_axis)
                m = id;
    return x;
}

}  // namespace hdcat
