#include "hdcat/generate.hpp"

#include <algorithm>
#include <numeric>

#include "hdcat/error.hpp"

namespace hdcat {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

FinSet level_set(int level, std::size_t size)
{
    std::vector<std::string> labels;
    const char letter = static_cast<char>('a' + level);
    for (std::size_t i = 0; i < size; ++i)
        labels.push_back(std::string(1, letter) + std::to_string(i));
    return FinSet::from(std::move(labels));
}

IndexMap random_surjection(std::mt19937_64& rng, std::size_t from, std::size_t to)
{
    std::vector<Index> order(from);
    std::iota(order.begin(), order.end(), Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    IndexMap m(from);
    for (std::size_t i = 0; i < from; ++i)
        m[order[i]] = static_cast<Index>(i < to ? i : uniform(rng, 0, to - 1));
    return m;
}

}  // namespace

SurjTower random_tower(std::mt19937_64& rng, const TowerSpec& spec)
{
    if (spec.n < 0 || spec.n > kMaxTowerLength)
        throw Error(ErrorKind::SizeExceeded,
                    "tower length " + std::to_string(spec.n) + " exceeds the limit " + std::to_string(kMaxTowerLength));
    if (spec.max_set_size < 1)
        throw Error(ErrorKind::InvalidArgument, "sets need at least one element");
    for (int attempt = 0; attempt < spec.attempts; ++attempt) {
        SurjTower t;
        std::size_t size = uniform(rng, 1, spec.max_set_size);
        t.sets.push_back(level_set(0, size));
        for (int i = 1; i <= spec.n; ++i) {
            std::size_t next = uniform(rng, 1, size);
            t.maps.push_back(random_surjection(rng, size, next));
            t.sets.push_back(level_set(i, next));
            size = next;
        }
        if (tower_stored_size(t) <= static_cast<double>(spec.max_elements))
            return t;
    }
    throw Error(ErrorKind::SizeExceeded, "no tower within " + std::to_string(spec.max_elements) + " elements after " +
                                             std::to_string(spec.attempts) + " draws");
}

SurjTower random_tower(std::uint64_t seed, const TowerSpec& spec)
{
    std::mt19937_64 rng(seed);
    return random_tower(rng, spec);
}

TowerMorphism random_tower_morphism(std::mt19937_64& rng, const SurjTower& dom, const SurjTower& cod, bool bijective_top)
{
    const int n = dom.n();
    if (cod.n() != n)
        throw Error(ErrorKind::InvalidArgument, "towers have different lengths");
    TowerMorphism h;
    h.maps.resize(n + 1);
    const std::size_t top = dom.sets[n].size();
    const std::size_t top_cod = cod.sets[n].size();
    IndexMap& hn = h.maps[n];
    if (bijective_top && top == top_cod) {
        hn.resize(top);
        std::iota(hn.begin(), hn.end(), Index{0});
        std::shuffle(hn.begin(), hn.end(), rng);
    } else {
        for (std::size_t x = 0; x < top; ++x)
            hn.push_back(static_cast<Index>(uniform(rng, 0, top_cod - 1)));
    }
    for (int i = n - 1; i >= 0; --i) {
        std::vector<std::vector<Index>> fibers(cod.sets[i + 1].size());
        for (Index y = 0; y < cod.sets[i].size(); ++y)
            fibers[cod.maps[i][y]].push_back(y);
        for (Index x = 0; x < dom.sets[i].size(); ++x) {
            const auto& options = fibers[h.maps[i + 1][dom.maps[i][x]]];
            h.maps[i].push_back(options[uniform(rng, 0, options.size() - 1)]);
        }
    }
    h.check(dom, cod);
    return h;
}

NFoldCat arrow_along(int n, int axis)
{
    if (n < 1 || axis < 0 || axis >= n)
        throw Error(ErrorKind::InvalidArgument, "arrow axis out of range");
    RawCategory raw{{"0", "1"}, {{"u", "0", "1"}}, {}};
    NFoldCat x = nerve_nfold(validate_fincat(raw));
    for (int i = 1; i < n; ++i)
        x = discrete_inclusion(x);
    // The arrow sits on axis 0; rotate it to `axis`.
    std::vector<int> sigma(n);
    for (int a = 0; a < n; ++a)
        sigma[a] = a == 0 ? axis : (a <= axis ? a - 1 : a);
    return promote(permute_axes(x.carrier(), sigma));
}

TruncMSSet duplicate_top_element(const NFoldCat& x, Index element)
{
    const int n = x.n();
    if (n < 1)
        throw Error(ErrorKind::InvalidArgument, "duplication needs n >= 1");
    TruncMSSet y = x.carrier();
    const std::size_t top = y.size() - 1;
    if (element >= y.cells[top].size())
        throw Error(ErrorKind::InvalidArgument, "top cell has no such element");
    // The top cell has level 2 everywhere, so only faces leave it.
    std::vector<std::string> labels = y.cells[top].labels();
    labels.push_back("dup:" + labels[element]);
    auto [set, perm] = FinSet::sorted(std::move(labels));
    for (int a = 0; a < n; ++a)
        for (auto& face : y.faces[top][a]) {
            IndexMap moved(face.size() + 1);
            for (Index e = 0; e < face.size(); ++e)
                moved[perm[e]] = face[e];
            moved[perm.back()] = face[element];
            face = std::move(moved);
        }
    for (std::size_t c = 0; c < top; ++c)
        for (int a = 0; a < n; ++a)
            if (c + axis_stride(a) == top)
                for (auto& d : y.degens[c][a])
                    for (Index& v : d)
                        v = perm[v];
    y.cells[top] = std::move(set);
    return y;
}

}  // namespace hdcat
