#include "gen.hpp"

#include <functional>
#include <string>

namespace hdtest {

using namespace hdcat;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p)
{
    return std::bernoulli_distribution(p)(rng);
}

namespace {

std::string obj(char prefix, std::size_t i)
{
    return std::string(1, prefix) + std::to_string(i);
}

}  // namespace

FinCat random_preorder(Rng& rng, std::size_t objects)
{
    std::vector<std::vector<char>> le(objects, std::vector<char>(objects, 0));
    for (std::size_t i = 0; i < objects; ++i) {
        le[i][i] = 1;
        for (std::size_t j = 0; j < objects; ++j)
            if (i != j && coin(rng, 0.3))
                le[i][j] = 1;
    }
    for (std::size_t k = 0; k < objects; ++k)
        for (std::size_t i = 0; i < objects; ++i)
            for (std::size_t j = 0; j < objects; ++j)
                if (le[i][k] && le[k][j])
                    le[i][j] = 1;
    auto name = [](std::size_t i, std::size_t j) { return "r" + std::to_string(i) + "-" + std::to_string(j); };
    RawCategory raw;
    for (std::size_t i = 0; i < objects; ++i)
        raw.objects.push_back(obj('o', i));
    for (std::size_t i = 0; i < objects; ++i)
        for (std::size_t j = 0; j < objects; ++j)
            if (i != j && le[i][j])
                raw.morphisms.push_back({name(i, j), obj('o', i), obj('o', j)});
    for (std::size_t i = 0; i < objects; ++i)
        for (std::size_t j = 0; j < objects; ++j)
            for (std::size_t k = 0; k < objects; ++k)
                if (i != j && j != k && le[i][j] && le[j][k])
                    raw.compose.push_back({name(j, k), name(i, j), i == k ? identity_label(obj('o', i)) : name(i, k)});
    return validate_fincat(raw);
}

FinCat random_free_dag(Rng& rng, std::size_t objects)
{
    struct Edge {
        std::string label;
        std::size_t src;
        std::size_t tgt;
    };
    for (;;) {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < objects; ++i)
            for (std::size_t j = i + 1; j < objects; ++j) {
                const std::size_t copies = coin(rng, 0.55) ? 0 : (coin(rng, 0.75) ? 1 : 2);
                for (std::size_t p = 0; p < copies; ++p)
                    edges.push_back({"e" + std::to_string(i) + std::to_string(j) + static_cast<char>('a' + p), i, j});
            }
        // Paths as edge-index sequences.
        std::vector<std::vector<std::size_t>> paths;
        std::function<void(std::vector<std::size_t>&)> extend = [&](std::vector<std::size_t>& path) {
            paths.push_back(path);
            for (std::size_t e = 0; e < edges.size(); ++e)
                if (edges[e].src == edges[path.back()].tgt) {
                    path.push_back(e);
                    extend(path);
                    path.pop_back();
                }
        };
        for (std::size_t e = 0; e < edges.size(); ++e) {
            std::vector<std::size_t> path{e};
            extend(path);
        }
        if (paths.size() > 48)
            continue;
        auto label = [&](const std::vector<std::size_t>& path) {
            std::string s;
            for (std::size_t e : path)
                s += (s.empty() ? "" : ".") + edges[e].label;
            return s;
        };
        RawCategory raw;
        for (std::size_t i = 0; i < objects; ++i)
            raw.objects.push_back(obj('v', i));
        for (const auto& p : paths)
            raw.morphisms.push_back({label(p), obj('v', edges[p.front()].src), obj('v', edges[p.back()].tgt)});
        for (const auto& f : paths)
            for (const auto& g : paths)
                if (edges[g.front()].src == edges[f.back()].tgt) {
                    std::vector<std::size_t> gf = f;
                    gf.insert(gf.end(), g.begin(), g.end());
                    raw.compose.push_back({label(g), label(f), label(gf)});
                }
        return validate_fincat(raw);
    }
}

FinCat cyclic_group(std::size_t k)
{
    RawCategory raw;
    raw.objects = {"*"};
    auto name = [](std::size_t a) { return a == 0 ? identity_label("*") : "g" + std::to_string(a); };
    for (std::size_t a = 1; a < k; ++a)
        raw.morphisms.push_back({name(a), "*", "*"});
    for (std::size_t a = 1; a < k; ++a)
        for (std::size_t b = 1; b < k; ++b)
            raw.compose.push_back({name(a), name(b), name((a + b) % k)});
    return validate_fincat(raw);
}

FinCat indiscrete(std::size_t objects)
{
    RawCategory raw;
    auto name = [](std::size_t i, std::size_t j) { return "u" + std::to_string(i) + "-" + std::to_string(j); };
    for (std::size_t i = 0; i < objects; ++i)
        raw.objects.push_back(obj('i', i));
    for (std::size_t i = 0; i < objects; ++i)
        for (std::size_t j = 0; j < objects; ++j)
            if (i != j)
                raw.morphisms.push_back({name(i, j), obj('i', i), obj('i', j)});
    for (std::size_t i = 0; i < objects; ++i)
        for (std::size_t j = 0; j < objects; ++j)
            for (std::size_t k = 0; k < objects; ++k)
                if (i != j && j != k)
                    raw.compose.push_back({name(j, k), name(i, j), i == k ? identity_label(obj('i', i)) : name(i, k)});
    return validate_fincat(raw);
}

FinSet named_set(const char* prefix, std::size_t size)
{
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < size; ++i)
        labels.push_back(prefix + std::to_string(i));
    return FinSet::from(std::move(labels));
}

namespace {

FinCat random_block(Rng& rng, std::size_t objects)
{
    switch (uniform(rng, 0, 4)) {
    case 0:
        return random_preorder(rng, objects);
    case 1:
        return random_free_dag(rng, objects);
    case 2:
        return objects == 1 ? cyclic_group(uniform(rng, 2, 3)) : indiscrete(objects);
    case 3:
        return discrete_cat(named_set("d", objects));
    default:
        return indiscrete(objects);
    }
}

}  // namespace

FinCat random_fincat(Rng& rng, std::size_t max_objects)
{
    const std::size_t budget = uniform(rng, 1, max_objects);
    if (budget >= 4 && coin(rng, 0.25)) {
        const std::size_t a = uniform(rng, 2, budget / 2);
        return product(random_block(rng, a), random_block(rng, budget / a));
    }
    std::size_t left = budget;
    FinCat c = random_block(rng, uniform(rng, 1, left));
    left -= c.objects().size();
    while (left > 0 && coin(rng, 0.6)) {
        FinCat part = random_block(rng, uniform(rng, 1, left));
        left -= part.objects().size();
        c = coproduct(c, part);
    }
    return c;
}

CatFunctor random_functor_to_discrete(Rng& rng, const FinCat& c, const FinCat& e)
{
    Quotient comps = q_components(c);
    IndexMap pick(comps.classes.size());
    for (auto& v : pick)
        v = static_cast<Index>(uniform(rng, 0, e.objects().size() - 1));
    CatFunctor f{c, e, {}, {}};
    for (Index x = 0; x < c.objects().size(); ++x)
        f.omap.push_back(pick[comps.cls[x]]);
    for (Index m = 0; m < c.morphisms().size(); ++m)
        f.fmap.push_back(e.id(f.omap[c.src(m)]));
    f.check();
    return f;
}

SurjTower corpus_tower(std::uint64_t seed, int n, std::size_t cap)
{
    return random_tower(seed * 4 + static_cast<std::uint64_t>(n), TowerSpec{n, 4, cap});
}

SurjTower tower_with_top(Rng& rng, int n, std::size_t top, std::size_t cap)
{
    SurjTower t;
    for (int attempt = 0; attempt < 64; ++attempt) {
        t = random_tower(rng, TowerSpec{n, 4, cap});
        if (t.sets.back().size() == top)
            return t;
    }
    return t;
}

}  // namespace hdtest
