#include "fixtures.hpp"

#include <string>

#include "gen.hpp"

namespace hdtest {

using namespace hdcat;

FinCat e2()
{
    RawCategory raw{{"0", "1"}, {{"s", "0", "1"}, {"t", "1", "0"}}, {}};
    raw.compose = {{"t", "s", "id:0"}, {"s", "t", "id:1"}};
    return validate_fincat(raw);
}

FinCat walking_arrow()
{
    return validate_fincat(RawCategory{{"0", "1"}, {{"u", "0", "1"}}, {}});
}

FinCat z2()
{
    return cyclic_group(2);
}

SetMap abc_to_xy()
{
    FinSet a = FinSet::from({"a", "b", "c"});
    FinSet b = FinSet::from({"x", "y"});
    return {a, b, {0, 0, 1}};
}

SurjTower tower_of_sizes(const std::vector<std::size_t>& sizes)
{
    SurjTower t;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        std::vector<std::string> labels;
        for (std::size_t e = 0; e < sizes[i]; ++e)
            labels.push_back(std::string(1, static_cast<char>('a' + i)) + std::to_string(e));
        t.sets.push_back(FinSet::from(std::move(labels)));
        if (i > 0) {
            IndexMap m(sizes[i - 1]);
            for (std::size_t e = 0; e < m.size(); ++e)
                m[e] = static_cast<Index>(e % sizes[i]);
            t.maps.push_back(std::move(m));
        }
    }
    t.check();
    return t;
}

NFoldCat nerve_of(const FinCat& c)
{
    return nerve_nfold(c);
}

}  // namespace hdtest
