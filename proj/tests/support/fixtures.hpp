#pragma once

#include <hdcat/eqrel.hpp>
#include <hdcat/fincat.hpp>

namespace hdtest {

/// Indiscrete groupoid on {0,1}.
hdcat::FinCat e2();
/// 0 -u-> 1.
hdcat::FinCat walking_arrow();
/// One object with a loop g, g g = id.
hdcat::FinCat z2();

/// f : {a,b,c} -> {x,y} with a,b -> x and c -> y.
hdcat::SetMap abc_to_xy();

/// Tower of the given sizes; each map sends element i to i mod |next|.
hdcat::SurjTower tower_of_sizes(const std::vector<std::size_t>& sizes);

hdcat::NFoldCat nerve_of(const hdcat::FinCat& c);

}  // namespace hdtest
