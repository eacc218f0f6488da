#pragma once

#include "spatialgraph/distributions.hpp"
#include "spatialgraph/weight_table.hpp"

namespace spatialgraph::testing {

// Every pair at length 0.5 under f = g = uniform[0, 1], so f/g = 1.
struct FlatInstance {
  WeightTable weights;
  TargetSpec target = make_uniform(0.0, 1.0);
  ReferenceDensity reference = ReferenceDensity::from_target(make_uniform(0.0, 1.0));

  explicit FlatInstance(std::size_t n)
      : weights(WeightTable::from_upper_triangle(n, std::vector<double>(n * (n - 1) / 2, 0.5))) {}
};

}  // namespace spatialgraph::testing
