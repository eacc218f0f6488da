#pragma once

#include <string_view>

#include "spatialgraph/distributions.hpp"
#include "spatialgraph/weight_table.hpp"

namespace spatialgraph {

inline constexpr std::size_t kAutoReferenceBins = 256;

// Histogram of every r_ij on [0, max r_ij].
ReferenceDensity auto_reference(const WeightTable& weights,
                                std::size_t bins = kAutoReferenceBins);

// Analytic torus law when the table comes from a 1- or 2-dimensional cloud
// and the target lives inside [0, 1/2]; otherwise the automatic histogram.
ReferenceDensity default_reference(const TargetSpec& target, const WeightTable& weights);

// `torus-analytic`, `hist:<path>`, `auto`, or empty for the default.
ReferenceDensity parse_reference_spec(std::string_view spec, const TargetSpec& target,
                                      const WeightTable& weights);

}  // namespace spatialgraph
