#include "spatialgraph/reference.hpp"

#include <algorithm>
#include <string>

#include "spatialgraph/error.hpp"

namespace spatialgraph {

ReferenceDensity auto_reference(const WeightTable& weights, std::size_t bins) {
  const std::size_t n = weights.size();
  if (n < 2) throw InputError("automatic reference needs at least two vertices");
  std::vector<double> lengths;
  lengths.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) lengths.push_back(weights(i, j));
  }
  const double hi = *std::max_element(lengths.begin(), lengths.end());
  return ReferenceDensity(estimate_density_histogram(lengths, bins, 0.0, hi > 0.0 ? hi : 1.0));
}

ReferenceDensity default_reference(const TargetSpec& target, const WeightTable& weights) {
  const PointCloud* cloud = weights.points();
  const Interval I = target.support();
  if (cloud != nullptr && (cloud->dim() == 1 || cloud->dim() == 2) && I.lo >= 0.0 &&
      I.hi <= 0.5) {
    return ReferenceDensity::torus_analytic(cloud->dim());
  }
  return auto_reference(weights);
}

ReferenceDensity parse_reference_spec(std::string_view spec, const TargetSpec& target,
                                      const WeightTable& weights) {
  if (spec.empty()) return default_reference(target, weights);
  if (spec == "auto") return auto_reference(weights);
  if (spec == "torus-analytic") {
    const PointCloud* cloud = weights.points();
    if (cloud == nullptr) {
      throw InputError("torus-analytic reference needs a points file");
    }
    return ReferenceDensity::torus_analytic(cloud->dim());
  }
  if (spec.substr(0, 5) == "hist:") {
    return ReferenceDensity(read_histogram_csv(std::string(spec.substr(5))));
  }
  throw InputError("unknown reference spec '" + std::string(spec) + "'");
}

}  // namespace spatialgraph
