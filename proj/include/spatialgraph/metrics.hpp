#pragma once

#include <span>
#include <vector>

#include "spatialgraph/distributions.hpp"
#include "spatialgraph/sampler.hpp"

namespace spatialgraph {

// Uniform probability measure on a multiset of edge lengths, kept sorted.
class EmpiricalLaw {
 public:
  explicit EmpiricalLaw(std::vector<double> atoms);

  std::span<const double> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double mass() const { return 1.0 / static_cast<double>(atoms_.size()); }

 private:
  std::vector<double> atoms_;
};

EmpiricalLaw empirical_law(const GraphSample& sample);
EmpiricalLaw empirical_law(std::span<const PlacedEdge> edges);

// W1 between two empirical laws: integral of |F_a - F_b| over the line.
double w1_empirical_empirical(const EmpiricalLaw& a, const EmpiricalLaw& b);

// W1 between an empirical law and a target law, by adaptive Gauss–Legendre
// quadrature of |F_emp - F| between consecutive atoms.
double w1_empirical_target(const EmpiricalLaw& a, const TargetSpec& target);

}  // namespace spatialgraph
