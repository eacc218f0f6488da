#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "spatialgraph/core.hpp"
#include "spatialgraph/distributions.hpp"
#include "spatialgraph/weight_table.hpp"

namespace spatialgraph::oracle {

// A terminal branch of the sequential process: the ordered edge list
// (0-indexed, i < j) and whether it ended by exhaustion before m edges.
struct RunOutcome {
  std::vector<std::pair<int, int>> edges;
  bool failed = false;

  friend auto operator<=>(const RunOutcome&, const RunOutcome&) = default;
};

using RunDistribution = std::map<RunOutcome, long double>;

// Exhaustive expansion of the sequential edge law on a tiny instance.
// Requires n <= 5 and m <= 6.
RunDistribution enumerate_run_distribution(const DegreeSequence& degrees,
                                           const WeightTable& weights,
                                           const TargetSpec& target,
                                           const ReferenceDensity& reference,
                                           bool degree_correction = true);

long double total_mass(const RunDistribution& dist);

// Collapses orderings: probability of each final edge set (sorted pairs).
std::map<std::vector<std::pair<int, int>>, long double> edge_set_distribution(
    const RunDistribution& dist);

struct Atom {
  double value;
  double probability;
};

// P(X_k = x | I != k) for iid X_i with the given discrete law, where
// P(I = i | X) = c_i X_i / sum_j c_j X_j. `exact` comes from Bayes over all
// atom tuples, `formula` from the closed form with its two expectations.
struct ConditionalLaw {
  std::vector<double> values;
  std::vector<long double> exact;
  std::vector<long double> formula;
};

ConditionalLaw conditional_weight_law_check(std::size_t n, const std::vector<double>& c,
                                            const std::vector<Atom>& law, std::size_t k);

// Monte Carlo estimate of the same conditional law.
std::vector<double> conditional_weight_law_monte_carlo(std::size_t n, const std::vector<double>& c,
                                                       const std::vector<Atom>& law,
                                                       std::size_t k, std::size_t samples,
                                                       std::uint64_t seed);

}  // namespace spatialgraph::oracle
