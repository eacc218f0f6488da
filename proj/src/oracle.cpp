#include "spatialgraph/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spatialgraph/error.hpp"
#include "spatialgraph/random.hpp"

namespace spatialgraph::oracle {

namespace {

struct Expander {
  std::size_t n;
  Degree m;
  std::vector<std::vector<long double>> factor;  // (f/g)(r_ij) * w_ij
  std::vector<Degree> remaining;
  std::vector<std::vector<bool>> used;
  std::vector<std::pair<int, int>> path;
  RunDistribution out;

  void expand(long double p) {
    if (static_cast<Degree>(path.size()) == m) {
      out[RunOutcome{path, false}] += p;
      return;
    }
    long double total = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) total += weight(i, j);
    }
    if (total == 0.0L) {
      out[RunOutcome{path, true}] += p;
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const long double w = weight(i, j);
        if (w == 0.0L) continue;
        used[i][j] = true;
        --remaining[i];
        --remaining[j];
        path.emplace_back(static_cast<int>(i), static_cast<int>(j));
        expand(p * w / total);
        path.pop_back();
        ++remaining[i];
        ++remaining[j];
        used[i][j] = false;
      }
    }
  }

  long double weight(std::size_t i, std::size_t j) const {
    if (used[i][j] || remaining[i] == 0 || remaining[j] == 0) return 0.0L;
    return factor[i][j] * static_cast<long double>(remaining[i]) *
           static_cast<long double>(remaining[j]);
  }
};

// P(I != k | X) with the convention P(I = i | X) = c_i / sum c when all X vanish.
long double not_k(long double ck_x, long double rest, long double c_rest, long double c_total) {
  const long double denom = ck_x + rest;
  if (denom == 0.0L) return c_rest / c_total;
  return rest / denom;
}

void validate_law(std::size_t n, const std::vector<double>& c, const std::vector<Atom>& law,
                  std::size_t k) {
  if (n < 1 || n > 6) throw InputError("conditional law check needs 1 <= n <= 6");
  if (c.size() != n) throw InputError("conditional law check needs one c_i per variable");
  if (k >= n) throw InputError("conditional law check: k out of range");
  if (law.empty() || law.size() > 8) throw InputError("discrete law needs 1..8 atoms");
  if (std::any_of(c.begin(), c.end(), [](double x) { return !(x > 0.0); })) {
    throw InputError("conditional law check needs c_i > 0");
  }
  double mass = 0.0;
  bool positive = false;
  for (const auto& a : law) {
    if (!(a.value >= 0.0) || !(a.probability >= 0.0)) {
      throw InputError("discrete law atoms and probabilities must be nonnegative");
    }
    mass += a.probability;
    positive = positive || (a.value > 0.0 && a.probability > 0.0);
  }
  if (std::abs(mass - 1.0) > 1e-12) throw InputError("discrete law probabilities must sum to 1");
  if (!positive) throw DomainError("discrete law is degenerate: all atoms are zero");
}

}  // namespace

RunDistribution enumerate_run_distribution(const DegreeSequence& degrees,
                                           const WeightTable& weights,
                                           const TargetSpec& target,
                                           const ReferenceDensity& reference,
                                           bool degree_correction) {
  const std::size_t n = degrees.size();
  const Degree m = degrees.edge_count();
  if (n > 5 || m > 6) throw InputError("oracle enumeration limited to n <= 5 and m <= 6");
  if (weights.size() != n) throw InputError("oracle: weight table size mismatch");

  Expander ex{n, m, {}, {degrees.values().begin(), degrees.values().end()}, {}, {}, {}};
  ex.factor.assign(n, std::vector<long double>(n, 0.0L));
  ex.used.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (degrees[i] == 0 || degrees[j] == 0) continue;
      const long double ratio = importance_ratio(target, reference, weights(i, j));
      const long double w =
          degree_correction ? 1.0L - static_cast<long double>(degrees[i] * degrees[j]) /
                                         (4.0L * static_cast<long double>(m))
                            : 1.0L;
      ex.factor[i][j] = ratio * w;
    }
  }
  ex.expand(1.0L);
  return std::move(ex.out);
}

long double total_mass(const RunDistribution& dist) {
  long double s = 0.0L;
  for (const auto& [outcome, p] : dist) s += p;
  return s;
}

std::map<std::vector<std::pair<int, int>>, long double> edge_set_distribution(
    const RunDistribution& dist) {
  std::map<std::vector<std::pair<int, int>>, long double> out;
  for (const auto& [outcome, p] : dist) {
    auto edges = outcome.edges;
    std::sort(edges.begin(), edges.end());
    out[edges] += p;
  }
  return out;
}

ConditionalLaw conditional_weight_law_check(std::size_t n, const std::vector<double>& c,
                                            const std::vector<Atom>& law, std::size_t k) {
  validate_law(n, c, law, k);
  const std::size_t atoms = law.size();
  const long double c_total = std::accumulate(c.begin(), c.end(), 0.0L);
  const long double c_rest = c_total - c[k];

  ConditionalLaw out;
  for (const auto& a : law) out.values.push_back(a.value);

  // Route 1: Bayes over every atom tuple.
  std::vector<long double> joint(atoms, 0.0L);
  std::size_t tuples = 1;
  for (std::size_t i = 0; i < n; ++i) tuples *= atoms;
  std::vector<std::size_t> digit(n);
  for (std::size_t t = 0; t < tuples; ++t) {
    std::size_t rem = t;
    long double p = 1.0L;
    long double rest = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      digit[i] = rem % atoms;
      rem /= atoms;
      p *= law[digit[i]].probability;
      if (i != k) rest += c[i] * static_cast<long double>(law[digit[i]].value);
    }
    joint[digit[k]] += p * not_k(c[k] * static_cast<long double>(law[digit[k]].value), rest,
                                 c_rest, c_total);
  }
  const long double p_not_k = std::accumulate(joint.begin(), joint.end(), 0.0L);
  for (long double j : joint) out.exact.push_back(j / p_not_k);

  // Route 2: E(sum_{i!=k} c_i X_i / sum_j c_j X_j)^{-1}
  //          * E(sum_{i!=k} c_i X_i / (c_k x + sum_{i!=k} c_i X_i)) * g_k(x).
  std::size_t others = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) others *= atoms;
  std::vector<long double> rest_value(others), rest_prob(others);
  for (std::size_t t = 0; t < others; ++t) {
    std::size_t rem = t;
    long double p = 1.0L;
    long double rest = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const std::size_t a = rem % atoms;
      rem /= atoms;
      p *= law[a].probability;
      rest += c[i] * static_cast<long double>(law[a].value);
    }
    rest_value[t] = rest;
    rest_prob[t] = p;
  }
  auto expect_not_k = [&](long double x) {
    long double e = 0.0L;
    for (std::size_t t = 0; t < others; ++t) {
      e += rest_prob[t] * not_k(c[k] * x, rest_value[t], c_rest, c_total);
    }
    return e;
  };
  long double first = 0.0L;
  for (const auto& a : law) first += a.probability * expect_not_k(a.value);
  for (const auto& a : law) {
    out.formula.push_back(expect_not_k(a.value) * a.probability / first);
  }
  return out;
}

std::vector<double> conditional_weight_law_monte_carlo(std::size_t n, const std::vector<double>& c,
                                                       const std::vector<Atom>& law,
                                                       std::size_t k, std::size_t samples,
                                                       std::uint64_t seed) {
  validate_law(n, c, law, k);
  Rng rng = make_stream(seed);
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& a : law) cumulative.push_back(acc += a.probability);

  std::vector<double> hits(law.size(), 0.0);
  std::vector<std::size_t> draw(n);
  std::size_t kept = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = uniform01(rng) * acc;
      draw[i] = static_cast<std::size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      draw[i] = std::min(draw[i], law.size() - 1);
      total += c[i] * law[draw[i]].value;
    }
    std::size_t chosen = 0;
    double u = uniform01(rng);
    if (total > 0.0) {
      u *= total;
      double run = 0.0;
      for (chosen = 0; chosen + 1 < n; ++chosen) {
        run += c[chosen] * law[draw[chosen]].value;
        if (u < run) break;
      }
    } else {
      const double c_total = std::accumulate(c.begin(), c.end(), 0.0);
      u *= c_total;
      double run = 0.0;
      for (chosen = 0; chosen + 1 < n; ++chosen) {
        run += c[chosen];
        if (u < run) break;
      }
    }
    if (chosen == k) continue;
    ++kept;
    hits[draw[k]] += 1.0;
  }
  for (double& h : hits) h = kept ? h / static_cast<double>(kept) : 0.0;
  return hits;
}

}  // namespace spatialgraph::oracle
