#include "spatialgraph/sampler.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "spatialgraph/error.hpp"

namespace spatialgraph {

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::complete:
      return "complete";
    case RunStatus::early_stop:
      return "early_stop";
    case RunStatus::failure:
      return "failure";
  }
  return "failure";
}

Sampler::Sampler(const DegreeSequence& degrees, const WeightTable& weights,
                 const TargetSpec& target, const ReferenceDensity& reference,
                 SamplerOptions options)
    : n_(degrees.size()),
      m_(degrees.edge_count()),
      options_(options),
      weights_(&weights),
      degrees_(degrees.values().begin(), degrees.values().end()),
      remaining_(degrees_) {
  if (weights.size() != n_) {
    throw InputError("weight table covers " + std::to_string(weights.size()) +
                     " vertices but the degree sequence has " + std::to_string(n_));
  }
  if (!degrees.graphical()) throw InputError("degree sequence is not graphical");
  const Degree d_max = degrees.max_degree();
  if (options_.degree_correction && d_max * d_max > 4 * m_) {
    throw DomainError("d_max^2 = " + std::to_string(d_max * d_max) + " exceeds 4m = " +
                      std::to_string(4 * m_) + ", so some w_ij would be negative");
  }

  row_start_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) row_start_[i] = i * (2 * n_ - i - 1) / 2;

  const std::size_t pairs = n_ < 2 ? 0 : n_ * (n_ - 1) / 2;
  static_weight_.assign(pairs, 0.0);
  alive_.assign(pairs, 0);
  std::vector<double> leaves(pairs, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (degrees_[i] == 0) {
      ++isolated_;
      continue;
    }
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (degrees_[j] == 0) continue;
      const double ratio = importance_ratio(target, reference, weights(i, j));
      if (ratio == 0.0) continue;
      const double w =
          options_.degree_correction ? pair_degree_factor(degrees_[i], degrees_[j], m_) : 1.0;
      const std::size_t idx = row_start_[i] + (j - i - 1);
      static_weight_[idx] = ratio * w;
      if (static_weight_[idx] > 0.0) {
        alive_[idx] = 1;
        ++alive_count_;
        leaves[idx] = leaf_weight(idx, i, j);
      }
    }
  }
  tree_.rebuild(leaves);
  Z_ = recompute_active_weight();
  for (Degree d : degrees_) remaining_sum_ += d;
}

std::pair<std::size_t, std::size_t> Sampler::pair_of(std::size_t index) const {
  const auto it = std::upper_bound(row_start_.begin(), row_start_.end(), index);
  const auto i = static_cast<std::size_t>(it - row_start_.begin()) - 1;
  return {i, i + 1 + (index - row_start_[i])};
}

double Sampler::leaf_weight(std::size_t index, std::size_t i, std::size_t j) const {
  return static_weight_[index] * static_cast<double>(degrees_[i]) *
         static_cast<double>(degrees_[j]);
}

void Sampler::kill(std::size_t index) {
  if (!alive_[index]) return;
  alive_[index] = 0;
  --alive_count_;
  const auto [i, j] = pair_of(index);
  tree_.add(index, -leaf_weight(index, i, j));
}

double Sampler::row_sum(std::size_t v) const {
  double s = 0.0;
  for (std::size_t x = 0; x < n_; ++x) {
    if (x == v) continue;
    const std::size_t idx = x < v ? pair_index(n_, x, v) : pair_index(n_, v, x);
    if (alive_[idx]) s += static_weight_[idx] * static_cast<double>(remaining_[x]);
  }
  return s;
}

double Sampler::recompute_active_weight() const {
  double z = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const auto ri = static_cast<double>(remaining_[i]);
    for (std::size_t j = i + 1; j < n_; ++j) {
      const std::size_t idx = row_start_[i] + (j - i - 1);
      if (alive_[idx]) z += static_weight_[idx] * ri * static_cast<double>(remaining_[j]);
    }
  }
  return z;
}

void Sampler::resynchronize() {
  const double full = recompute_active_weight();
  if (full > 0.0) {
    max_drift_ = std::max(max_drift_, std::abs(Z_ - full) / full);
  } else {
    max_drift_ = std::max(max_drift_, std::abs(Z_));
  }
  Z_ = full;
  std::vector<double> leaves(static_weight_.size(), 0.0);
  for (std::size_t idx = 0; idx < leaves.size(); ++idx) {
    if (!alive_[idx]) continue;
    const auto [i, j] = pair_of(idx);
    leaves[idx] = leaf_weight(idx, i, j);
  }
  tree_.rebuild(leaves);
}

std::vector<std::pair<std::size_t, double>> Sampler::step_distribution() const {
  std::vector<std::pair<std::size_t, double>> out;
  double total = 0.0;
  for (std::size_t idx = 0; idx < static_weight_.size(); ++idx) {
    if (!alive_[idx]) continue;
    const auto [i, j] = pair_of(idx);
    const double w = static_weight_[idx] * static_cast<double>(remaining_[i]) *
                     static_cast<double>(remaining_[j]);
    out.emplace_back(idx, w);
    total += w;
  }
  for (auto& entry : out) entry.second /= total;
  return out;
}

std::size_t Sampler::linear_scan_draw(Rng& rng) const {
  double total = 0.0;
  for (std::size_t idx = 0; idx < static_weight_.size(); ++idx) {
    if (!alive_[idx]) continue;
    const auto [i, j] = pair_of(idx);
    total += static_weight_[idx] * static_cast<double>(remaining_[i]) *
             static_cast<double>(remaining_[j]);
  }
  const double u = uniform01(rng) * total;
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t idx = 0; idx < static_weight_.size(); ++idx) {
    if (!alive_[idx]) continue;
    const auto [i, j] = pair_of(idx);
    acc += static_weight_[idx] * static_cast<double>(remaining_[i]) *
           static_cast<double>(remaining_[j]);
    last = idx;
    if (u < acc) return idx;
  }
  return last;
}

void Sampler::place(std::size_t index) {
  const auto [i, j] = pair_of(index);
  Z_ -= static_weight_[index] * static_cast<double>(remaining_[i]) *
        static_cast<double>(remaining_[j]);
  kill(index);
  // Each remaining pair at i or j loses one unit of that endpoint's degree.
  Z_ -= row_sum(i) + row_sum(j);
  --remaining_[i];
  --remaining_[j];
  remaining_sum_ -= 2;
  for (std::size_t v : {i, j}) {
    if (remaining_[v] != 0) continue;
    for (std::size_t x = 0; x < n_; ++x) {
      if (x != v) kill(x < v ? pair_index(n_, x, v) : pair_index(n_, v, x));
    }
  }
  if (alive_count_ == 0) Z_ = 0.0;
  placed_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                     (*weights_)(i, j)});
  assert(remaining_sum_ == 2 * (m_ - static_cast<Degree>(placed_.size())));
  if (options_.recompute_interval > 0 && placed_.size() % options_.recompute_interval == 0) {
    resynchronize();
  }
}

std::optional<PlacedEdge> Sampler::step(Rng& rng) {
  if (alive_count_ == 0) return std::nullopt;
  std::size_t index = 0;
  std::size_t rejections = 0;
  while (true) {
    const double total = tree_.total();
    if (rejections >= options_.rejection_limit || !(total > 0.0)) {
      index = linear_scan_draw(rng);
      break;
    }
    index = tree_.find(uniform01(rng) * total);
    if (!alive_[index]) {
      ++rejections;
      continue;
    }
    const auto [i, j] = pair_of(index);
    const Degree num = remaining_[i] * remaining_[j];
    const Degree den = degrees_[i] * degrees_[j];
    if (num == den ||
        uniform01(rng) < static_cast<double>(num) / static_cast<double>(den)) {
      break;
    }
    ++rejections;
  }
  place(index);
  return placed_.back();
}

std::size_t target_steps(Degree m, double gamma) {
  if (gamma >= 1.0) return static_cast<std::size_t>(m);
  return static_cast<std::size_t>(std::floor(gamma * static_cast<double>(m) + 1e-9));
}

RunResult run(const DegreeSequence& degrees, const WeightTable& weights,
              const TargetSpec& target, const ReferenceDensity& reference, double gamma,
              std::uint64_t seed, SamplerOptions options) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InputError("gamma must lie in (0, 1]");
  Sampler sampler(degrees, weights, target, reference, options);
  Rng rng = make_stream(seed, kSamplerStream);

  RunResult out;
  out.sample.n = degrees.size();
  out.sample.m = degrees.edge_count();
  out.sample.gamma = gamma;
  out.sample.seed = seed;
  out.isolated_vertices = sampler.isolated_vertices();

  const std::size_t goal = target_steps(sampler.m(), gamma);
  const double m = static_cast<double>(sampler.m());
  out.trace.reserve(goal);
  while (sampler.placed().size() < goal) {
    const double z = sampler.active_weight();
    const auto edge = sampler.step(rng);
    if (!edge) break;
    const std::size_t k = sampler.placed().size();
    out.trace.push_back({k, static_cast<double>(k) / m, edge->r, z});
  }
  sampler.resynchronize();
  out.max_z_drift = sampler.max_relative_drift();

  out.sample.edges.assign(sampler.placed().begin(), sampler.placed().end());
  const std::size_t placed = out.sample.edges.size();
  if (placed == static_cast<std::size_t>(sampler.m())) {
    out.sample.status = RunStatus::complete;
  } else if (placed == goal) {
    out.sample.status = RunStatus::early_stop;
  } else {
    out.sample.status = RunStatus::failure;
  }
  return out;
}

bool verify_degrees(const GraphSample& sample, const DegreeSequence& degrees) {
  if (sample.status != RunStatus::complete || sample.n != degrees.size()) return false;
  std::vector<Degree> realized(degrees.size(), 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const auto& e : sample.edges) {
    if (e.i == e.j || e.i >= degrees.size() || e.j >= degrees.size()) return false;
    seen.emplace_back(std::min(e.i, e.j), std::max(e.i, e.j));
    ++realized[e.i];
    ++realized[e.j];
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;  // multi-edge
  return std::equal(realized.begin(), realized.end(), degrees.values().begin());
}

}  // namespace spatialgraph
