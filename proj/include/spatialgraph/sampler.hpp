#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spatialgraph/core.hpp"
#include "spatialgraph/distributions.hpp"
#include "spatialgraph/fenwick.hpp"
#include "spatialgraph/random.hpp"
#include "spatialgraph/weight_table.hpp"

namespace spatialgraph {

// 0-indexed endpoints, i < j.
struct PlacedEdge {
  std::uint32_t i;
  std::uint32_t j;
  double r;

  friend bool operator==(const PlacedEdge&, const PlacedEdge&) = default;
};

enum class RunStatus { complete, early_stop, failure };

std::string_view to_string(RunStatus status);

struct GraphSample {
  std::size_t n = 0;
  Degree m = 0;
  std::vector<PlacedEdge> edges;  // placement order
  RunStatus status = RunStatus::failure;
  double gamma = 1.0;
  std::uint64_t seed = 0;
};

// One row per placed edge; Z is the normalization in force when it was drawn.
struct TraceRow {
  std::size_t k;
  double alpha;
  double r;
  double Z;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct SamplerOptions {
  // w_ij = 1 - d_i d_j/(4m); disabled sets w_ij = 1.
  bool degree_correction = true;
  std::size_t recompute_interval = 1024;
  std::size_t rejection_limit = 1'000'000;
};

// State of one sequential run. Pair {i,j} is drawn with probability
// proportional to (f/g)(r_ij) * rem_i * rem_j * w_ij among unplaced pairs.
//
// Each pair's static weight (f/g)(r_ij) * d_i * d_j * w_ij sits in a Fenwick
// tree; a drawn pair is accepted with probability rem_i rem_j / (d_i d_j).
// Leaves of placed pairs and of pairs touching exhausted vertices are zeroed.
class Sampler {
 public:
  // `weights` must outlive the sampler.
  Sampler(const DegreeSequence& degrees, const WeightTable& weights, const TargetSpec& target,
          const ReferenceDensity& reference, SamplerOptions options = {});

  // Draws and places one edge; nullopt when no positive-weight pair remains.
  std::optional<PlacedEdge> step(Rng& rng);

  // Exact law of the next step: probability of every pair with positive weight.
  std::vector<std::pair<std::size_t, double>> step_distribution() const;

  std::size_t n() const { return n_; }
  Degree m() const { return m_; }
  std::size_t next_step() const { return placed_.size() + 1; }
  std::span<const Degree> remaining() const { return remaining_; }
  std::span<const PlacedEdge> placed() const { return placed_; }
  double active_weight() const { return Z_; }
  std::size_t isolated_vertices() const { return isolated_; }
  bool exhausted() const { return alive_count_ == 0; }

  // Full O(n^2) evaluation of Z for the current state.
  double recompute_active_weight() const;
  // Largest relative gap seen between the incremental Z and a recomputation.
  double max_relative_drift() const { return max_drift_; }
  // Replaces Z and the tree with fresh sums; records the drift.
  void resynchronize();

  std::size_t pair_count() const { return static_weight_.size(); }
  std::pair<std::size_t, std::size_t> pair_of(std::size_t index) const;

 private:
  double leaf_weight(std::size_t index, std::size_t i, std::size_t j) const;
  void kill(std::size_t index);
  double row_sum(std::size_t v) const;
  std::size_t linear_scan_draw(Rng& rng) const;
  void place(std::size_t index);

  std::size_t n_;
  Degree m_;
  SamplerOptions options_;
  const WeightTable* weights_;
  std::vector<Degree> degrees_;
  std::vector<Degree> remaining_;
  std::vector<std::size_t> row_start_;
  std::vector<double> static_weight_;  // (f/g)(r_ij) * w_ij
  std::vector<std::uint8_t> alive_;
  std::size_t alive_count_ = 0;
  FenwickTree tree_;
  std::vector<PlacedEdge> placed_;
  double Z_ = 0.0;
  double max_drift_ = 0.0;
  Degree remaining_sum_ = 0;
  std::size_t isolated_ = 0;
};

struct RunResult {
  GraphSample sample;
  std::vector<TraceRow> trace;
  std::size_t isolated_vertices = 0;
  double max_z_drift = 0.0;
};

// Places floor(gamma*m) edges (m when gamma = 1), stopping early with
// status failure if the sampler is exhausted first.
RunResult run(const DegreeSequence& degrees, const WeightTable& weights,
              const TargetSpec& target, const ReferenceDensity& reference, double gamma,
              std::uint64_t seed, SamplerOptions options = {});

// Number of placements a run with this gamma aims for.
std::size_t target_steps(Degree m, double gamma);

bool verify_degrees(const GraphSample& sample, const DegreeSequence& degrees);

}  // namespace spatialgraph
