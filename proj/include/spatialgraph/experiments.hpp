#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "spatialgraph/core.hpp"
#include "spatialgraph/distributions.hpp"
#include "spatialgraph/sampler.hpp"
#include "spatialgraph/weight_table.hpp"

namespace spatialgraph {

// Builds the target for one instance; lets a study use n- or cloud-dependent laws.
using TargetRecipe = std::function<TargetSpec(std::size_t n, const WeightTable& weights)>;

TargetRecipe fixed_target(TargetSpec target);

// Histogram of the instance's own r_ij, which makes f = g under the default reference.
TargetRecipe reference_matched_target();

// Number of worker threads for studies; 0 picks hardware concurrency.
struct StudyOptions {
  unsigned threads = 0;
  SamplerOptions sampler;
};

struct ConvergenceRow {
  std::size_t n;
  std::size_t rep;
  std::uint64_t seed;
  RunStatus status;
  std::optional<double> d_K;  // empty for failed runs
  double C_estimate;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;            // sorted by (n, rep)
  std::map<std::size_t, double> median_d_K;    // over non-failed rows
  std::map<std::size_t, double> completion_rate;
};

// For each n: uniform 2-torus cloud, regular degree sequence, one complete
// run per rep, d_K of the edge-length law against the target.
ConvergenceReport convergence_study(const std::vector<std::size_t>& n_list, Degree degree,
                                    const TargetRecipe& target, std::size_t reps,
                                    std::uint64_t master_seed, StudyOptions options = {});

struct BoundaryRun {
  double mean;
  std::size_t rep;
  std::uint64_t seed;
  RunStatus status;
  std::size_t m;
  std::vector<TraceRow> trace;
};

// Edge-length traces per stage: normal targets with sd = rel_sd * mean, gamma = 1.
std::vector<BoundaryRun> boundary_trace_study(std::size_t n, Degree degree,
                                              const std::vector<double>& means, double rel_sd,
                                              std::size_t reps, std::uint64_t master_seed,
                                              StudyOptions options = {});

struct GammaEstimate {
  double gamma_hat = 0.0;
  bool no_qualifying_gamma = false;
  std::vector<double> grid;
  std::vector<double> qualifying_fraction;  // per grid value
};

// Largest gamma on the 0.05 grid at which >= 90% of reps place floor(gamma m)
// edges with d_K <= tol_dK. Each rep is one full run; a gamma-run is the
// prefix of the full run with the same seed.
GammaEstimate estimate_gamma_star(std::size_t n, Degree degree, const TargetRecipe& target,
                                  double tol_dK, std::size_t reps, std::uint64_t master_seed,
                                  StudyOptions options = {});

struct GammaBoundInputs {
  double C;
  double d_max;
  double d_bar;
  double eta = 1.0;
  double c = 1.0;
  std::vector<double> epsilon_grid;  // empty: 0.01, 0.02, ..., 0.99
};

struct GammaBound {
  double gamma_star;
  double epsilon;   // grid point attaining it
  double L;         // L(epsilon) there
};

// Root of gamma/(1-gamma)^2 = L(eps) d_bar eta / (C d_max^2) with
// L(eps) = d_max^2/(c(1-eps)) + 1/eps^2, taken at the eps minimizing L, so the
// bound holds for every eps on the grid.
GammaBound gamma_lower_bound(const GammaBoundInputs& inputs);

// eta = 1 and c = 1 - d_max^2/(4m).
GammaBoundInputs default_gamma_bound_inputs(const DegreeSequence& degrees, double C);

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceReport& report);
void write_boundary_report_csv(const std::filesystem::path& path,
                               const std::vector<BoundaryRun>& runs);
// traces/<mean>_<rep>.csv with columns k,alpha,r.
void write_boundary_traces(const std::filesystem::path& dir, const std::vector<BoundaryRun>& runs);

}  // namespace spatialgraph
