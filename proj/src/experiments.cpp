#include "spatialgraph/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "spatialgraph/error.hpp"
#include "spatialgraph/format.hpp"
#include "spatialgraph/geometry.hpp"
#include "spatialgraph/metrics.hpp"
#include "spatialgraph/reference.hpp"

namespace spatialgraph {

namespace {

// Runs body(0..count-1) on a worker pool; results land in caller-owned slots,
// so output order never depends on scheduling.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

void check_even(std::size_t n, Degree degree) {
  if ((static_cast<Degree>(n) * degree) % 2 != 0) {
    throw InputError("n * degree must be even (n = " + std::to_string(n) + ")");
  }
}

}  // namespace

TargetRecipe fixed_target(TargetSpec target) {
  return [target = std::move(target)](std::size_t, const WeightTable&) { return target; };
}

TargetRecipe reference_matched_target() {
  return [](std::size_t, const WeightTable& weights) {
    const auto ref = auto_reference(weights);
    return make_piecewise(std::get<PiecewiseDensity>(ref.model()));
  };
}

ConvergenceReport convergence_study(const std::vector<std::size_t>& n_list, Degree degree,
                                    const TargetRecipe& target, std::size_t reps,
                                    std::uint64_t master_seed, StudyOptions options) {
  if (reps < 1) throw InputError("convergence study needs reps >= 1");
  for (std::size_t n : n_list) check_even(n, degree);

  ConvergenceReport report;
  report.rows.resize(n_list.size() * reps);
  parallel_for(report.rows.size(), options.threads, [&](std::size_t cell) {
    const std::size_t n = n_list[cell / reps];
    const std::size_t rep = cell % reps;
    const std::uint64_t seed = derive_seed(master_seed, cell);
    const WeightTable weights = WeightTable::from_points(generate_uniform(n, 2, seed));
    const TargetSpec f = target(n, weights);
    const ReferenceDensity g = default_reference(f, weights);
    const auto degrees = DegreeSequence::regular(n, degree);
    const auto result = run(degrees, weights, f, g, 1.0, seed, options.sampler);

    ConvergenceRow row{n, rep, seed, result.sample.status, std::nullopt,
                       ratio_bound(f, g).C_estimate};
    if (result.sample.status != RunStatus::failure && !result.sample.edges.empty()) {
      row.d_K = w1_empirical_target(empirical_law(result.sample), f);
    }
    report.rows[cell] = row;
  });
  std::sort(report.rows.begin(), report.rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.n, a.rep) < std::tie(b.n, b.rep);
  });

  for (std::size_t n : n_list) {
    std::vector<double> values;
    std::size_t complete = 0, total = 0;
    for (const auto& row : report.rows) {
      if (row.n != n) continue;
      ++total;
      if (row.status == RunStatus::complete) ++complete;
      if (row.d_K) values.push_back(*row.d_K);
    }
    report.median_d_K[n] = median(values);
    report.completion_rate[n] = static_cast<double>(complete) / static_cast<double>(total);
  }
  return report;
}

std::vector<BoundaryRun> boundary_trace_study(std::size_t n, Degree degree,
                                              const std::vector<double>& means, double rel_sd,
                                              std::size_t reps, std::uint64_t master_seed,
                                              StudyOptions options) {
  check_even(n, degree);
  if (reps < 1) throw InputError("boundary study needs reps >= 1");
  std::vector<BoundaryRun> runs(means.size() * reps);
  parallel_for(runs.size(), options.threads, [&](std::size_t cell) {
    const double mean = means[cell / reps];
    const std::size_t rep = cell % reps;
    const std::uint64_t seed = derive_seed(master_seed, cell);
    const WeightTable weights = WeightTable::from_points(generate_uniform(n, 2, seed));
    const TargetSpec f = normal_rel(mean, rel_sd);
    const ReferenceDensity g = default_reference(f, weights);
    auto result = run(DegreeSequence::regular(n, degree), weights, f, g, 1.0, seed,
                      options.sampler);
    runs[cell] = BoundaryRun{mean, rep, seed, result.sample.status,
                             static_cast<std::size_t>(result.sample.m), std::move(result.trace)};
  });
  return runs;
}

GammaEstimate estimate_gamma_star(std::size_t n, Degree degree, const TargetRecipe& target,
                                  double tol_dK, std::size_t reps, std::uint64_t master_seed,
                                  StudyOptions options) {
  if (!(tol_dK > 0.0)) throw InputError("gamma estimate needs tol_dK > 0");
  if (reps < 1) throw InputError("gamma estimate needs reps >= 1");
  check_even(n, degree);

  GammaEstimate out;
  for (int g = 1; g <= 20; ++g) out.grid.push_back(0.05 * g);
  out.grid.back() = 1.0;

  // qualifies[rep][g]
  std::vector<std::vector<std::uint8_t>> qualifies(reps);
  parallel_for(reps, options.threads, [&](std::size_t rep) {
    const std::uint64_t seed = derive_seed(master_seed, rep);
    const WeightTable weights = WeightTable::from_points(generate_uniform(n, 2, seed));
    const TargetSpec f = target(n, weights);
    const ReferenceDensity g = default_reference(f, weights);
    const auto degrees = DegreeSequence::regular(n, degree);
    const auto result = run(degrees, weights, f, g, 1.0, seed, options.sampler);
    auto& row = qualifies[rep];
    for (double gamma : out.grid) {
      const std::size_t steps = target_steps(degrees.edge_count(), gamma);
      const auto& edges = result.sample.edges;
      bool ok = steps >= 1 && edges.size() >= steps;
      if (ok) {
        const auto law = empirical_law(std::span(edges).first(steps));
        ok = w1_empirical_target(law, f) <= tol_dK;
      }
      row.push_back(ok ? 1 : 0);
    }
  });

  for (std::size_t g = 0; g < out.grid.size(); ++g) {
    std::size_t hits = 0;
    for (const auto& row : qualifies) hits += row[g];
    const double frac = static_cast<double>(hits) / static_cast<double>(reps);
    out.qualifying_fraction.push_back(frac);
    if (frac >= 0.9) out.gamma_hat = out.grid[g];
  }
  out.no_qualifying_gamma = out.gamma_hat == 0.0;
  return out;
}

GammaBound gamma_lower_bound(const GammaBoundInputs& in) {
  if (!(in.C > 0.0 && in.d_max > 0.0 && in.d_bar > 0.0 && in.eta > 0.0 && in.eta <= 1.0 &&
        in.c > 0.0 && in.c <= 1.0)) {
    throw InputError("gamma bound inputs must be positive with eta, c in (0, 1]");
  }
  std::vector<double> grid = in.epsilon_grid;
  if (grid.empty()) {
    for (int k = 1; k <= 99; ++k) grid.push_back(0.01 * k);
  }
  const double d2 = in.d_max * in.d_max;
  auto L = [&](double eps) { return d2 / (in.c * (1.0 - eps)) + 1.0 / (eps * eps); };

  GammaBound best{0.0, 0.0, std::numeric_limits<double>::infinity()};
  for (double eps : grid) {
    if (!(eps > 0.0 && eps < 1.0)) throw InputError("epsilon grid values must lie in (0, 1)");
    const double l = L(eps);
    if (l < best.L) best = {0.0, eps, l};
  }

  // gamma/(1-gamma)^2 increases from 0 to infinity on (0, 1).
  const double rhs = best.L * in.d_bar * in.eta / (in.C * d2);
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid / ((1.0 - mid) * (1.0 - mid)) < rhs) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  best.gamma_star = 0.5 * (lo + hi);
  return best;
}

GammaBoundInputs default_gamma_bound_inputs(const DegreeSequence& degrees, double C) {
  const auto d_max = static_cast<double>(degrees.max_degree());
  const auto m = static_cast<double>(degrees.edge_count());
  return GammaBoundInputs{C, d_max, degrees.average_degree(), 1.0,
                          1.0 - d_max * d_max / (4.0 * m), {}};
}

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceReport& report) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << "n,rep,seed,status,d_K,C_estimate\n";
  for (const auto& r : report.rows) {
    out << r.n << ',' << r.rep << ',' << r.seed << ',' << to_string(r.status) << ','
        << (r.d_K ? format_double(*r.d_K) : std::string()) << ',' << format_double(r.C_estimate)
        << '\n';
  }
}

void write_boundary_report_csv(const std::filesystem::path& path,
                               const std::vector<BoundaryRun>& runs) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << "mean,rep,seed,status,edges_placed,final_alpha\n";
  for (const auto& r : runs) {
    const double alpha = r.trace.empty() ? 0.0 : r.trace.back().alpha;
    out << format_double(r.mean) << ',' << r.rep << ',' << r.seed << ',' << to_string(r.status)
        << ',' << r.trace.size() << ',' << format_double(alpha) << '\n';
  }
}

void write_boundary_traces(const std::filesystem::path& dir, const std::vector<BoundaryRun>& runs) {
  std::filesystem::create_directories(dir);
  for (const auto& r : runs) {
    const auto path = dir / (format_double(r.mean) + "_" + std::to_string(r.rep) + ".csv");
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << "k,alpha,r\n";
    for (const auto& t : r.trace) {
      out << t.k << ',' << format_double(t.alpha) << ',' << format_double(t.r) << '\n';
    }
  }
}

}  // namespace spatialgraph
