#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>

#include "spatialgraph/core.hpp"
#include "spatialgraph/distributions.hpp"
#include "spatialgraph/error.hpp"
#include "spatialgraph/experiments.hpp"
#include "spatialgraph/format.hpp"
#include "spatialgraph/geometry.hpp"
#include "spatialgraph/io.hpp"
#include "spatialgraph/metrics.hpp"
#include "spatialgraph/reference.hpp"
#include "spatialgraph/sampler.hpp"
#include "spatialgraph/weight_table.hpp"

namespace spatialgraph::cli {

namespace {

namespace fs = std::filesystem;

// Thrown for validation failures that should exit with kUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string significant9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%#.9g", x);
  return buf;
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  for (auto item : split(text, ',')) {
    double v = 0.0;
    if (!parse_double(item, v)) {
      throw UsageError(std::string("bad value in ") + what + ": '" + std::string(item) + "'");
    }
    out.push_back(static_cast<T>(v));
  }
  return out;
}

DegreeSequence load_degrees(const std::string& source, std::optional<std::size_t> n) {
  if (source.rfind("regular:", 0) == 0) {
    double k = 0.0;
    if (!parse_double(source.substr(8), k) || k < 0 || k != std::floor(k)) {
      throw UsageError("bad degree source '" + source + "'");
    }
    if (!n) throw UsageError("regular:<k> needs the vertex count from the weight source");
    return DegreeSequence::regular(*n, static_cast<Degree>(k));
  }
  const auto raw = read_degrees(source);
  if (!is_graphical(raw)) throw UsageError("degree sequence is not graphical");
  return DegreeSequence(raw);
}

struct GenPointsArgs {
  std::optional<std::size_t> n;
  std::size_t dim = 2;
  std::string mode = "uniform";
  std::optional<double> radius;
  std::uint64_t seed = 0;
  std::string out;
};

int gen_points(const GenPointsArgs& a, std::ostream& out) {
  PointCloud cloud;
  if (a.mode == "uniform") {
    if (a.radius) throw UsageError("--radius only applies to --mode poisson-disk");
    if (!a.n) throw UsageError("--mode uniform needs --n");
    cloud = generate_uniform(*a.n, a.dim, a.seed);
  } else {
    if (!a.radius) throw UsageError("--mode poisson-disk needs --radius");
    if (!(*a.radius > 0.0 && *a.radius < 0.5)) {
      throw UsageError("--radius must lie in (0, 0.5), got " + format_double(*a.radius));
    }
    cloud = generate_poisson_disk(*a.radius, a.dim, a.seed);
    if (a.n) {
      if (cloud.size() < *a.n) {
        throw UsageError("poisson-disk packing produced only " + std::to_string(cloud.size()) +
                         " points, fewer than --n " + std::to_string(*a.n));
      }
      cloud.truncate(*a.n);
    }
  }
  write_points_csv(a.out, cloud);
  out << cloud.size() << " points written to " << a.out << '\n';
  return kSuccess;
}

struct SampleArgs {
  std::string degrees;
  std::string points;
  std::string weights;
  std::string target;
  std::string reference;
  double gamma = 1.0;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  bool no_degree_correction = false;
  bool record_time = false;
};

int sample(const SampleArgs& a, std::ostream& out, std::ostream& err) {
  if (a.points.empty() == a.weights.empty()) {
    throw UsageError("give exactly one of --points or --weights");
  }
  if (!(a.gamma > 0.0 && a.gamma <= 1.0)) throw UsageError("--gamma must lie in (0, 1]");
  const auto start = std::chrono::steady_clock::now();

  const WeightTable weights = a.points.empty()
                                  ? read_weights_tsv(a.weights)
                                  : WeightTable::from_points(read_points_csv(a.points));
  const DegreeSequence degrees = load_degrees(a.degrees, weights.size());
  if (degrees.size() != weights.size()) {
    throw UsageError("degree sequence has " + std::to_string(degrees.size()) +
                     " vertices but the weight source has " + std::to_string(weights.size()));
  }
  if (!degrees.graphical()) throw UsageError("degree sequence is not graphical");
  const TargetSpec target = parse_target_spec(a.target);
  const ReferenceDensity reference = parse_reference_spec(a.reference, target, weights);

  SamplerOptions options;
  options.degree_correction = !a.no_degree_correction;
  const auto result = run(degrees, weights, target, reference, a.gamma, a.seed, options);
  if (result.isolated_vertices > 0) {
    err << "warning: " << result.isolated_vertices
        << " vertices with prescribed degree 0 take no part in sampling\n";
  }

  std::optional<double> C;
  try {
    C = ratio_bound(target, reference).C_estimate;
  } catch (const std::exception& e) {
    err << "warning: C_estimate unavailable: " << e.what() << '\n';
  }
  std::optional<double> d_K;
  if (result.sample.status != RunStatus::failure && !result.sample.edges.empty()) {
    d_K = w1_empirical_target(empirical_law(result.sample), target);
  }
  std::optional<double> wall;
  if (a.record_time) {
    wall = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
               .count();
  }

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  write_edges_tsv(dir / "edges.tsv", result.sample);
  write_trace_csv(dir / "trace.csv", result.trace);
  {
    std::ofstream meta(dir / "meta.json");
    if (!meta) throw InputError("cannot write " + (dir / "meta.json").string());
    meta << metadata_json({&result.sample, C, d_K, wall});
  }

  out << "status " << to_string(result.sample.status) << ", " << result.sample.edges.size()
      << " of " << result.sample.m << " edges";
  if (d_K) out << ", d_K " << significant9(*d_K);
  out << '\n';
  return result.sample.status == RunStatus::failure ? kSamplerFailure : kSuccess;
}

int distance(const std::string& edges, const std::string& target, std::ostream& out) {
  const auto lengths = read_edge_lengths(edges);
  if (lengths.empty()) throw UsageError("edges file " + edges + " holds no edges");
  const double w1 = w1_empirical_target(EmpiricalLaw(lengths), parse_target_spec(target));
  out << significant9(w1) << '\n';
  return kSuccess;
}

int check_degrees(const std::string& path, std::ostream& out) {
  const auto degrees = read_degrees(path);
  const bool ok = is_graphical(degrees);
  out << (ok ? "graphical" : "not graphical") << '\n';
  return ok ? kSuccess : kNegative;
}

struct ExperimentArgs {
  std::string n_list = "200,400,800";
  std::size_t n = 1000;
  Degree degree = 3;
  std::string target = "normal:mu=0.2,sigma=0.03,lo=0.05,hi=0.35";
  std::string means = "0.2,0.1,0.04";
  double rel_sd = 0.15;
  double tol = 0.02;
  std::size_t reps = 20;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  unsigned threads = 0;
};

int experiment_convergence(const ExperimentArgs& a, std::ostream& out) {
  const auto ns = parse_list<std::size_t>(a.n_list, "--n-list");
  StudyOptions options;
  options.threads = a.threads;
  const auto report = convergence_study(ns, a.degree, fixed_target(parse_target_spec(a.target)),
                                        a.reps, a.seed, options);
  fs::create_directories(a.out_dir);
  write_convergence_csv(fs::path(a.out_dir) / "report.csv", report);
  out << "n,median_d_K,completion_rate\n";
  for (const auto& [n, med] : report.median_d_K) {
    out << n << ',' << format_double(med) << ',' << format_double(report.completion_rate.at(n))
        << '\n';
  }
  return kSuccess;
}

int experiment_boundary(const ExperimentArgs& a, std::ostream& out) {
  const auto means = parse_list<double>(a.means, "--means");
  StudyOptions options;
  options.threads = a.threads;
  const auto runs = boundary_trace_study(a.n, a.degree, means, a.rel_sd, a.reps, a.seed, options);
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  write_boundary_report_csv(dir / "report.csv", runs);
  write_boundary_traces(dir / "traces", runs);
  for (double mean : means) {
    std::size_t complete = 0, total = 0;
    for (const auto& r : runs) {
      if (r.mean != mean) continue;
      ++total;
      complete += r.status == RunStatus::complete;
    }
    out << "mean " << format_double(mean) << ": " << complete << " of " << total
        << " runs complete\n";
  }
  return kSuccess;
}

int experiment_gamma(const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  StudyOptions options;
  options.threads = a.threads;
  const TargetSpec target = parse_target_spec(a.target);
  const auto estimate =
      estimate_gamma_star(a.n, a.degree, fixed_target(target), a.tol, a.reps, a.seed, options);
  if (estimate.no_qualifying_gamma) err << "warning: no gamma on the grid qualifies\n";

  // Boundary-regime constant C with f <= C n g, measured on one instance.
  const WeightTable weights =
      WeightTable::from_points(generate_uniform(a.n, 2, derive_seed(a.seed, 0)));
  const ReferenceDensity reference = default_reference(target, weights);
  const double C = ratio_bound(target, reference).C_estimate / static_cast<double>(a.n);
  const auto bound =
      gamma_lower_bound(default_gamma_bound_inputs(DegreeSequence::regular(a.n, a.degree), C));
  out << "gamma_hat " << format_double(estimate.gamma_hat) << '\n';
  out << "gamma_lower_bound " << format_double(bound.gamma_star) << " (C "
      << format_double(C) << ", eps " << format_double(bound.epsilon) << ")\n";
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sample spatial graphs with prescribed degrees and edge-length law"};
  app.require_subcommand(1);

  GenPointsArgs gp;
  auto* gen = app.add_subcommand("gen-points", "Generate a point cloud on the unit torus");
  gen->add_option("--n", gp.n, "Number of points (poisson-disk: keep the first n)");
  gen->add_option("--dim", gp.dim, "Dimension")->check(CLI::Range(1, 3));
  gen->add_option("--mode", gp.mode, "uniform | poisson-disk")
      ->check(CLI::IsMember({"uniform", "poisson-disk"}));
  gen->add_option("--radius", gp.radius, "Poisson-disk minimum distance");
  gen->add_option("--seed", gp.seed, "Random seed")->required();
  gen->add_option("--out", gp.out, "Output CSV")->required();

  SampleArgs sa;
  auto* smp = app.add_subcommand("sample", "Run the sequential sampler once");
  smp->add_option("--degrees", sa.degrees, "Degrees file or regular:<k>")->required();
  smp->add_option("--points", sa.points, "Points CSV (torus distances)");
  smp->add_option("--weights", sa.weights, "Explicit weights TSV");
  smp->add_option("--target", sa.target, "Target law spec")->required();
  smp->add_option("--reference", sa.reference, "torus-analytic | hist:<path> | auto");
  smp->add_option("--gamma", sa.gamma, "Fraction of edges to place");
  smp->add_option("--seed", sa.seed, "Random seed")->required();
  smp->add_option("--out-dir", sa.out_dir, "Directory for edges.tsv, trace.csv, meta.json");
  smp->add_flag("--no-degree-correction", sa.no_degree_correction, "Use w_ij = 1");
  smp->add_flag("--record-time", sa.record_time, "Store wall_time_ms in meta.json");

  std::string dist_edges, dist_target;
  auto* dst = app.add_subcommand("distance", "W1 between an edges file and a target law");
  dst->add_option("--edges", dist_edges, "Edges TSV")->required();
  dst->add_option("--target", dist_target, "Target law spec")->required();

  std::string degrees_path;
  auto* chk = app.add_subcommand("check-degrees", "Test a degrees file for graphicality");
  chk->add_option("degrees", degrees_path, "Degrees file")->required();

  ExperimentArgs ea;
  auto* exp = app.add_subcommand("experiment", "Run a multi-seed study");
  exp->require_subcommand(1);
  auto common = [&ea](CLI::App* c) {
    c->add_option("--degree", ea.degree, "Regular degree");
    c->add_option("--reps", ea.reps, "Runs per cell");
    c->add_option("--seed", ea.seed, "Master seed")->required();
    c->add_option("--threads", ea.threads, "Worker threads (0 = all cores)");
  };
  auto* conv = exp->add_subcommand("convergence", "d_K against n at fixed target");
  common(conv);
  conv->add_option("--n-list", ea.n_list, "Comma-separated vertex counts");
  conv->add_option("--target", ea.target, "Target law spec");
  conv->add_option("--out-dir", ea.out_dir, "Directory for report.csv");
  auto* bnd = exp->add_subcommand("boundary", "Edge-length traces in the boundary regime");
  common(bnd);
  bnd->add_option("--n", ea.n, "Vertex count");
  bnd->add_option("--means", ea.means, "Comma-separated target means");
  bnd->add_option("--rel-sd", ea.rel_sd, "Standard deviation as a fraction of the mean");
  bnd->add_option("--out-dir", ea.out_dir, "Directory for report.csv and traces/");
  auto* gam = exp->add_subcommand("gamma", "Empirical early-stop fraction and its lower bound");
  common(gam);
  gam->add_option("--n", ea.n, "Vertex count");
  gam->add_option("--target", ea.target, "Target law spec");
  gam->add_option("--tol", ea.tol, "d_K tolerance");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*gen) return gen_points(gp, out);
    if (*smp) return sample(sa, out, err);
    if (*dst) return distance(dist_edges, dist_target, out);
    if (*chk) return check_degrees(degrees_path, out);
    if (*conv) return experiment_convergence(ea, out);
    if (*bnd) return experiment_boundary(ea, out);
    if (*gam) return experiment_gamma(ea, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace spatialgraph::cli
