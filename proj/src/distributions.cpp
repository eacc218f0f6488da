#include "spatialgraph/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <string>

#include "spatialgraph/error.hpp"
#include "spatialgraph/format.hpp"

namespace spatialgraph {

namespace {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

double TruncatedNormal::density(double r) const {
  if (!support.contains(r)) return 0.0;
  const double z = (r - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi) * mass);
}

double TruncatedNormal::cdf(double r) const {
  if (r <= support.lo) return 0.0;
  if (r >= support.hi) return 1.0;
  const double c = (std_normal_cdf((r - mu) / sigma) - phi_lo) / mass;
  return std::clamp(c, 0.0, 1.0);
}

double UniformLaw::density(double r) const {
  return support.contains(r) ? 1.0 / support.length() : 0.0;
}

double UniformLaw::cdf(double r) const {
  if (r <= support.lo) return 0.0;
  if (r >= support.hi) return 1.0;
  return (r - support.lo) / support.length();
}

TargetSpec::TargetSpec(Model model) : model_(std::move(model)) {
  support_ = std::visit(overloaded{
                            [](const TruncatedNormal& m) { return m.support; },
                            [](const UniformLaw& m) { return m.support; },
                            [](const PiecewiseDensity& m) { return Interval{m.lo(), m.hi()}; },
                        },
                        model_);
}

double TargetSpec::density(double r) const {
  return std::visit(overloaded{
                        [r](const TruncatedNormal& m) { return m.density(r); },
                        [r](const UniformLaw& m) { return m.density(r); },
                        [r](const PiecewiseDensity& m) { return m(r); },
                    },
                    model_);
}

double TargetSpec::cdf(double r) const {
  return std::visit([r](const auto& m) { return m.cdf(r); }, model_);
}

TargetSpec make_truncated_normal(double mu, double sigma, Interval support) {
  if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
    throw InputError("normal target needs finite mu and sigma > 0");
  }
  if (!(support.hi > support.lo)) throw InputError("normal target support has zero length");
  const double phi_lo = std_normal_cdf((support.lo - mu) / sigma);
  const double mass = std_normal_cdf((support.hi - mu) / sigma) - phi_lo;
  if (!(mass >= 1e-300)) {
    throw InputError("normal target has no mass on [" + format_double(support.lo) + ", " +
                     format_double(support.hi) + "]");
  }
  return TargetSpec(TruncatedNormal{mu, sigma, support, phi_lo, mass});
}

TargetSpec make_truncated_normal(double mu, double sigma) {
  return make_truncated_normal(mu, sigma, {std::max(0.0, mu - 5.0 * sigma), mu + 5.0 * sigma});
}

TargetSpec normal_rel(double mu, double rel) { return make_truncated_normal(mu, rel * mu); }

TargetSpec make_uniform(double a, double b) {
  if (!(a < b)) throw InputError("uniform target needs a < b");
  return TargetSpec(UniformLaw{{a, b}});
}

TargetSpec make_piecewise(PiecewiseDensity density) { return TargetSpec(std::move(density)); }

ReferenceDensity::ReferenceDensity(Model model) : model_(std::move(model)) {}

ReferenceDensity ReferenceDensity::torus_analytic(std::size_t dim) {
  if (dim != 1 && dim != 2) {
    throw DomainError("analytic torus reference only exists for dim 1 or 2");
  }
  return ReferenceDensity(TorusAnalytic{dim});
}

ReferenceDensity ReferenceDensity::from_target(TargetSpec target) {
  return ReferenceDensity(std::move(target));
}

double ReferenceDensity::density(double r) const {
  return std::visit(overloaded{
                        [r](const TorusAnalytic& m) { return torus_distance_density(r, m.dim); },
                        [r](const PiecewiseDensity& m) { return m(r); },
                        [r](const TargetSpec& m) { return m.density(r); },
                    },
                    model_);
}

Interval ReferenceDensity::support() const {
  return std::visit(overloaded{
                        [](const TorusAnalytic&) { return Interval{0.0, 0.5}; },
                        [](const PiecewiseDensity& m) { return Interval{m.lo(), m.hi()}; },
                        [](const TargetSpec& m) { return m.support(); },
                    },
                    model_);
}

double importance_ratio(const TargetSpec& target, const ReferenceDensity& reference, double r) {
  const double f = target.density(r);
  if (f == 0.0) return 0.0;
  const double g = reference.density(r);
  if (!(g > 0.0)) {
    throw SupportMismatch("target density is positive at r = " + format_double(r) +
                          " where the reference density vanishes");
  }
  return f / g;
}

RatioDiagnostics ratio_bound(const TargetSpec& target, const ReferenceDensity& reference,
                             std::size_t grid) {
  if (grid < 2) throw InputError("ratio_bound grid must have at least 2 points");
  const Interval I = target.support();
  const double h = I.length() / static_cast<double>(grid);
  RatioDiagnostics out;
  for (std::size_t k = 0; k < grid; ++k) {
    const double r = I.lo + (static_cast<double>(k) + 0.5) * h;
    out.C_estimate = std::max(out.C_estimate, importance_ratio(target, reference, r));
  }
  return out;
}

double fit_growth_exponent(std::span<const double> ns, std::span<const double> Cs) {
  if (ns.size() != Cs.size() || ns.size() < 2) {
    throw InputError("growth exponent fit needs at least two (n, C) pairs");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto k = static_cast<double>(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(ns[i] > 0.0 && Cs[i] > 0.0)) throw InputError("growth exponent fit needs positive values");
    const double x = std::log(ns[i]);
    const double y = std::log(Cs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = k * sxx - sx * sx;
  if (denom == 0.0) throw InputError("growth exponent fit needs distinct n values");
  return (k * sxy - sx * sy) / denom;
}

PiecewiseDensity read_histogram_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read histogram file " + path);
  std::vector<double> edges;
  std::vector<double> mass;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto fields = split(t, ',');
    double lo = 0, hi = 0, w = 0;
    if (fields.size() != 3 || !parse_double(fields[0], lo) || !parse_double(fields[1], hi) ||
        !parse_double(fields[2], w)) {
      if (lineno == 1) continue;  // header row
      throw InputError(path + ":" + std::to_string(lineno) + ": expected lo,hi,mass");
    }
    if (edges.empty()) {
      edges.push_back(lo);
    } else if (lo != edges.back()) {
      throw InputError(path + ":" + std::to_string(lineno) + ": bins must be contiguous");
    }
    edges.push_back(hi);
    mass.push_back(w);
  }
  if (mass.empty()) throw InputError(path + ": no histogram rows");
  return PiecewiseDensity(std::move(edges), mass);
}

TargetSpec parse_target_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw InputError("distribution spec '" + std::string(spec) + "' lacks a kind prefix");
  }
  const auto kind = spec.substr(0, colon);
  const auto body = spec.substr(colon + 1);
  if (kind == "hist") return make_piecewise(read_histogram_csv(std::string(body)));

  std::map<std::string, double, std::less<>> params;
  for (auto item : split(body, ',')) {
    const auto eq = item.find('=');
    double value = 0.0;
    if (eq == std::string_view::npos || !parse_double(item.substr(eq + 1), value)) {
      throw InputError("bad parameter '" + std::string(item) + "' in spec '" +
                       std::string(spec) + "'");
    }
    params[std::string(trim(item.substr(0, eq)))] = value;
  }
  auto take = [&](std::string_view key) -> std::optional<double> {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    const double v = it->second;
    params.erase(it);
    return v;
  };
  auto require = [&](std::string_view key) {
    auto v = take(key);
    if (!v) throw InputError("spec '" + std::string(spec) + "' is missing " + std::string(key));
    return *v;
  };

  std::optional<TargetSpec> out;
  if (kind == "normal") {
    const double mu = require("mu");
    const double sigma = require("sigma");
    const auto lo = take("lo");
    const auto hi = take("hi");
    if (lo.has_value() != hi.has_value()) {
      throw InputError("normal spec needs both lo and hi, or neither");
    }
    out = lo ? make_truncated_normal(mu, sigma, {*lo, *hi}) : make_truncated_normal(mu, sigma);
  } else if (kind == "uniform") {
    const double a = require("a");
    const double b = require("b");
    out = make_uniform(a, b);
  } else {
    throw InputError("unknown distribution kind '" + std::string(kind) + "'");
  }
  if (!params.empty()) {
    throw InputError("unknown parameter '" + params.begin()->first + "' in spec '" +
                     std::string(spec) + "'");
  }
  return *out;
}

}  // namespace spatialgraph
