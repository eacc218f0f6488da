#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "spatialgraph/geometry.hpp"

namespace spatialgraph {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

// Normal(mu, sigma) restricted to [lo, hi] and renormalized.
struct TruncatedNormal {
  double mu;
  double sigma;
  Interval support;
  double phi_lo;  // standard normal cdf at the standardized lower bound
  double mass;    // normal probability of the support

  double density(double r) const;
  double cdf(double r) const;
};

struct UniformLaw {
  Interval support;
  double density(double r) const;
  double cdf(double r) const;
};

// Target edge-length law f with compact support.
class TargetSpec {
 public:
  using Model = std::variant<TruncatedNormal, UniformLaw, PiecewiseDensity>;

  explicit TargetSpec(Model model);

  double density(double r) const;
  double cdf(double r) const;
  Interval support() const { return support_; }
  const Model& model() const { return model_; }

 private:
  Model model_;
  Interval support_;
};

TargetSpec make_truncated_normal(double mu, double sigma, Interval support);
// Truncation at mu +- 5 sigma, clipped below at 0.
TargetSpec make_truncated_normal(double mu, double sigma);
// sigma = rel * mu.
TargetSpec normal_rel(double mu, double rel = 0.15);
TargetSpec make_uniform(double a, double b);
TargetSpec make_piecewise(PiecewiseDensity density);

// Law g of the admissible weights.
class ReferenceDensity {
 public:
  struct TorusAnalytic {
    std::size_t dim;
  };
  using Model = std::variant<TorusAnalytic, PiecewiseDensity, TargetSpec>;

  explicit ReferenceDensity(Model model);
  static ReferenceDensity torus_analytic(std::size_t dim);
  // Use a target law as the reference (f = g when passed the same target).
  static ReferenceDensity from_target(TargetSpec target);

  // May throw DomainError outside the analytic validity window.
  double density(double r) const;
  Interval support() const;
  const Model& model() const { return model_; }

 private:
  Model model_;
};

struct RatioDiagnostics {
  double C_estimate = 0.0;
  std::optional<double> tau_estimate;
};

// f(r)/g(r); 0 where f vanishes. Throws SupportMismatch if f(r) > 0 = g(r).
double importance_ratio(const TargetSpec& target, const ReferenceDensity& reference, double r);

inline constexpr std::size_t kDefaultRatioGrid = 10000;

// Max of the importance ratio over the midpoints of `grid` equal cells of the
// target support. A grid lower bound of the true supremum.
RatioDiagnostics ratio_bound(const TargetSpec& target, const ReferenceDensity& reference,
                             std::size_t grid = kDefaultRatioGrid);

// Least-squares slope of log C against log n.
double fit_growth_exponent(std::span<const double> ns, std::span<const double> Cs);

// CSV rows `lo,hi,mass`; rows must be contiguous and increasing.
PiecewiseDensity read_histogram_csv(const std::string& path);

// `normal:mu=<f>,sigma=<f>[,lo=<f>,hi=<f>]`, `uniform:a=<f>,b=<f>`, `hist:<path>`.
TargetSpec parse_target_spec(std::string_view spec);

}  // namespace spatialgraph
