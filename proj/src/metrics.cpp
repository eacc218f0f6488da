#include "spatialgraph/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "spatialgraph/error.hpp"

namespace spatialgraph {

namespace {

// Positive 16-point Gauss–Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 8> kNodes = {
    0.09501250983763745, 0.2816035507792589, 0.45801677765722737, 0.6178762444026438,
    0.755404408355003,   0.8656312023878318, 0.9445750230732326,  0.9894009349916499};
constexpr std::array<double, 8> kWeights = {
    0.18945061045506859, 0.1826034150449236,  0.16915651939500262, 0.14959598881657676,
    0.12462897125553403, 0.09515851168249259, 0.062253523938647706, 0.027152459411754037};

template <class F>
double gauss_legendre(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t k = 0; k < kNodes.size(); ++k) {
    s += kWeights[k] * (f(mid - half * kNodes[k]) + f(mid + half * kNodes[k]));
  }
  return s * half;
}

template <class F>
double adaptive(const F& f, double a, double b, double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_legendre(f, a, mid);
  const double right = gauss_legendre(f, mid, b);
  if (depth <= 0 || std::abs(left + right - whole) <= tol) return left + right;
  return adaptive(f, a, mid, left, 0.5 * tol, depth - 1) +
         adaptive(f, mid, b, right, 0.5 * tol, depth - 1);
}

// Integral of |c - F| over [a, b] where c - F keeps one sign.
double integrate_gap(const TargetSpec& target, double c, double a, double b, double tol) {
  auto gap = [&](double x) { return c - target.cdf(x); };
  return std::abs(adaptive(gap, a, b, gauss_legendre(gap, a, b), tol, 30));
}

}  // namespace

EmpiricalLaw::EmpiricalLaw(std::vector<double> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw InputError("empirical law needs at least one atom");
  for (double x : atoms_) {
    if (!std::isfinite(x)) throw InputError("empirical law atoms must be finite");
  }
  std::sort(atoms_.begin(), atoms_.end());
}

EmpiricalLaw empirical_law(std::span<const PlacedEdge> edges) {
  std::vector<double> atoms;
  atoms.reserve(edges.size());
  for (const auto& e : edges) atoms.push_back(e.r);
  return EmpiricalLaw(std::move(atoms));
}

EmpiricalLaw empirical_law(const GraphSample& sample) { return empirical_law(sample.edges); }

double w1_empirical_empirical(const EmpiricalLaw& a, const EmpiricalLaw& b) {
  const auto xa = a.atoms();
  const auto xb = b.atoms();
  const double ma = a.mass();
  const double mb = b.mass();
  std::size_t ia = 0, ib = 0;
  double fa = 0.0, fb = 0.0;
  double prev = std::min(xa.front(), xb.front());
  double total = 0.0;
  while (ia < xa.size() || ib < xb.size()) {
    const double next = ib >= xb.size() || (ia < xa.size() && xa[ia] <= xb[ib]) ? xa[ia] : xb[ib];
    total += std::abs(fa - fb) * (next - prev);
    while (ia < xa.size() && xa[ia] == next) {
      ++ia;
      fa = static_cast<double>(ia) * ma;
    }
    while (ib < xb.size() && xb[ib] == next) {
      ++ib;
      fb = static_cast<double>(ib) * mb;
    }
    prev = next;
  }
  return total;
}

double w1_empirical_target(const EmpiricalLaw& a, const TargetSpec& target) {
  const auto atoms = a.atoms();
  const Interval I = target.support();
  std::vector<double> cuts(atoms.begin(), atoms.end());
  cuts.push_back(I.lo);
  cuts.push_back(I.hi);
  if (const auto* pw = std::get_if<PiecewiseDensity>(&target.model())) {
    cuts.insert(cuts.end(), pw->edges().begin(), pw->edges().end());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double span = cuts.back() - cuts.front();
  if (!(span > 0.0)) return 0.0;
  constexpr double kTolerance = 1e-7;
  const auto k = static_cast<double>(atoms.size());

  double total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double x0 = cuts[s];
    const double x1 = cuts[s + 1];
    const double tol = std::max(kTolerance * (x1 - x0) / span, 1e-16);
    const auto below = std::upper_bound(atoms.begin(), atoms.end(), x0) - atoms.begin();
    const double c = static_cast<double>(below) / k;
    const double g0 = c - target.cdf(x0);
    const double g1 = c - target.cdf(x1);
    if (g0 > 0.0 && g1 < 0.0) {
      // F crosses the empirical level inside the segment; split at the crossing.
      double lo = x0, hi = x1;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (c - target.cdf(mid) > 0.0 ? lo : hi) = mid;
      }
      const double cross = 0.5 * (lo + hi);
      total += integrate_gap(target, c, x0, cross, 0.5 * tol) +
               integrate_gap(target, c, cross, x1, 0.5 * tol);
    } else {
      total += integrate_gap(target, c, x0, x1, tol);
    }
  }
  return total;
}

}  // namespace spatialgraph
