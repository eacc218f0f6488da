#include "spatialgraph/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <string>

#include "spatialgraph/error.hpp"
#include "spatialgraph/format.hpp"
#include "spatialgraph/random.hpp"

namespace spatialgraph {

namespace {

double wrap_unit(double x) {
  x -= std::floor(x);
  // floor can leave exactly 1.0 for tiny negative inputs
  return x >= 1.0 ? 0.0 : x;
}

void check_unit_coords(std::span<const double> coords) {
  for (double c : coords) {
    if (!(c >= 0.0 && c < 1.0)) {
      throw InputError("coordinate " + format_double(c) + " outside [0,1)");
    }
  }
}

}  // namespace

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw InputError("point cloud dimension must be >= 1");
  if (coords_.size() % dim_ != 0) {
    throw InputError("coordinate count is not a multiple of the dimension");
  }
  check_unit_coords(coords_);
}

void PointCloud::truncate(std::size_t n) {
  if (n < size()) coords_.resize(n * dim_);
}

PointCloud generate_uniform(std::size_t n, std::size_t dim, std::uint64_t seed) {
  if (n == 0 || dim == 0) throw InputError("generate_uniform: n and dim must be >= 1");
  Rng rng = make_stream(seed, kPointsStream);
  std::vector<double> coords(n * dim);
  for (double& c : coords) c = uniform01(rng);
  return PointCloud(dim, std::move(coords));
}

PointCloud generate_poisson_disk(double radius, std::size_t dim, std::uint64_t seed) {
  if (!(radius > 0.0 && radius < 0.5)) {
    throw DomainError("poisson-disk radius must lie in (0, 1/2), got " +
                      format_double(radius));
  }
  if (dim < 1 || dim > 3) throw DomainError("poisson-disk dimension must be 1, 2 or 3");
  constexpr int kAttempts = 30;

  // Cell side <= radius/sqrt(dim), so a cell holds at most one point.
  const auto cells_per_axis =
      static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(dim)) / radius));
  std::size_t cell_count = 1;
  for (std::size_t a = 0; a < dim; ++a) cell_count *= cells_per_axis;
  if (cell_count > (std::size_t{1} << 28)) {
    throw DomainError("poisson-disk radius too small for the background grid");
  }
  const auto reach = static_cast<long>(std::ceil(radius * static_cast<double>(cells_per_axis)));
  const long g = static_cast<long>(cells_per_axis);

  // Per-axis neighbour offsets, deduplicated once the window covers the torus.
  std::vector<long> offsets;
  if (2 * reach + 1 >= g) {
    for (long o = 0; o < g; ++o) offsets.push_back(o);
  } else {
    for (long o = -reach; o <= reach; ++o) offsets.push_back(o);
  }

  std::vector<double> coords;
  std::vector<long> grid(cell_count, -1);
  std::vector<std::size_t> active;
  Rng rng = make_stream(seed, kPointsStream);

  auto cell_of = [&](const double* p, long* idx) {
    for (std::size_t a = 0; a < dim; ++a) {
      idx[a] = std::min(static_cast<long>(p[a] * static_cast<double>(g)), g - 1);
    }
  };
  auto flat = [&](const long* idx) {
    std::size_t f = 0;
    for (std::size_t a = 0; a < dim; ++a) f = f * cells_per_axis + static_cast<std::size_t>(idx[a]);
    return f;
  };
  auto fits = [&](const double* p) {
    long base[3], idx[3];
    cell_of(p, base);
    const std::size_t k = offsets.size();
    std::size_t combos = 1;
    for (std::size_t a = 0; a < dim; ++a) combos *= k;
    for (std::size_t c = 0; c < combos; ++c) {
      std::size_t rem = c;
      for (std::size_t a = 0; a < dim; ++a) {
        long v = base[a] + offsets[rem % k];
        rem /= k;
        v %= g;
        if (v < 0) v += g;
        idx[a] = v;
      }
      const long q = grid[flat(idx)];
      if (q >= 0 &&
          torus_distance({p, dim}, {coords.data() + static_cast<std::size_t>(q) * dim, dim}) <
              radius) {
        return false;
      }
    }
    return true;
  };
  auto insert = [&](const double* p) {
    long idx[3];
    cell_of(p, idx);
    const std::size_t id = coords.size() / dim;
    coords.insert(coords.end(), p, p + dim);
    grid[flat(idx)] = static_cast<long>(id);
    active.push_back(id);
  };

  double p[3];
  for (std::size_t a = 0; a < dim; ++a) p[a] = uniform01(rng);
  insert(p);

  while (!active.empty()) {
    const std::size_t slot = uniform_index(rng, active.size());
    const std::size_t parent = active[slot];
    bool placed = false;
    for (int attempt = 0; attempt < kAttempts && !placed; ++attempt) {
      // Uniform in the shell radius <= |v| <= 2 radius, by rejection from the cube.
      double v[3];
      double norm2 = 0.0;
      do {
        norm2 = 0.0;
        for (std::size_t a = 0; a < dim; ++a) {
          v[a] = (4.0 * uniform01(rng) - 2.0) * radius;
          norm2 += v[a] * v[a];
        }
      } while (norm2 < radius * radius || norm2 > 4.0 * radius * radius);
      for (std::size_t a = 0; a < dim; ++a) {
        p[a] = wrap_unit(coords[parent * dim + a] + v[a]);
      }
      if (fits(p)) {
        insert(p);
        placed = true;
      }
    }
    if (!placed) {
      active[slot] = active.back();
      active.pop_back();
    }
  }
  return PointCloud(dim, std::move(coords));
}

double torus_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("torus_distance: dimension mismatch");
  double sum = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    double delta = std::abs(x[a] - y[a]);
    delta = std::min(delta, 1.0 - delta);
    sum += delta * delta;
  }
  return std::sqrt(sum);
}

double torus_distance_density(double r, std::size_t dim) {
  if (dim != 1 && dim != 2) {
    throw DomainError("analytic torus distance density only for dim 1 or 2");
  }
  if (!(r >= 0.0 && r <= 0.5)) {
    throw DomainError("analytic torus distance density valid only on [0, 1/2], got r = " +
                      format_double(r));
  }
  return dim == 1 ? 2.0 : 2.0 * std::numbers::pi * r;
}

PiecewiseDensity::PiecewiseDensity(std::vector<double> edges, std::span<const double> mass)
    : edges_(std::move(edges)) {
  if (edges_.size() < 2 || mass.size() + 1 != edges_.size()) {
    throw InputError("piecewise density needs bins+1 edges for bins masses");
  }
  double total = 0.0;
  for (std::size_t b = 0; b < mass.size(); ++b) {
    if (!(edges_[b + 1] > edges_[b])) throw InputError("piecewise density edges must increase");
    if (!(mass[b] >= 0.0) || !std::isfinite(mass[b])) {
      throw InputError("piecewise density masses must be finite and nonnegative");
    }
    total += mass[b];
  }
  if (!(total > 0.0)) throw InputError("piecewise density has zero total mass");
  density_.resize(mass.size());
  cumulative_.assign(edges_.size(), 0.0);
  for (std::size_t b = 0; b < mass.size(); ++b) {
    const double p = mass[b] / total;
    density_[b] = p / (edges_[b + 1] - edges_[b]);
    cumulative_[b + 1] = cumulative_[b] + p;
  }
  cumulative_.back() = 1.0;
}

double PiecewiseDensity::operator()(double r) const {
  if (!(r >= lo() && r <= hi())) return 0.0;
  auto it = std::upper_bound(edges_.begin(), edges_.end(), r);
  auto b = static_cast<std::size_t>(it - edges_.begin());
  b = std::min(b, density_.size());
  return density_[b - 1];
}

double PiecewiseDensity::cdf(double r) const {
  if (r <= lo()) return 0.0;
  if (r >= hi()) return 1.0;
  auto it = std::upper_bound(edges_.begin(), edges_.end(), r);
  const auto b = static_cast<std::size_t>(it - edges_.begin()) - 1;
  return cumulative_[b] + density_[b] * (r - edges_[b]);
}

PiecewiseDensity estimate_density_histogram(std::span<const double> samples,
                                            std::size_t bins, double lo, double hi) {
  if (samples.empty()) throw InputError("histogram estimate needs at least one sample");
  if (bins < 1) throw InputError("histogram estimate needs at least one bin");
  if (!(hi > lo)) throw InputError("histogram support must have positive length");

  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<double> mass(bins, 0.0);
  for (double s : samples) {
    if (!(s >= lo && s <= hi)) {
      throw InputError("histogram sample " + format_double(s) + " outside support");
    }
    auto b = static_cast<std::size_t>((s - lo) / width);
    mass[std::min(b, bins - 1)] += 1.0;
  }
  const double smoothing = 1e-6 / static_cast<double>(bins);
  const auto count = static_cast<double>(samples.size());
  for (double& w : mass) w = w / count + smoothing;

  std::vector<double> edges(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) edges[b] = lo + width * static_cast<double>(b);
  edges.back() = hi;
  return PiecewiseDensity(std::move(edges), mass);
}

void write_points_csv(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write points file " + path.string());
  out << "id";
  for (std::size_t a = 0; a < cloud.dim(); ++a) out << ",x" << a;
  out << '\n';
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    out << (i + 1);
    for (double c : cloud.point(i)) out << ',' << format_double(c);
    out << '\n';
  }
}

PointCloud read_points_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read points file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InputError(path.string() + ": empty points file");
  const auto header = split(trim(line), ',');
  if (header.size() < 2 || trim(header[0]) != "id") {
    throw InputError(path.string() + ": header must be id,x0,...");
  }
  const std::size_t dim = header.size() - 1;
  std::vector<double> coords;
  std::size_t expected_id = 1;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(trim(line), ',');
    double id = 0.0;
    if (fields.size() != dim + 1 || !parse_double(fields[0], id) ||
        id != static_cast<double>(expected_id)) {
      throw InputError(path.string() + ": malformed row for point " +
                       std::to_string(expected_id));
    }
    for (std::size_t a = 0; a < dim; ++a) {
      double c = 0.0;
      if (!parse_double(fields[a + 1], c)) {
        throw InputError(path.string() + ": bad coordinate for point " +
                         std::to_string(expected_id));
      }
      coords.push_back(c);
    }
    ++expected_id;
  }
  return PointCloud(dim, std::move(coords));
}

}  // namespace spatialgraph
