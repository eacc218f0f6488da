#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace spatialgraph {

// Points on the unit N-torus [0,1)^N, stored row-major.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(std::size_t dim, std::vector<double> coords);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coords() const { return coords_; }

  // Keep only the first n points.
  void truncate(std::size_t n);

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

PointCloud generate_uniform(std::size_t n, std::size_t dim, std::uint64_t seed);

// Dart throwing on the torus (Bridson, 30 candidates per active point).
// Every pair of output points is at torus distance >= radius.
PointCloud generate_poisson_disk(double radius, std::size_t dim, std::uint64_t seed);

double torus_distance(std::span<const double> x, std::span<const double> y);

// Density of the torus distance between two independent uniform points.
// Exact for dim 1 and 2 on 0 <= r <= 1/2; throws DomainError elsewhere.
double torus_distance_density(double r, std::size_t dim);

// Piecewise-constant density over contiguous bins edges[b]..edges[b+1].
class PiecewiseDensity {
 public:
  PiecewiseDensity() = default;
  // `mass` need not be normalized; it is scaled to total 1.
  PiecewiseDensity(std::vector<double> edges, std::span<const double> mass);

  std::size_t bins() const { return density_.size(); }
  double lo() const { return edges_.front(); }
  double hi() const { return edges_.back(); }
  std::span<const double> edges() const { return edges_; }
  std::span<const double> densities() const { return density_; }

  // 0 outside [lo, hi]; the right endpoint belongs to the last bin.
  double operator()(double r) const;
  double cdf(double r) const;

 private:
  std::vector<double> edges_;
  std::vector<double> density_;
  std::vector<double> cumulative_;  // cdf at each edge
};

// Equal-width normalized histogram on [lo, hi] with a relative 1e-6/bins
// mass added to every bin, so the estimate is positive on the whole support.
PiecewiseDensity estimate_density_histogram(std::span<const double> samples,
                                            std::size_t bins, double lo, double hi);

// CSV `id,x0,...,x{N-1}` with ids 1..n.
void write_points_csv(const std::filesystem::path& path, const PointCloud& cloud);
PointCloud read_points_csv(const std::filesystem::path& path);

}  // namespace spatialgraph
