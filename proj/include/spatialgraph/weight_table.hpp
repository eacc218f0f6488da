#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <vector>

#include "spatialgraph/geometry.hpp"

namespace spatialgraph {

// Index of the unordered pair {i, j}, i < j, in row-major upper-triangle order.
inline std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

inline constexpr std::size_t kMaterializeCutoff = 3000;

// Symmetric admissible edge lengths r_ij >= 0 (0-indexed vertices).
// Either an explicit upper triangle or distances on a torus point cloud;
// the latter is materialized when n <= kMaterializeCutoff.
class WeightTable {
 public:
  static WeightTable from_upper_triangle(std::size_t n, std::vector<double> upper);
  static WeightTable from_points(PointCloud cloud);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const;

  // Point cloud backing the table, if any.
  const PointCloud* points() const { return cloud_.get(); }

 private:
  std::size_t n_ = 0;
  std::vector<double> upper_;
  std::shared_ptr<const PointCloud> cloud_;
};

// Lines `i<TAB>j<TAB>r`, 1-indexed; every pair 1 <= i < j <= n must appear once.
WeightTable read_weights_tsv(const std::filesystem::path& path, std::size_t n);
// Same, with n taken as the largest vertex id in the file.
WeightTable read_weights_tsv(const std::filesystem::path& path);

}  // namespace spatialgraph
