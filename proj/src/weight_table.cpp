#include "spatialgraph/weight_table.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <utility>

#include "spatialgraph/error.hpp"
#include "spatialgraph/format.hpp"

namespace spatialgraph {

WeightTable WeightTable::from_upper_triangle(std::size_t n, std::vector<double> upper) {
  if (upper.size() != n * (n - (n > 0 ? 1 : 0)) / 2) {
    throw InputError("weight table needs n(n-1)/2 entries");
  }
  for (double r : upper) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw InputError("weights must be finite and >= 0");
  }
  WeightTable t;
  t.n_ = n;
  t.upper_ = std::move(upper);
  return t;
}

WeightTable WeightTable::from_points(PointCloud cloud) {
  WeightTable t;
  t.n_ = cloud.size();
  t.cloud_ = std::make_shared<const PointCloud>(std::move(cloud));
  if (t.n_ <= kMaterializeCutoff && t.n_ > 1) {
    t.upper_.resize(t.n_ * (t.n_ - 1) / 2);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < t.n_; ++i) {
      for (std::size_t j = i + 1; j < t.n_; ++j) {
        t.upper_[idx++] = torus_distance(t.cloud_->point(i), t.cloud_->point(j));
      }
    }
  }
  return t;
}

double WeightTable::operator()(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (!upper_.empty()) return upper_[pair_index(n_, i, j)];
  return torus_distance(cloud_->point(i), cloud_->point(j));
}

WeightTable read_weights_tsv(const std::filesystem::path& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read weights file " + path.string());
  const std::size_t pairs = n * (n - (n > 0 ? 1 : 0)) / 2;
  std::vector<double> upper(pairs, -1.0);
  std::string line;
  std::size_t lineno = 0;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split(trim(line), '\t');
    double i = 0, j = 0, r = 0;
    if (fields.size() != 3 || !parse_double(fields[0], i) || !parse_double(fields[1], j) ||
        !parse_double(fields[2], r)) {
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": expected i<TAB>j<TAB>r");
    }
    if (i > j) std::swap(i, j);
    if (i < 1 || j > static_cast<double>(n) || i == j || i != std::floor(i) ||
        j != std::floor(j)) {
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": bad vertex pair");
    }
    double& slot = upper[pair_index(n, static_cast<std::size_t>(i) - 1,
                                    static_cast<std::size_t>(j) - 1)];
    if (slot >= 0.0) {
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": duplicate pair");
    }
    slot = r;
    ++seen;
  }
  if (seen != pairs) {
    throw InputError(path.string() + ": expected all " + std::to_string(pairs) +
                     " pairs, found " + std::to_string(seen));
  }
  return WeightTable::from_upper_triangle(n, std::move(upper));
}

WeightTable read_weights_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read weights file " + path.string());
  double max_id = 0.0;
  std::string line;
  while (std::getline(in, line)) {
    const auto fields = split(trim(line), '\t');
    double i = 0, j = 0;
    if (fields.size() == 3 && parse_double(fields[0], i) && parse_double(fields[1], j)) {
      max_id = std::max({max_id, i, j});
    }
  }
  return read_weights_tsv(path, static_cast<std::size_t>(max_id));
}

}  // namespace spatialgraph
