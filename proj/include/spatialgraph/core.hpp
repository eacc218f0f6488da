#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace spatialgraph {

using Degree = std::int64_t;

// Prescribed degrees d_1..d_n. Construction validates entries and parity;
// graphicality is checked separately because the sampler and the
// `check-degrees` command handle a negative result differently.
class DegreeSequence {
 public:
  DegreeSequence() = default;
  explicit DegreeSequence(std::vector<Degree> degrees);

  // n copies of k.
  static DegreeSequence regular(std::size_t n, Degree k);

  std::size_t size() const { return degrees_.size(); }
  Degree operator[](std::size_t i) const { return degrees_[i]; }
  std::span<const Degree> values() const { return degrees_; }

  Degree edge_count() const { return m_; }
  Degree max_degree() const { return d_max_; }
  double average_degree() const;

  bool graphical() const;

 private:
  std::vector<Degree> degrees_;
  Degree m_ = 0;
  Degree d_max_ = 0;
};

// Erdős–Gallai test. Total: negative entries simply yield false.
bool is_graphical(std::span<const Degree> degrees);

// m = (1/2) sum d_i. Throws InputError when the sum is odd.
Degree total_edges(std::span<const Degree> degrees);

// w_ij = 1 - d_i d_j / (4m). Throws DomainError when d_i d_j > 4m.
double pair_degree_factor(Degree d_i, Degree d_j, Degree m);

// Degrees file: one nonnegative integer per line, line k is vertex k.
std::vector<Degree> read_degrees(const std::filesystem::path& path);

}  // namespace spatialgraph
