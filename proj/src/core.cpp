#include "spatialgraph/core.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "spatialgraph/error.hpp"

namespace spatialgraph {

DegreeSequence::DegreeSequence(std::vector<Degree> degrees)
    : degrees_(std::move(degrees)) {
  const auto n = static_cast<Degree>(degrees_.size());
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    const Degree d = degrees_[i];
    if (d < 0 || d > n - 1) {
      throw InputError("degree of vertex " + std::to_string(i + 1) + " is " +
                       std::to_string(d) + ", outside [0, n-1]");
    }
    d_max_ = std::max(d_max_, d);
  }
  m_ = total_edges(degrees_);
}

DegreeSequence DegreeSequence::regular(std::size_t n, Degree k) {
  return DegreeSequence(std::vector<Degree>(n, k));
}

double DegreeSequence::average_degree() const {
  if (degrees_.empty()) return 0.0;
  return 2.0 * static_cast<double>(m_) / static_cast<double>(degrees_.size());
}

bool DegreeSequence::graphical() const { return is_graphical(degrees_); }

bool is_graphical(std::span<const Degree> degrees) {
  std::vector<Degree> d(degrees.begin(), degrees.end());
  if (std::any_of(d.begin(), d.end(), [](Degree x) { return x < 0; })) {
    return false;
  }
  if (std::accumulate(d.begin(), d.end(), Degree{0}) % 2 != 0) return false;
  std::sort(d.begin(), d.end(), std::greater<>());

  const std::size_t n = d.size();
  // suffix[i] = d[i] + ... + d[n-1]
  std::vector<Degree> suffix(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + d[i];

  Degree prefix = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    prefix += d[k - 1];
    const auto kk = static_cast<Degree>(k);
    // Entries after position k that are >= k contribute k, the rest contribute
    // themselves. d is non-increasing, so they form a contiguous block.
    const auto first_small = std::partition_point(
        d.begin() + static_cast<std::ptrdiff_t>(k), d.end(),
        [kk](Degree x) { return x >= kk; });
    const auto j = static_cast<std::size_t>(first_small - d.begin());
    const Degree rhs = kk * (kk - 1) + kk * static_cast<Degree>(j - k) + suffix[j];
    if (prefix > rhs) return false;
  }
  return true;
}

Degree total_edges(std::span<const Degree> degrees) {
  const Degree sum = std::accumulate(degrees.begin(), degrees.end(), Degree{0});
  if (sum % 2 != 0) {
    throw InputError("degree sum " + std::to_string(sum) + " is odd");
  }
  return sum / 2;
}

double pair_degree_factor(Degree d_i, Degree d_j, Degree m) {
  if (m < 1) throw DomainError("pair_degree_factor: m must be positive");
  if (d_i * d_j > 4 * m) {
    throw DomainError("pair_degree_factor: d_i*d_j = " + std::to_string(d_i * d_j) +
                      " exceeds 4m = " + std::to_string(4 * m));
  }
  return 1.0 - static_cast<double>(d_i * d_j) / (4.0 * static_cast<double>(m));
}

std::vector<Degree> read_degrees(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read degrees file " + path.string());
  std::vector<Degree> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    long long value = 0;
    std::string rest;
    if (!(ss >> value) || (ss >> rest) || value < 0) {
      throw InputError(path.string() + ":" + std::to_string(lineno) +
                       ": expected a nonnegative integer");
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace spatialgraph
