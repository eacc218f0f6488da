#pragma once

#include <bit>
#include <cstddef>
#include <span>
#include <vector>

namespace spatialgraph {

// Binary indexed tree of nonnegative weights supporting point updates and
// inverse-prefix lookup.
class FenwickTree {
 public:
  FenwickTree() = default;
  explicit FenwickTree(std::span<const double> leaves) { rebuild(leaves); }

  void rebuild(std::span<const double> leaves) {
    tree_.assign(leaves.size() + 1, 0.0);
    for (std::size_t i = 1; i <= leaves.size(); ++i) {
      tree_[i] += leaves[i - 1];
      const std::size_t parent = i + (i & (~i + 1));
      if (parent < tree_.size()) tree_[parent] += tree_[i];
    }
    top_ = tree_.size() > 1 ? std::bit_floor(tree_.size() - 1) : 0;
  }

  std::size_t size() const { return tree_.empty() ? 0 : tree_.size() - 1; }

  void add(std::size_t index, double delta) {
    for (std::size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  double total() const {
    double s = 0.0;
    for (std::size_t i = size(); i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

  // Smallest index whose inclusive prefix sum exceeds u; size()-1 if none does.
  std::size_t find(double u) const {
    std::size_t pos = 0;
    for (std::size_t step = top_; step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] <= u) {
        pos = next;
        u -= tree_[next];
      }
    }
    return pos < size() ? pos : size() - 1;
  }

 private:
  std::vector<double> tree_;
  std::size_t top_ = 0;
};

}  // namespace spatialgraph
