#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace drstokes {

/// Strictly increasing tuple of 0-based axis indices labelling dx_I.
///
/// Printing and the DRFORM file format use 1-based axes, internal code uses
/// 0-based ones.
class MultiIndex {
 public:
  MultiIndex() = default;
  /// Throws DimensionMismatch if `indices` is not strictly increasing inside [0, n).
  MultiIndex(int n, std::vector<int> indices);

  int dim() const noexcept { return n_; }
  int degree() const noexcept { return static_cast<int>(indices_.size()); }
  const std::vector<int>& indices() const noexcept { return indices_; }
  bool contains(int axis) const noexcept;

  /// Complementary index in 0..n-1.
  MultiIndex complement() const;

  /// 1-based comma separated list, e.g. "1,3".
  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) { return a.indices_ <=> b.indices_; }

 private:
  int n_ = 0;
  std::vector<int> indices_;
};

long long binomial(int n, int k);

/// All multi-indices of degree q in dimension n, lexicographic order.
const std::vector<MultiIndex>& multi_indices(int n, int q);

/// Position of `index` in multi_indices(n, q).
std::size_t rank_of(const MultiIndex& index);

/// Sign of the permutation sorting the concatenation (a, b); 0 if they share an index.
int merge_sign(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace drstokes
