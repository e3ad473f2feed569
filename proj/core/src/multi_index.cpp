#include "drstokes/multi_index.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "drstokes/errors.hpp"

namespace drstokes {

MultiIndex::MultiIndex(int n, std::vector<int> indices) : n_(n), indices_(std::move(indices)) {
  if (n_ < 0) throw DimensionMismatch("negative ambient dimension");
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (indices_[k] < 0 || indices_[k] >= n_)
      throw DimensionMismatch("multi-index entry out of range 1.." + std::to_string(n_));
    if (k > 0 && indices_[k] <= indices_[k - 1])
      throw DimensionMismatch("multi-index must be strictly increasing");
  }
}

bool MultiIndex::contains(int axis) const noexcept {
  return std::binary_search(indices_.begin(), indices_.end(), axis);
}

MultiIndex MultiIndex::complement() const {
  std::vector<int> rest;
  for (int a = 0; a < n_; ++a)
    if (!contains(a)) rest.push_back(a);
  return MultiIndex(n_, std::move(rest));
}

std::string MultiIndex::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(indices_[k] + 1);
  }
  return s;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

void enumerate(int n, int q, int start, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  if (static_cast<int>(cur.size()) == q) {
    out.emplace_back(n, cur);
    return;
  }
  for (int a = start; a < n; ++a) {
    cur.push_back(a);
    enumerate(n, q, a + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

const std::vector<MultiIndex>& multi_indices(int n, int q) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<MultiIndex>> cache;
  if (n < 0 || q < 0 || q > n) throw DimensionMismatch("degree " + std::to_string(q) + " outside 0.." + std::to_string(n));
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.try_emplace({n, q});
  if (inserted) {
    std::vector<int> cur;
    enumerate(n, q, 0, cur, it->second);
  }
  return it->second;
}

std::size_t rank_of(const MultiIndex& index) {
  const auto& all = multi_indices(index.dim(), index.degree());
  auto it = std::lower_bound(all.begin(), all.end(), index);
  return static_cast<std::size_t>(it - all.begin());
}

int merge_sign(const std::vector<int>& a, const std::vector<int>& b) {
  int inversions = 0;
  for (int x : a)
    for (int y : b) {
      if (x == y) return 0;
      if (x > y) ++inversions;
    }
  // a and b are each sorted, so only cross pairs can be inverted.
  return (inversions % 2) ? -1 : 1;
}

}  // namespace drstokes
