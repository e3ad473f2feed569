#pragma once

#include <string>
#include <vector>

#include "drstokes/expression.hpp"
#include "drstokes/rewrite.hpp"

namespace drstokes {

/// (q+1)x(q+1) matrix of expressions acting on tuples (u_q, ..., u_0).
/// Block (i, j), 0-based, maps degree q-j to degree q-i.
class BlockMatrix {
 public:
  BlockMatrix() = default;
  /// All-zero matrix.
  BlockMatrix(int n, int q);

  static BlockMatrix identity(int n, int q);

  int dim() const noexcept { return n_; }
  int degree() const noexcept { return q_; }
  int size() const noexcept { return q_ + 1; }

  const Expression& operator()(int i, int j) const { return blocks_.at(index(i, j)); }
  /// Replaces block (i, j); throws DegreeMismatch if its signature is wrong.
  void set(int i, int j, Expression e);
  void add(int i, int j, const Expression& e);

  BlockMatrix& operator+=(const BlockMatrix& o);
  BlockMatrix& operator-=(const BlockMatrix& o);
  friend BlockMatrix operator+(BlockMatrix a, const BlockMatrix& b) { return a += b; }
  friend BlockMatrix operator-(BlockMatrix a, const BlockMatrix& b) { return a -= b; }
  friend BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b);

  /// Transpose with every block replaced by its formal adjoint.
  BlockMatrix adjoint() const;
  BlockMatrix normalized(const RewriteOptions& opts = {}, RewriteStats* stats = nullptr) const;
  bool is_zero() const;

  /// Bracketed row list, the same syntax parse_block_matrix accepts.
  std::string to_string() const;

  friend bool operator==(const BlockMatrix&, const BlockMatrix&) = default;

 private:
  std::size_t index(int i, int j) const;
  void check_compatible(const BlockMatrix& o) const;

  int n_ = 0;
  int q_ = 0;
  std::vector<Expression> blocks_;
};

}  // namespace drstokes
