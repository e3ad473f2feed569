#pragma once

#include <vector>

#include "drstokes/rational.hpp"

namespace drstokes {

/// Constant symmetric k_q x k_q matrix acting on q-forms, rows and columns in
/// lexicographic multi-index order. Row I is the constant q-form M^{(I)}.
class MatrixCoefficient {
 public:
  MatrixCoefficient() = default;
  /// Throws DimensionMismatch on wrong size, ParameterError if not symmetric.
  MatrixCoefficient(int n, int q, std::vector<std::vector<Rational>> entries);

  static MatrixCoefficient identity(int n, int q);
  static MatrixCoefficient scalar(int n, int q, const Rational& c);
  /// Convenience for decimal input; values are converted exactly.
  static MatrixCoefficient from_doubles(int n, int q, const std::vector<std::vector<double>>& entries);

  int dim() const noexcept { return n_; }
  int degree() const noexcept { return q_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  const std::vector<std::vector<Rational>>& entries() const noexcept { return entries_; }

  /// Smallest eigenvalue (double precision).
  double min_eigenvalue() const;
  bool is_positive() const { return min_eigenvalue() > 0.0; }
  bool is_identity() const;

  friend bool operator==(const MatrixCoefficient&, const MatrixCoefficient&) = default;

 private:
  int n_ = 0;
  int q_ = 0;
  std::vector<std::vector<Rational>> entries_;
};

}  // namespace drstokes
