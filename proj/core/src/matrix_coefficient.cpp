#include "drstokes/matrix_coefficient.hpp"

#include <Eigen/Dense>

#include "drstokes/errors.hpp"
#include "drstokes/multi_index.hpp"

namespace drstokes {

MatrixCoefficient::MatrixCoefficient(int n, int q, std::vector<std::vector<Rational>> entries)
    : n_(n), q_(q), entries_(std::move(entries)) {
  const auto k = static_cast<std::size_t>(binomial(n, q));
  if (q < 0 || q > n || entries_.size() != k) throw DimensionMismatch("matrix size must be binomial(n, q)");
  for (const auto& row : entries_)
    if (row.size() != k) throw DimensionMismatch("matrix must be square");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (entries_[i][j] != entries_[j][i]) throw ParameterError("coefficient matrix must be symmetric");
}

MatrixCoefficient MatrixCoefficient::identity(int n, int q) { return scalar(n, q, 1); }

MatrixCoefficient MatrixCoefficient::scalar(int n, int q, const Rational& c) {
  const auto k = static_cast<std::size_t>(binomial(n, q));
  std::vector<std::vector<Rational>> e(k, std::vector<Rational>(k, 0));
  for (std::size_t i = 0; i < k; ++i) e[i][i] = c;
  return MatrixCoefficient(n, q, std::move(e));
}

MatrixCoefficient MatrixCoefficient::from_doubles(int n, int q, const std::vector<std::vector<double>>& entries) {
  std::vector<std::vector<Rational>> e;
  e.reserve(entries.size());
  for (const auto& row : entries) {
    auto& r = e.emplace_back();
    for (double v : row) r.push_back(rational_from_double(v));
  }
  return MatrixCoefficient(n, q, std::move(e));
}

double MatrixCoefficient::min_eigenvalue() const {
  const auto k = static_cast<Eigen::Index>(entries_.size());
  if (k == 0) return 0.0;
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = to_double(entries_[i][j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool MatrixCoefficient::is_identity() const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    for (std::size_t j = 0; j < entries_.size(); ++j)
      if (entries_[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

}  // namespace drstokes
