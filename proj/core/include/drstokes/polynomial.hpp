#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "drstokes/rational.hpp"

namespace drstokes {

/// Multivariate polynomial in n variables with exact rational coefficients.
/// Zero coefficients are never stored, so equality is structural.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  Polynomial() = default;
  explicit Polynomial(int n) : n_(n) {}

  static Polynomial constant(int n, const Rational& c);
  /// The coordinate function x_axis (0-based).
  static Polynomial coordinate(int n, int axis);
  static Polynomial monomial(int n, Exponents exps, const Rational& c = 1);

  int dim() const noexcept { return n_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int total_degree() const;
  const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }

  /// Adds c·x^exps.
  void add_term(const Exponents& exps, const Rational& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  Polynomial derivative(int axis) const;
  double evaluate(std::span<const double> x) const;
  Rational evaluate_exact(std::span<const Rational> x) const;

  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

 private:
  int n_ = 0;
  std::map<Exponents, Rational> terms_;
};

// Coefficient protocol used by the generic form operations.
inline Polynomial zero_like(const Polynomial& p) { return Polynomial(p.dim()); }
inline Polynomial constant_like(const Polynomial& p, const Rational& c) { return Polynomial::constant(p.dim(), c); }
inline Polynomial partial(const Polynomial& p, int axis) { return p.derivative(axis); }
inline bool is_zero(const Polynomial& p) { return p.is_zero(); }
inline Polynomial scaled(const Polynomial& p, const Rational& c) { return p * c; }

}  // namespace drstokes
