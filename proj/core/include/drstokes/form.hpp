#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "drstokes/errors.hpp"
#include "drstokes/multi_index.hpp"
#include "drstokes/rational.hpp"

namespace drstokes {

// Coefficient protocol for plain doubles (pointwise form values).
inline double zero_like(double) { return 0.0; }
inline double constant_like(double, const Rational& c) { return to_double(c); }
inline double scaled(double x, const Rational& c) { return x * to_double(c); }
inline bool is_zero(double x) { return x == 0.0; }
inline double partial(double, int) { throw Error("pointwise values carry no derivative information"); }

/// Differential form of degree q on R^n: one coefficient per multi-index, in
/// lexicographic order.
///
/// `C` is the coefficient type: an exact Polynomial, a sampled GridFunction,
/// a plain double, or any type that provides zero_like / constant_like /
/// scaled / partial and the usual additive operators.
template <class C>
class Form {
 public:
  Form(int n, int q, const C& zero) : n_(n), q_(q) {
    check_degree();
    coeffs_.assign(static_cast<std::size_t>(binomial(n, q)), zero_like(zero));
  }

  Form(int n, int q, std::vector<C> coeffs) : n_(n), q_(q), coeffs_(std::move(coeffs)) {
    check_degree();
    if (coeffs_.size() != static_cast<std::size_t>(binomial(n, q)))
      throw DimensionMismatch("form needs binomial(n, q) coefficients");
  }

  int dim() const noexcept { return n_; }
  int degree() const noexcept { return q_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  const C& operator[](std::size_t k) const { return coeffs_[k]; }
  C& operator[](std::size_t k) { return coeffs_[k]; }
  const C& at(const MultiIndex& I) const { return coeffs_.at(rank_of(checked(I))); }
  C& at(const MultiIndex& I) { return coeffs_.at(rank_of(checked(I))); }

  const std::vector<C>& coefficients() const noexcept { return coeffs_; }
  /// A zero coefficient of the right shape.
  C zero_coefficient() const { return zero_like(coeffs_.front()); }
  Form zero_of_degree(int q) const { return Form(n_, q, coeffs_.front()); }

  bool is_zero() const {
    using drstokes::is_zero;  // keeps argument-dependent lookup for C
    for (const auto& c : coeffs_)
      if (!is_zero(c)) return false;
    return true;
  }

  Form& operator+=(const Form& o) {
    same_shape(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] = coeffs_[k] + o.coeffs_[k];
    return *this;
  }
  Form& operator-=(const Form& o) {
    same_shape(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] = coeffs_[k] - o.coeffs_[k];
    return *this;
  }
  Form operator-() const {
    Form r(*this);
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Rational& s, const Form& f) {
    Form r(f);
    for (auto& c : r.coeffs_) c = scaled(c, s);
    return r;
  }

  friend bool operator==(const Form& a, const Form& b) {
    return a.n_ == b.n_ && a.q_ == b.q_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_degree() const {
    if (n_ < 1) throw DimensionMismatch("ambient dimension must be positive");
    if (q_ < 0 || q_ > n_) throw DegreeMismatch("form degree outside 0..n");
  }
  const MultiIndex& checked(const MultiIndex& I) const {
    if (I.dim() != n_ || I.degree() != q_) throw DimensionMismatch("multi-index does not match form");
    return I;
  }
  void same_shape(const Form& o) const {
    if (o.n_ != n_) throw DimensionMismatch("forms live in different dimensions");
    if (o.q_ != q_) throw DegreeMismatch("forms have different degrees");
  }

  int n_;
  int q_;
  std::vector<C> coeffs_;
};

/// Basis form c·dx_I with constant coefficient, shaped like `proto`.
template <class C>
Form<C> basis_form(const MultiIndex& I, const C& proto, const Rational& c = 1) {
  Form<C> f(I.dim(), I.degree(), proto);
  f[rank_of(I)] = constant_like(proto, c);
  return f;
}

}  // namespace drstokes
