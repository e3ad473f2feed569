#include "drstokes/polynomial.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "drstokes/errors.hpp"

namespace drstokes {

Polynomial Polynomial::constant(int n, const Rational& c) {
  Polynomial p(n);
  p.add_term(Exponents(n, 0), c);
  return p;
}

Polynomial Polynomial::coordinate(int n, int axis) {
  Exponents e(n, 0);
  e.at(axis) = 1;
  return monomial(n, std::move(e));
}

Polynomial Polynomial::monomial(int n, Exponents exps, const Rational& c) {
  if (static_cast<int>(exps.size()) != n) throw DimensionMismatch("monomial exponent count differs from dimension");
  Polynomial p(n);
  p.add_term(exps, c);
  return p;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

void Polynomial::add_term(const Exponents& exps, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.n_ != n_) throw DimensionMismatch("polynomial dimension mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.n_ != n_) throw DimensionMismatch("polynomial dimension mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.n_ != b.n_) throw DimensionMismatch("polynomial dimension mismatch");
  Polynomial r(a.n_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e(ea);
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial Polynomial::derivative(int axis) const {
  if (axis < 0 || axis >= n_) throw DimensionMismatch("derivative axis out of range");
  Polynomial r(n_);
  for (const auto& [e, c] : terms_) {
    if (e[axis] == 0) continue;
    Exponents d(e);
    d[axis] -= 1;
    r.add_term(d, c * e[axis]);
  }
  return r;
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw DimensionMismatch("evaluation point has wrong dimension");
  double s = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = to_double(c);
    for (int k = 0; k < n_; ++k) m *= std::pow(x[k], e[k]);
    s += m;
  }
  return s;
}

Rational Polynomial::evaluate_exact(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != n_) throw DimensionMismatch("evaluation point has wrong dimension");
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (int k = 0; k < n_; ++k)
      for (int p = 0; p < e[k]; ++p) m *= x[k];
    s += m;
  }
  return s;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (int k = 0; k < n_; ++k)
      if (e[k]) os << "*x" << (k + 1) << (e[k] > 1 ? "^" + std::to_string(e[k]) : "");
  }
  return os.str();
}

}  // namespace drstokes
