#pragma once

#include <random>
#include <span>
#include <vector>

#include "drstokes/form.hpp"
#include "drstokes/grid.hpp"

namespace drstokes {

/// beta(t) = exp(-s/(1-t^2)) for |t| < 1, else 0, and its first `order`
/// derivatives at t (out[k] = beta^{(k)}(t)). s = 1 is the standard bump;
/// larger s concentrates the mass and flattens the flanks near |t| = 1.
void bump_profile(double t, int order, std::span<double> out, double s = 1.0);

/// Tensor bump amplitude * prod_k beta((x_k - c_k) / radius).
struct Bump {
  std::vector<double> center;
  double radius = 1.0;
  double amplitude = 1.0;
  double sharpness = 1.0;

  friend bool operator==(const Bump&, const Bump&) = default;
};

/// Finite linear combination of partial derivatives of tensor bumps. Used as
/// a form coefficient so d, d*, and the Lame operators act exactly; sampling
/// onto a grid happens last.
class BumpSum {
 public:
  struct Term {
    double coef;
    Bump bump;
    std::vector<int> orders;  // derivative order per axis
  };

  BumpSum() = default;
  explicit BumpSum(Bump b, double coef = 1.0);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  double operator()(std::span<const double> x) const;
  GridFunction sample(const GridSpec& grid) const;
  /// Largest distance from the origin (sup norm) any term can reach.
  double support_extent() const;

  BumpSum derivative(int axis) const;
  BumpSum& operator+=(const BumpSum& o);
  BumpSum& operator-=(const BumpSum& o);
  BumpSum& operator*=(double c);
  friend BumpSum operator+(BumpSum a, const BumpSum& b) { return a += b; }
  friend BumpSum operator-(BumpSum a, const BumpSum& b) { return a -= b; }
  friend BumpSum operator*(double c, BumpSum a) { return a *= c; }
  BumpSum operator-() const { return -1.0 * *this; }

 private:
  std::vector<Term> terms_;
};

inline BumpSum zero_like(const BumpSum&) { return {}; }
BumpSum constant_like(const BumpSum&, const Rational& c);
inline BumpSum partial(const BumpSum& f, int axis) { return f.derivative(axis); }
inline bool is_zero(const BumpSum& f) { return f.terms().empty(); }
inline BumpSum scaled(const BumpSum& f, const Rational& c) { return to_double(c) * f; }

using BumpForm = Form<BumpSum>;

GridForm sample(const BumpForm& u, const GridSpec& grid);

/// Form whose every component is an independent random bump: centers in
/// [-spread, spread]^n, radius in [rmin, rmax], amplitude in [-1, 1].
BumpForm random_bump_form(int n, int q, std::mt19937_64& rng, double spread, double rmin, double rmax);

}  // namespace drstokes
