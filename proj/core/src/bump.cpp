#include "drstokes/bump.hpp"

#include <algorithm>
#include <cmath>

#include "drstokes/errors.hpp"

namespace drstokes {

void bump_profile(double t, int order, std::span<double> out, double s) {
  if (out.size() < static_cast<std::size_t>(order + 1)) throw DimensionMismatch("bump_profile output too short");
  std::fill(out.begin(), out.begin() + order + 1, 0.0);
  if (std::abs(t) >= 1) return;
  // Taylor coefficients in e of f(t + e) = -s / (1 - (t + e)^2), then of exp(f).
  const int K = order;
  std::vector<double> c(K + 1), f(K + 1), e(K + 1);
  const double d0 = 1 - t * t, d1 = -2 * t, d2 = -1;
  for (int k = 0; k <= K; ++k) {
    double v = k == 0 ? 1.0 : 0.0;
    if (k >= 1) v -= d1 * c[k - 1];
    if (k >= 2) v -= d2 * c[k - 2];
    c[k] = v / d0;
    f[k] = -s * c[k];
  }
  e[0] = std::exp(f[0]);
  for (int k = 1; k <= K; ++k) {
    double acc = 0;
    for (int j = 1; j <= k; ++j) acc += j * f[j] * e[k - j];
    e[k] = acc / k;
  }
  double fact = 1;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) fact *= k;
    out[k] = fact * e[k];
  }
}

BumpSum::BumpSum(Bump b, double coef) {
  if (!(b.radius > 0)) throw ParameterError("bump radius must be positive");
  if (!(b.sharpness > 0)) throw ParameterError("bump sharpness must be positive");
  const std::size_t n = b.center.size();
  terms_.push_back({coef, std::move(b), std::vector<int>(n, 0)});
}

double BumpSum::operator()(std::span<const double> x) const {
  double total = 0;
  std::vector<double> prof;
  for (const auto& t : terms_) {
    if (t.bump.center.size() != x.size()) throw DimensionMismatch("bump dimension does not match point");
    double v = t.coef * t.bump.amplitude;
    for (std::size_t k = 0; k < x.size() && v != 0; ++k) {
      const int o = t.orders[k];
      prof.resize(o + 1);
      bump_profile((x[k] - t.bump.center[k]) / t.bump.radius, o, prof, t.bump.sharpness);
      v *= prof[o] / std::pow(t.bump.radius, o);
    }
    total += v;
  }
  return total;
}

GridFunction BumpSum::sample(const GridSpec& grid) const {
  return GridFunction::sample(grid, [this](std::span<const double> x) { return (*this)(x); });
}

double BumpSum::support_extent() const {
  double m = 0;
  for (const auto& t : terms_)
    for (double c : t.bump.center) m = std::max(m, std::abs(c) + t.bump.radius);
  return m;
}

BumpSum BumpSum::derivative(int axis) const {
  BumpSum r = *this;
  for (auto& t : r.terms_) {
    if (axis < 0 || axis >= static_cast<int>(t.orders.size())) throw DimensionMismatch("derivative axis out of range");
    ++t.orders[axis];
  }
  return r;
}

BumpSum& BumpSum::operator+=(const BumpSum& o) {
  for (const auto& t : o.terms_) {
    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const Term& s) { return s.bump == t.bump && s.orders == t.orders; });
    if (it == terms_.end()) {
      terms_.push_back(t);
    } else {
      it->coef += t.coef;
      if (it->coef == 0) terms_.erase(it);
    }
  }
  return *this;
}

BumpSum& BumpSum::operator-=(const BumpSum& o) { return *this += -1.0 * o; }

BumpSum& BumpSum::operator*=(double c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= c;
  return *this;
}

BumpSum constant_like(const BumpSum&, const Rational& c) {
  if (c != 0) throw UnsupportedConfiguration("bump sums cannot represent nonzero constants");
  return {};
}

GridForm sample(const BumpForm& u, const GridSpec& grid) {
  std::vector<GridFunction> comps;
  comps.reserve(u.size());
  for (const auto& c : u.coefficients()) comps.push_back(c.sample(grid));
  return GridForm(u.dim(), u.degree(), std::move(comps));
}

BumpForm random_bump_form(int n, int q, std::mt19937_64& rng, double spread, double rmin, double rmax) {
  std::uniform_real_distribution<double> pos(-spread, spread), rad(rmin, rmax), amp(-1.0, 1.0);
  std::vector<BumpSum> comps;
  for (long long k = 0; k < binomial(n, q); ++k) {
    Bump b;
    for (int a = 0; a < n; ++a) b.center.push_back(pos(rng));
    b.radius = rad(rng);
    b.amplitude = amp(rng);
    comps.emplace_back(std::move(b));
  }
  return BumpForm(n, q, std::move(comps));
}

}  // namespace drstokes
