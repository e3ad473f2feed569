#include "drstokes/quadrature.hpp"

#include <algorithm>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <numbers>

#include "drstokes/errors.hpp"
#include "drstokes/kernels.hpp"

namespace drstokes {

namespace {

constexpr double pi = std::numbers::pi;

double pairwise(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0;
    for (std::size_t k = 0; k < n; ++k) s += v[k];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise(v, h) + pairwise(v + h, n - h);
}

}  // namespace

GaussRule gauss_legendre(int count) {
  if (count < 1) throw ParameterError("Gauss-Legendre rule needs at least one node");
  const auto zeros = boost::math::legendre_p_zeros<double>(count);  // nonnegative zeros, ascending
  GaussRule r;
  for (double z : zeros) {
    const double dp = boost::math::legendre_p_prime<double>(count, z);
    const double w = 2.0 / ((1 - z * z) * dp * dp);
    r.nodes.push_back(z);
    r.weights.push_back(w);
    if (z != 0.0) {
      r.nodes.push_back(-z);
      r.weights.push_back(w);
    }
  }
  std::vector<std::size_t> order(r.nodes.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r.nodes[a] < r.nodes[b]; });
  GaussRule s;
  for (auto k : order) {
    s.nodes.push_back(r.nodes[k]);
    s.weights.push_back(r.weights[k]);
  }
  return s;
}

const char* to_string(DomainShape s) { return s == DomainShape::Ball ? "ball" : "box"; }

DomainShape parse_domain_shape(const std::string& s) {
  if (s == "ball") return DomainShape::Ball;
  if (s == "box") return DomainShape::Box;
  throw ParameterError("unknown domain shape '" + s + "' (expected ball or box)");
}

DomainSpec DomainSpec::ball(int n, double radius) { return ball(std::vector<double>(n, 0.0), radius); }

DomainSpec DomainSpec::ball(std::vector<double> center, double radius) {
  DomainSpec d;
  d.shape = DomainShape::Ball;
  d.n = static_cast<int>(center.size());
  d.center = std::move(center);
  d.radius = radius;
  d.validate();
  return d;
}

DomainSpec DomainSpec::box(std::vector<double> lo, std::vector<double> hi) {
  DomainSpec d;
  d.shape = DomainShape::Box;
  d.n = static_cast<int>(lo.size());
  d.lo = std::move(lo);
  d.hi = std::move(hi);
  d.validate();
  return d;
}

void DomainSpec::validate() const {
  if (n != 2 && n != 3) throw UnsupportedConfiguration("boundary quadrature is implemented for n = 2, 3 only");
  if (shape == DomainShape::Ball) {
    if (static_cast<int>(center.size()) != n) throw DimensionMismatch("ball center has the wrong dimension");
    if (!(radius > 0)) throw ParameterError("ball radius must be positive");
  } else {
    if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n)
      throw DimensionMismatch("box corners have the wrong dimension");
    for (int a = 0; a < n; ++a)
      if (!(hi[a] > lo[a])) throw ParameterError("box must have positive extent on every axis");
  }
}

double DomainSpec::diameter() const {
  if (shape == DomainShape::Ball) return 2 * radius;
  double s = 0;
  for (int a = 0; a < n; ++a) s += (hi[a] - lo[a]) * (hi[a] - lo[a]);
  return std::sqrt(s);
}

bool DomainSpec::contains(const std::vector<double>& x) const {
  if (shape == DomainShape::Ball) {
    double s = 0;
    for (int a = 0; a < n; ++a) s += (x[a] - center[a]) * (x[a] - center[a]);
    return s < radius * radius;
  }
  for (int a = 0; a < n; ++a)
    if (!(x[a] > lo[a] && x[a] < hi[a])) return false;
  return true;
}

double DomainSpec::distance_to_boundary(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n) throw DimensionMismatch("point has the wrong dimension");
  if (shape == DomainShape::Ball) {
    double s = 0;
    for (int a = 0; a < n; ++a) s += (x[a] - center[a]) * (x[a] - center[a]);
    return std::abs(std::sqrt(s) - radius);
  }
  if (contains(x)) {
    double m = INFINITY;
    for (int a = 0; a < n; ++a) m = std::min({m, x[a] - lo[a], hi[a] - x[a]});
    return m;
  }
  double s = 0;
  for (int a = 0; a < n; ++a) {
    const double e = std::max({lo[a] - x[a], 0.0, x[a] - hi[a]});
    s += e * e;
  }
  return std::sqrt(s);
}

double DomainSpec::surface_area() const {
  if (shape == DomainShape::Ball) return sphere_area(n) * std::pow(radius, n - 1);
  double total = 0;
  for (int a = 0; a < n; ++a) {
    double face = 1;
    for (int b = 0; b < n; ++b)
      if (b != a) face *= hi[b] - lo[b];
    total += 2 * face;
  }
  return total;
}

double DomainSpec::volume() const {
  if (shape == DomainShape::Ball) return sphere_area(n) * std::pow(radius, n) / n;
  double v = 1;
  for (int a = 0; a < n; ++a) v *= hi[a] - lo[a];
  return v;
}

BoundaryQuadrature boundary_quadrature(const DomainSpec& d, int m) {
  d.validate();
  if (m < 2) throw ParameterError("quad.nodes_per_axis must be >= 2");
  BoundaryQuadrature q;
  q.n = d.n;
  auto push = [&](std::vector<double> x, std::vector<double> nu, double w) {
    q.nodes.push_back(std::move(x));
    q.normals.push_back(std::move(nu));
    q.weights.push_back(w);
  };
  if (d.shape == DomainShape::Ball) {
    const double R = d.radius;
    if (d.n == 2) {
      const int k = 2 * m;
      for (int j = 0; j < k; ++j) {
        const double t = 2 * pi * j / k;
        const std::vector<double> nu{std::cos(t), std::sin(t)};
        push({d.center[0] + R * nu[0], d.center[1] + R * nu[1]}, nu, 2 * pi * R / k);
      }
      q.max_spacing = 2 * pi * R / k;
    } else {
      const GaussRule g = gauss_legendre(m);
      const int k = 2 * m;
      double gap = 0;
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double ct = g.nodes[i], st = std::sqrt(1 - ct * ct);
        for (int j = 0; j < k; ++j) {
          const double ph = 2 * pi * j / k;
          const std::vector<double> nu{st * std::cos(ph), st * std::sin(ph), ct};
          push({d.center[0] + R * nu[0], d.center[1] + R * nu[1], d.center[2] + R * nu[2]}, nu,
               R * R * g.weights[i] * 2 * pi / k);
        }
        gap = std::max(gap, R * st * 2 * pi / k);
        if (i + 1 < g.nodes.size()) gap = std::max(gap, R * (std::acos(g.nodes[i]) - std::acos(g.nodes[i + 1])));
      }
      q.max_spacing = gap;
    }
    return q;
  }
  const GaussRule g = gauss_legendre(m);
  double gap = 0;
  for (std::size_t i = 0; i + 1 < g.nodes.size(); ++i) gap = std::max(gap, g.nodes[i + 1] - g.nodes[i]);
  gap = std::max(gap, 2 * (1 + g.nodes.front()));  // across a corner
  double widest = 0;
  for (int a = 0; a < d.n; ++a) widest = std::max(widest, 0.5 * (d.hi[a] - d.lo[a]));
  q.max_spacing = gap * widest;
  for (int axis = 0; axis < d.n; ++axis)
    for (int side = 0; side < 2; ++side) {
      std::vector<int> others;
      for (int b = 0; b < d.n; ++b)
        if (b != axis) others.push_back(b);
      std::size_t total = 1;
      for (std::size_t k = 0; k < others.size(); ++k) total *= g.nodes.size();
      for (std::size_t flat = 0; flat < total; ++flat) {
        std::vector<double> x(d.n), nu(d.n, 0.0);
        x[axis] = side ? d.hi[axis] : d.lo[axis];
        nu[axis] = side ? 1.0 : -1.0;
        double w = 1;
        std::size_t rest = flat;
        for (int b : others) {
          const std::size_t k = rest % g.nodes.size();
          rest /= g.nodes.size();
          const double half = 0.5 * (d.hi[b] - d.lo[b]);
          x[b] = d.lo[b] + half * (g.nodes[k] + 1);
          w *= half * g.weights[k];
        }
        push(std::move(x), std::move(nu), w);
      }
    }
  return q;
}

VolumeQuadrature volume_quadrature(const DomainSpec& d, int m) {
  d.validate();
  if (m < 2) throw ParameterError("quad.nodes_per_axis must be >= 2");
  VolumeQuadrature v;
  const GaussRule g = gauss_legendre(m);
  if (d.shape == DomainShape::Ball) {
    const DomainSpec unit = DomainSpec::ball(d.n, 1.0);
    const BoundaryQuadrature s = boundary_quadrature(unit, m);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double r = 0.5 * d.radius * (g.nodes[i] + 1);
      const double wr = 0.5 * d.radius * g.weights[i] * std::pow(r, d.n - 1);
      for (std::size_t k = 0; k < s.size(); ++k) {
        std::vector<double> x(d.n);
        for (int a = 0; a < d.n; ++a) x[a] = d.center[a] + r * s.nodes[k][a];
        v.points.push_back(std::move(x));
        v.weights.push_back(wr * s.weights[k]);
      }
    }
    return v;
  }
  std::size_t total = 1;
  for (int a = 0; a < d.n; ++a) total *= g.nodes.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::vector<double> x(d.n);
    double w = 1;
    std::size_t rest = flat;
    for (int a = 0; a < d.n; ++a) {
      const std::size_t k = rest % g.nodes.size();
      rest /= g.nodes.size();
      const double half = 0.5 * (d.hi[a] - d.lo[a]);
      x[a] = d.lo[a] + half * (g.nodes[k] + 1);
      w *= half * g.weights[k];
    }
    v.points.push_back(std::move(x));
    v.weights.push_back(w);
  }
  return v;
}

double boundary_collar(const BoundaryQuadrature& q) { return 4 * q.max_spacing; }

double pairwise_sum(const std::vector<double>& v) { return pairwise(v.data(), v.size()); }

}  // namespace drstokes
