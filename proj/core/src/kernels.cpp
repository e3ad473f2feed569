#include "drstokes/kernels.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "drstokes/errors.hpp"

namespace drstokes {

namespace {

constexpr double pi = std::numbers::pi;

double norm(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void require_numeric_dim(KernelKind kind, int n) {
  if (n < 2) throw UnsupportedConfiguration("kernels need n >= 2");
  if (kind == KernelKind::Biharmonic && n > 3) throw UnsupportedConfiguration("biharmonic kernel implemented for n = 2, 3 only");
}

// Radial profile K(r) = r^p (alpha ln r + beta).
struct Profile {
  int p;
  double alpha;
  double beta;
};

Profile profile(KernelKind kind, int n) {
  require_numeric_dim(kind, n);
  if (kind == KernelKind::Newtonian) {
    if (n == 2) return {0, 1.0 / (2 * pi), 0.0};
    return {2 - n, 0.0, 1.0 / (sphere_area(n) * (2 - n))};
  }
  if (n == 2) return {2, 1.0 / (8 * pi), -1.0 / (8 * pi)};
  return {1, 0.0, -1.0 / (8 * pi)};
}

// Radial factors f1 = K'/r, f2 = f1'/r, f3 = f2'/r.
void radial_factors(KernelKind kind, int n, double r, double& f1, double& f2, double& f3) {
  if (kind == KernelKind::Newtonian) {
    const double s = sphere_area(n);
    f1 = std::pow(r, -n) / s;
    f2 = -n * std::pow(r, -n - 2) / s;
    f3 = n * (n + 2) * std::pow(r, -n - 4) / s;
  } else if (n == 3) {
    f1 = -1.0 / (8 * pi * r);
    f2 = 1.0 / (8 * pi * r * r * r);
    f3 = -3.0 / (8 * pi * std::pow(r, 5));
  } else {
    f1 = (2 * std::log(r) - 1) / (8 * pi);
    f2 = 1.0 / (4 * pi * r * r);
    f3 = -1.0 / (2 * pi * std::pow(r, 4));
  }
}

// Tensor Gauss-Legendre over the box [lo, lo + w]^n of r^p and r^p ln r.
void gauss_box(int n, int p, const std::vector<double>& lo, double w, double& ip, double& il) {
  using rule = boost::math::quadrature::gauss<double, 20>;
  static const auto nodes = [] {
    std::vector<std::pair<double, double>> v;
    for (std::size_t k = 0; k < rule::abscissa().size(); ++k) {
      v.emplace_back(rule::abscissa()[k], rule::weights()[k]);
      if (rule::abscissa()[k] != 0.0) v.emplace_back(-rule::abscissa()[k], rule::weights()[k]);
    }
    return v;
  }();
  const std::size_t m = nodes.size();
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) total *= m;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    double r2 = 0, wt = 1;
    for (int a = 0; a < n; ++a) {
      const auto& [t, wk] = nodes[rest % m];
      rest /= m;
      const double x = lo[a] + 0.5 * w * (t + 1);
      r2 += x * x;
      wt *= 0.5 * w * wk;
    }
    const double r = std::sqrt(r2);
    const double rp = std::pow(r, p);
    ip += wt * rp;
    il += wt * rp * std::log(r);
  }
}

// Integrals of r^p and r^p ln r over [0,1]^n minus the corner [0,1/2]^n,
// each of the 2^n - 1 regular subcubes split into m^n boxes.
void regular_part(int n, int p, int m, double& rp, double& rl) {
  rp = rl = 0;
  const double w = 0.5 / m;
  std::vector<double> lo(n);
  for (int corner = 1; corner < (1 << n); ++corner) {
    std::size_t boxes = 1;
    for (int a = 0; a < n; ++a) boxes *= static_cast<std::size_t>(m);
    for (std::size_t b = 0; b < boxes; ++b) {
      std::size_t rest = b;
      for (int a = 0; a < n; ++a) {
        lo[a] = ((corner >> a) & 1 ? 0.5 : 0.0) + static_cast<double>(rest % m) * w;
        rest /= m;
      }
      gauss_box(n, p, lo, w, rp, rl);
    }
  }
}

// Unit-cube integrals P = int r^p, L = int r^p ln r.
std::pair<double, double> unit_cube_integrals(int n, int p, double tol) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, double>, std::pair<double, double>> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_tuple(n, p, tol);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  double rp = 0, rl = 0;
  regular_part(n, p, 1, rp, rl);
  for (int m = 2; m <= 16; m *= 2) {
    double np = 0, nl = 0;
    regular_part(n, p, m, np, nl);
    const bool done = std::abs(np - rp) <= tol * std::abs(np) && std::abs(nl - rl) <= tol * std::max(1.0, std::abs(nl));
    rp = np;
    rl = nl;
    if (done) break;
  }
  const double s = std::pow(2.0, -(n + p));
  const double P = rp / (1 - s);
  const double L = (rl - s * std::log(2.0) * P) / (1 - s);
  return cache[key] = {P, L};
}

}  // namespace

const char* to_string(KernelKind k) { return k == KernelKind::Newtonian ? "newtonian" : "biharmonic"; }

double sphere_area(int n) {
  if (n < 1) throw ParameterError("sphere_area needs n >= 1");
  return 2 * std::pow(pi, n / 2.0) / std::tgamma(n / 2.0);
}

double eval_g(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (n < 2) throw UnsupportedConfiguration("eval_g needs n >= 2");
  const double r = norm(x);
  if (r == 0) throw SingularityError("g is singular at x = 0");
  if (n == 2) return std::log(r) / (2 * pi);
  return std::pow(r, 2 - n) / (sphere_area(n) * (2 - n));
}

double eval_biharmonic_b(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  require_numeric_dim(KernelKind::Biharmonic, n);
  const double r = norm(x);
  if (r == 0) throw SingularityError("B is singular at x = 0");
  if (n == 3) return -r / (8 * pi);
  return r * r * (std::log(r) - 1) / (8 * pi);
}

double eval_kernel(KernelKind kind, std::span<const double> x) {
  return kind == KernelKind::Newtonian ? eval_g(x) : eval_biharmonic_b(x);
}

KernelJet kernel_jet(KernelKind kind, std::span<const double> x, int order) {
  const int n = static_cast<int>(x.size());
  if (order < 0 || order > 3) throw ParameterError("kernel jets go up to order 3");
  KernelJet j;
  j.n = n;
  j.value = eval_kernel(kind, x);
  if (order == 0) return j;
  const double r = norm(x);
  double f1, f2, f3;
  radial_factors(kind, n, r, f1, f2, f3);
  j.grad.resize(n);
  for (int a = 0; a < n; ++a) j.grad[a] = f1 * x[a];
  if (order == 1) return j;
  j.hess.resize(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) j.hess[a * n + b] = (a == b ? f1 : 0.0) + f2 * x[a] * x[b];
  if (order == 2) return j;
  j.third.resize(n * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double v = f3 * x[a] * x[b] * x[c];
        if (a == b) v += f2 * x[c];
        if (a == c) v += f2 * x[b];
        if (b == c) v += f2 * x[a];
        j.third[(a * n + b) * n + c] = v;
      }
  return j;
}

double singular_cell_average(KernelKind kind, int n, double h, double tol) {
  if (!(h > 0)) throw ParameterError("cell width must be positive");
  if (!(tol > 0)) throw ParameterError("singular_tol must be positive");
  const Profile pr = profile(kind, n);
  const auto [P, L] = unit_cube_integrals(n, pr.p, tol);
  // Average over [-1/2,1/2]^n of f(|x|) equals the integral over [0,1]^n of f(|y|/2).
  const double scale = std::pow(2.0, -pr.p);
  const double a_pow = scale * P;
  const double a_log = scale * (L - std::log(2.0) * P);
  return std::pow(h, pr.p) * (pr.alpha * a_log + (pr.alpha * std::log(h) + pr.beta) * a_pow);
}

}  // namespace drstokes
