#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "drstokes/bump.hpp"
#include "drstokes/convolution.hpp"
#include "drstokes/errors.hpp"
#include "drstokes/grid_potentials.hpp"
#include "drstokes/kernels.hpp"

using namespace drstokes;

namespace {

constexpr double pi = std::numbers::pi;

// Cell integrals over the centered unit cube, computed independently with
// mpmath by reduction to smooth face integrals.
constexpr double kMeanLogUnitSquare = -1.06117542688252434509;
constexpr double kInvRUnitCube = 2.38007736397955350664;
constexpr double kRUnitCube = 0.48029597822752647971;

double fd_derivative(KernelKind k, std::vector<double> x, int axis, double h = 1e-5) {
  x[axis] += h;
  const double p = eval_kernel(k, x);
  x[axis] -= 2 * h;
  const double m = eval_kernel(k, x);
  return (p - m) / (2 * h);
}

BumpForm sharp_bump_form(int n, int q, std::mt19937_64& rng, double radius = 0.8) {
  std::uniform_real_distribution<double> c(-0.05, 0.05), a(0.5, 1.0);
  BumpForm u(n, q, BumpSum{});
  for (std::size_t k = 0; k < u.size(); ++k) {
    Bump b;
    for (int i = 0; i < n; ++i) b.center.push_back(c(rng));
    b.radius = radius;
    b.amplitude = (k % 2 ? -1 : 1) * a(rng);
    b.sharpness = 2;
    u[k] = BumpSum(b);
  }
  return u;
}

}  // namespace

TEST_SUITE("potential_kernels") {
  TEST_CASE("sphere areas and kernel values") {
    CHECK(sphere_area(2) == doctest::Approx(2 * pi));
    CHECK(sphere_area(3) == doctest::Approx(4 * pi));
    const std::vector<double> e1{1, 0, 0}, x2{3, 4};
    CHECK(eval_g(e1) == doctest::Approx(-1 / (4 * pi)));
    CHECK(eval_g(x2) == doctest::Approx(std::log(5.0) / (2 * pi)));
    CHECK(eval_biharmonic_b(e1) == doctest::Approx(-1 / (8 * pi)));
    CHECK_THROWS_AS(eval_g(std::vector<double>{0, 0}), SingularityError);
    CHECK_THROWS_AS(eval_biharmonic_b(std::vector<double>{1, 0, 0, 0}), Error);
  }

  TEST_CASE("jets agree with finite differences") {
    for (int n = 2; n <= 3; ++n)
      for (KernelKind k : {KernelKind::Newtonian, KernelKind::Biharmonic}) {
        const std::vector<double> x = n == 2 ? std::vector<double>{0.7, -0.4} : std::vector<double>{0.7, -0.4, 0.3};
        const KernelJet j = kernel_jet(k, x, 3);
        for (int a = 0; a < n; ++a) {
          CHECK(j.grad[a] == doctest::Approx(fd_derivative(k, x, a)).epsilon(1e-7));
          for (int b = 0; b < n; ++b) {
            std::vector<double> xp = x, xm = x;
            xp[b] += 1e-5;
            xm[b] -= 1e-5;
            const double fd = (kernel_jet(k, xp, 1).grad[a] - kernel_jet(k, xm, 1).grad[a]) / 2e-5;
            CHECK(j.hess[a * n + b] == doctest::Approx(fd).epsilon(1e-6));
            for (int c = 0; c < n; ++c) {
              std::vector<double> yp = x, ym = x;
              yp[c] += 1e-5;
              ym[c] -= 1e-5;
              const double fd3 = (kernel_jet(k, yp, 2).hess[a * n + b] - kernel_jet(k, ym, 2).hess[a * n + b]) / 2e-5;
              CHECK(j.third[(a * n + b) * n + c] == doctest::Approx(fd3).epsilon(1e-5));
            }
          }
        }
      }
  }

  TEST_CASE("Laplacian of B is g") {
    for (int n = 2; n <= 3; ++n) {
      const std::vector<double> x = n == 2 ? std::vector<double>{0.3, 1.1} : std::vector<double>{0.3, 1.1, -0.5};
      const KernelJet j = kernel_jet(KernelKind::Biharmonic, x, 2);
      double lap = 0;
      for (int a = 0; a < n; ++a) lap += j.hess[a * n + a];
      CHECK(lap == doctest::Approx(eval_g(x)).epsilon(1e-12));
    }
  }

  TEST_CASE("singular cell averages match independent cube integrals") {
    for (double h : {1.0, 0.1, 0.03125}) {
      CHECK(singular_cell_average(KernelKind::Newtonian, 2, h) ==
            doctest::Approx((kMeanLogUnitSquare + std::log(h)) / (2 * pi)).epsilon(1e-9));
      CHECK(singular_cell_average(KernelKind::Newtonian, 3, h) ==
            doctest::Approx(-kInvRUnitCube / h / (4 * pi)).epsilon(1e-9));
      CHECK(singular_cell_average(KernelKind::Biharmonic, 3, h) ==
            doctest::Approx(-kRUnitCube * h / (8 * pi)).epsilon(1e-9));
    }
  }

  TEST_CASE("FFT and direct convolution agree on 16^n grids") {
    std::mt19937_64 rng(11);
    for (int n = 2; n <= 3; ++n)
      for (KernelKind k : {KernelKind::Newtonian, KernelKind::Biharmonic}) {
        const GridSpec g = GridSpec::cube(n, 1.0, 16);
        const GridForm u = sample(random_bump_form(n, 0, rng, 0.1, 0.5, 0.7), g);
        const ConvolutionPlan fft(g, k, ConvolutionMethod::Fft);
        const ConvolutionPlan direct(g, k, ConvolutionMethod::Direct);
        const GridFunction a = fft.apply(u[0]), b = direct.apply(u[0]);
        CHECK((a - b).max_abs() <= 1e-6 * b.max_abs());
      }
  }

  TEST_CASE("potentials are symmetric for the discrete pairing") {
    std::mt19937_64 rng(12);
    for (int n = 2; n <= 3; ++n) {
      const PotentialPlans plans(GridSpec::cube(n, 1.0, n == 2 ? 48 : 24));
      for (int q = 0; q <= n; ++q) {
        const GridForm u = sample(random_bump_form(n, q, rng, 0.2, 0.4, 0.6), plans.grid());
        const GridForm v = sample(random_bump_form(n, q, rng, 0.2, 0.4, 0.6), plans.grid());
        const double scale = std::sqrt(inner_product(u, u) * inner_product(v, v));
        CHECK(std::abs(inner_product(phi_apply(plans, u), v) - inner_product(u, phi_apply(plans, v))) <=
              1e-12 * scale);
        CHECK(std::abs(inner_product(phi_sq_apply(plans, u), v) - inner_product(u, phi_sq_apply(plans, v))) <=
              1e-12 * scale);
      }
    }
  }

  TEST_CASE("inputs touching the margin are rejected") {
    const PotentialPlans plans(GridSpec::cube(2, 1.0, 16));
    GridForm u = zero_grid_form(plans.grid(), 0);
    u[0][0] = 1;
    CHECK_THROWS_AS(phi_apply(plans, u), SupportViolation);
  }

  TEST_CASE("inversion converges at second order") {
    std::mt19937_64 rng(13);
    const BumpForm u = sharp_bump_form(2, 1, rng);
    std::vector<double> err;
    for (int nodes : {32, 64, 128}) {
      const PotentialPlans plans(GridSpec::cube(2, 1.0, nodes));
      err.push_back(inversion_residual(plans, sample(u, plans.grid())));
    }
    CHECK(observed_order(err[1], err[2], 2.0 / 63, 2.0 / 127) >= 1.5);
    CHECK(err[2] <= 5e-3);
  }

  TEST_CASE("discrete commutation holds to rounding") {
    std::mt19937_64 rng(14);
    const PotentialPlans plans(GridSpec::cube(3, 1.0, 24));
    for (int q = 0; q <= 3; ++q) {
      const GridForm u = sample(sharp_bump_form(3, q, rng, 0.6), plans.grid());
      CHECK(discrete_commutation_residual(plans, u).max() <= 1e-10);
    }
  }

  TEST_CASE("analytic commutation converges") {
    std::mt19937_64 rng(15);
    const BumpForm u = sharp_bump_form(2, 1, rng);
    const PotentialPlans coarse(GridSpec::cube(2, 1.0, 64)), fine(GridSpec::cube(2, 1.0, 128));
    const double ec = commutation_residual(coarse, u).max(), ef = commutation_residual(fine, u).max();
    CHECK(observed_order(ec, ef, 2.0 / 63, 2.0 / 127) >= 1.5);
  }

  TEST_CASE("method names round-trip") {
    CHECK(parse_convolution_method("fft") == ConvolutionMethod::Fft);
    CHECK(parse_convolution_method(to_string(ConvolutionMethod::Direct)) == ConvolutionMethod::Direct);
    CHECK_THROWS_AS(parse_convolution_method("fast"), ParameterError);
  }
}
