#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "drstokes/drform_io.hpp"
#include "drstokes/errors.hpp"
#include "drstokes/exterior.hpp"
#include "drstokes/grid.hpp"

using namespace drstokes;

namespace {

// Random smooth form vanishing outside the unit ball, sampled on [-1.5, 1.5]^n.
GridForm random_bump_form(const GridSpec& g, int q, std::mt19937& rng) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> ctr(-0.2, 0.2);
  GridForm u = zero_grid_form(g, q);
  for (std::size_t a = 0; a < u.size(); ++a) {
    const double A = amp(rng);
    std::vector<double> c(g.dim());
    for (auto& x : c) x = ctr(rng);
    u[a] = GridFunction::sample(g, [&](std::span<const double> x) {
      double r2 = 0;
      for (int k = 0; k < g.dim(); ++k) r2 += (x[k] - c[k]) * (x[k] - c[k]);
      return r2 < 0.64 ? A * std::exp(-1.0 / (1.0 - r2 / 0.64)) : 0.0;
    });
  }
  return u;
}

}  // namespace

TEST_SUITE("exterior_core") {
  TEST_CASE("central difference of a quadratic is exact in the interior") {
    const GridSpec g = GridSpec::cube(2, 1.0, 21);
    const GridFunction f = GridFunction::sample(g, [](std::span<const double> x) { return x[0] * x[0] + 3 * x[1]; });
    const GridFunction fx = f.derivative(0);
    const GridFunction fy = f.derivative(1);
    std::vector<double> x(2);
    std::vector<int> idx(2);
    for (std::size_t k = 0; k < f.size(); ++k) {
      g.unflatten(k, idx);
      if (idx[0] == 0 || idx[0] == 20 || idx[1] == 0 || idx[1] == 20) continue;
      g.node_coords(k, x);
      CHECK(fx[k] == doctest::Approx(2 * x[0]));
      CHECK(fy[k] == doctest::Approx(3.0));
    }
  }

  TEST_CASE("discrete d and d* are adjoint to rounding") {
    std::mt19937 rng(5);
    for (int n = 2; n <= 3; ++n) {
      const GridSpec g = GridSpec::cube(n, 1.5, n == 2 ? 41 : 21);
      for (int q = 0; q < n; ++q) {
        const GridForm u = random_bump_form(g, q, rng);
        const GridForm v = random_bump_form(g, q + 1, rng);
        const double lhs = inner_product(exterior_derivative(u), v);
        const double rhs = inner_product(u, codifferential(v));
        const double scale = std::sqrt(inner_product(u, u) * inner_product(v, v)) + 1.0;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
      }
    }
  }

  TEST_CASE("grid d squared vanishes away from the margin") {
    std::mt19937 rng(9);
    const GridSpec g = GridSpec::cube(3, 1.5, 17);
    const GridForm u = random_bump_form(g, 1, rng);
    CHECK(max_abs(exterior_derivative(exterior_derivative(u))) <= 1e-10 * (1 + max_abs(u)));
  }

  TEST_CASE("support margin check") {
    const GridSpec g = GridSpec::cube(2, 1.0, 11);
    GridForm u = zero_grid_form(g, 1);
    CHECK(vanishes_on_margin(u, 2));
    u[0][1] = 1.0;
    CHECK_FALSE(vanishes_on_margin(u, 2));
    CHECK_THROWS_AS(require_margin(u, 2), SupportViolation);
  }

  TEST_CASE("DRFORM round trip is exact") {
    std::mt19937 rng(1);
    const GridSpec g = GridSpec::cube(2, 1.5, 9);
    const GridForm u = random_bump_form(g, 1, rng);
    std::stringstream ss;
    write_drform(ss, u);
    const std::string text = ss.str();
    CHECK(text.rfind("DRFORM 1 n=2 q=1 dims=9,9", 0) == 0);
    CHECK(text.find("\nI=1\n") != std::string::npos);
    CHECK(text.find("\nI=2\n") != std::string::npos);
    const GridForm back = read_drform(ss);
    CHECK(back == u);
  }

  TEST_CASE("DRFORM rejects malformed input") {
    std::stringstream bad1("DRFORM 2 n=2 q=0 dims=2,2 h=1,1 origin=0,0\nI=\n0 0 0 0\n");
    CHECK_THROWS_AS(read_drform(bad1), FormatError);
    std::stringstream bad2("DRFORM 1 n=2 q=0 dims=2,2 h=1,1 origin=0,0\nI=\n0 0 0\n");
    CHECK_THROWS_AS(read_drform(bad2), FormatError);
    std::stringstream bad3("DRFORM 1 n=2 q=1 dims=2,2 h=1,1 origin=0,0\nI=2\n0 0 0 0\nI=1\n0 0 0 0\n");
    CHECK_THROWS_AS(read_drform(bad3), FormatError);
  }
}
