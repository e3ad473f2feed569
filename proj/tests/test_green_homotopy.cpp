#include <cmath>
#include <random>

#include "doctest.h"
#include "drstokes/errors.hpp"
#include "drstokes/green_homotopy.hpp"

using namespace drstokes;

namespace {

std::vector<PolyForm> random_poly_tuple(int n, int q, std::mt19937_64& rng) {
  std::vector<PolyForm> t;
  for (int i = 0; i <= q; ++i) t.push_back(random_poly_form(n, q - i, 3, rng));
  return t;
}

double max_diff(const Form<double>& a, const Form<double>& b) {
  double m = 0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

Form<double> evaluate_poly(const PolyForm& f, const std::vector<double>& x) {
  Form<double> out(f.dim(), f.degree(), 0.0);
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k].evaluate(x);
  return out;
}

}  // namespace

TEST_SUITE("green_homotopy") {
  TEST_CASE("boundary pairing is <nu ^ a, b>") {
    const Form<double> a(2, 0, std::vector<double>{2.0}), b(2, 1, std::vector<double>{3.0, 5.0});
    CHECK(boundary_pairing({1, 0}, a, b) == doctest::Approx(6));
    CHECK(boundary_pairing({0, 1}, a, b) == doctest::Approx(10));
    // nu ^ dx1 = nu_2 dx1^dx2 in the plane (dx_2 ^ dx_1 = -dx1^dx2).
    const Form<double> c(2, 1, std::vector<double>{1.0, 0.0}), w(2, 2, std::vector<double>{1.0});
    CHECK(boundary_pairing({0, 1}, c, w) == doctest::Approx(-1));
    CHECK(boundary_pairing({1, 0}, c, w) == doctest::Approx(0));
    CHECK_THROWS_AS(boundary_pairing({1, 0}, a, w), DegreeMismatch);
  }

  TEST_CASE("pointwise d and d* match exact polynomial derivatives") {
    std::mt19937_64 rng(31);
    for (int n = 2; n <= 4; ++n)
      for (int p = 0; p <= n; ++p) {
        const PolyForm u = random_poly_form(n, p, 3, rng);
        const std::vector<double> x = {0.3, -0.7, 0.2, 1.1};
        const std::vector<double> xn(x.begin(), x.begin() + n);
        const FormJet j = poly_tuple_jet({u}, xn)[0];
        if (p < n) CHECK(max_diff(jet_exterior_derivative(j), evaluate_poly(exterior_derivative(u), xn)) <= 1e-12);
        if (p > 0) CHECK(max_diff(jet_codifferential(j), evaluate_poly(codifferential(u), xn)) <= 1e-12);
      }
    FormJet bare{Form<double>(2, 1, 1.0), {}};
    CHECK_THROWS_AS(jet_exterior_derivative(bare), IncompleteTrace);
  }

  TEST_CASE("density is antisymmetric") {
    std::mt19937_64 rng(32);
    for (int n = 2; n <= 3; ++n)
      for (int q = 1; q <= n; ++q) {
        const StokesSpec spec = StokesSpec::scalar_top(n, q, 2.0, 3.0);
        const std::vector<double> x(n, 0.4), nu = n == 2 ? std::vector<double>{0.6, 0.8} : std::vector<double>{0.0, 0.6, 0.8};
        const TupleJet u = poly_tuple_jet(random_poly_tuple(n, q, rng), x);
        const TupleJet v = poly_tuple_jet(random_poly_tuple(n, q, rng), x);
        const double g = green_density_S(spec, nu, v, u);
        CHECK(g == doctest::Approx(-green_density_S(spec, nu, u, v)));
        CHECK(green_density_S(spec, nu, u, u) == doctest::Approx(0).epsilon(1e-12).scale(std::abs(g) + 1));
      }
  }

  TEST_CASE("missing derivatives in a Lame slot are rejected") {
    const StokesSpec spec = StokesSpec::identity(2, 1, 1);
    TupleJet u = poly_tuple_jet(manufactured_tuple(spec), {0.2, 0.1});
    const TupleJet v = u;
    u[0].gradient.clear();
    CHECK_THROWS_AS(green_density_S(spec, {1, 0}, v, u), IncompleteTrace);
    // The pressure slot has no Lame block, so its values alone suffice.
    TupleJet w = v;
    w[1].gradient.clear();
    CHECK_NOTHROW(green_density_S(spec, {1, 0}, v, w));
  }

  TEST_CASE("Green identity holds for polynomial tuples") {
    std::mt19937_64 rng(33);
    for (int n = 2; n <= 3; ++n)
      for (int q = 1; q <= n; ++q)
        for (const DomainSpec& dom : {DomainSpec::ball(n, 1.0), DomainSpec::box(std::vector<double>(n, -0.5), std::vector<double>(n, 1.0))}) {
          const StokesSpec spec = q == 1 ? StokesSpec::scalar_top(n, q, 2.0, 3.0) : StokesSpec::identity(n, q, 1);
          const auto u = random_poly_tuple(n, q, rng), v = random_poly_tuple(n, q, rng);
          const GreenIdentityCheck c = integrate_green_identity(spec, dom, 12, u, v);
          CHECK(c.discrepancy <= 1e-10 * (1 + std::abs(c.boundary)));
        }
  }

  TEST_CASE("constant pressure and the manufactured flow are reproduced") {
    for (int n = 2; n <= 3; ++n) {
      const StokesSpec spec = StokesSpec::scalar_top(n, 1, 2.0, 3.0);
      const DomainSpec ball = DomainSpec::ball(n, 1.0);
      const HomotopyReconstructor rec(spec, ball);
      const BoundaryQuadrature quad = boundary_quadrature(ball, n == 2 ? 48 : 24);
      for (const char* kind : {"constant_pressure", "manufactured"}) {
        const AnalyticSolution sol = make_solution(kind, spec, {});
        const BoundaryTrace trace = sample_trace(quad, sol.field);
        std::vector<double> inside(n, 0.15), outside(n, 0.0);
        inside[0] = -0.3;
        outside[0] = 1.8;
        const Reconstruction ri = rec.reconstruct(trace, inside);
        CHECK(ri.inside);
        CHECK_FALSE(ri.near_boundary);
        const TupleJet ref = sol.field(inside);
        for (int s = 0; s <= 1; ++s) CHECK(max_diff(ri.value[s], ref[s].value) <= 1e-9);
        const Reconstruction ro = rec.reconstruct(trace, outside);
        CHECK_FALSE(ro.inside);
        for (int s = 0; s <= 1; ++s) CHECK(max_diff(ro.value[s], Form<double>(n, 1 - s, 0.0)) <= 1e-9);
      }
    }
  }

  TEST_CASE("exterior pole converges under quadrature refinement") {
    const StokesSpec spec = StokesSpec::identity(2, 1, 1);
    const DomainSpec ball = DomainSpec::ball(2, 1.0);
    const HomotopyReconstructor rec(spec, ball);
    const AnalyticSolution sol = make_solution("exterior_pole", spec, {2.0, 0.5});
    const std::vector<double> x{0.1, -0.2};
    const TupleJet ref = sol.field(x);
    double prev = 0;
    for (int m : {8, 16, 32}) {
      const Reconstruction r = rec.reconstruct(sample_trace(boundary_quadrature(ball, m), sol.field), x);
      const double err = std::max(max_diff(r.value[0], ref[0].value), max_diff(r.value[1], ref[1].value));
      if (m > 8) CHECK((err <= 0.5 * prev || err <= 1e-12));
      prev = err;
    }
    CHECK(prev <= 1e-10);
  }

  TEST_CASE("points near the boundary are flagged") {
    const StokesSpec spec = StokesSpec::identity(2, 1, 1);
    const DomainSpec ball = DomainSpec::ball(2, 1.0);
    const HomotopyReconstructor rec(spec, ball);
    const BoundaryTrace trace = sample_trace(boundary_quadrature(ball, 16), make_solution("constant_pressure", spec, {}).field);
    CHECK(rec.reconstruct(trace, {0.99, 0.0}).near_boundary);
  }

  TEST_CASE("unsupported systems and unknown solutions are rejected") {
    CHECK_THROWS_AS(HomotopyReconstructor(StokesSpec::identity(2, 2, 1), DomainSpec::ball(2, 1.0)),
                    UnsupportedConfiguration);
    CHECK_THROWS_AS(make_solution("vortex", StokesSpec::identity(2, 1, 1), {}), ParameterError);
    CHECK_THROWS_AS(manufactured_tuple(StokesSpec::identity(3, 2, 2)), UnsupportedConfiguration);
  }
}
