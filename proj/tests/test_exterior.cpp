#include <random>

#include "doctest.h"
#include "drstokes/errors.hpp"
#include "drstokes/poly_form.hpp"

using namespace drstokes;

namespace {

Polynomial X(int n, int axis) { return Polynomial::coordinate(n, axis); }
Polynomial C(int n, const Rational& c) { return Polynomial::constant(n, c); }

PolyForm basis(int n, std::vector<int> idx, const Rational& c = 1) {
  return basis_form(MultiIndex(n, std::move(idx)), Polynomial(n), c);
}

PolyForm top(int n, const Polynomial& c) {
  PolyForm f = zero_poly_form(n, n);
  f[0] = c;
  return f;
}

}  // namespace

TEST_SUITE("exterior_core") {
  TEST_CASE("wedge of basis forms") {
    CHECK(wedge(basis(2, {0}), basis(2, {1})) == basis(2, {0, 1}));
    CHECK(wedge(basis(2, {1}), basis(2, {0})) == basis(2, {0, 1}, -1));
    CHECK(wedge(basis(2, {0}), basis(2, {0})).is_zero());
  }

  TEST_CASE("wedge beyond the top degree is the zero top form") {
    const PolyForm w = wedge(basis(2, {0, 1}), basis(2, {0}));
    CHECK(w.degree() == 2);
    CHECK(w.is_zero());
  }

  TEST_CASE("wedge rejects mixed dimensions") {
    CHECK_THROWS_AS(wedge(basis(2, {0}), basis(3, {0})), DimensionMismatch);
  }

  TEST_CASE("wedge is associative on random forms") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
      const PolyForm a = random_poly_form(4, 1, 2, rng);
      const PolyForm b = random_poly_form(4, 1, 2, rng);
      const PolyForm c = random_poly_form(4, 2, 1, rng);
      CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    }
  }

  TEST_CASE("hodge star on three-dimensional basis") {
    CHECK(hodge_star(basis(3, {0})) == basis(3, {1, 2}));
    CHECK(hodge_star(basis(3, {1})) == basis(3, {0, 2}, -1));
    CHECK(hodge_star(basis(3, {})) == basis(3, {0, 1, 2}));
  }

  TEST_CASE("defining property of the star holds on every basis pair") {
    for (int n = 1; n <= 4; ++n)
      for (int q = 0; q <= n; ++q)
        for (const auto& I : multi_indices(n, q))
          for (const auto& J : multi_indices(n, q)) {
            const PolyForm w = wedge(basis(n, I.indices()), hodge_star(basis(n, J.indices())));
            CHECK(w == top(n, C(n, I == J ? 1 : 0)));
          }
  }

  TEST_CASE("double star gives the expected sign") {
    for (int n = 1; n <= 4; ++n)
      for (int q = 0; q <= n; ++q)
        for (const auto& I : multi_indices(n, q)) {
          const PolyForm u = basis(n, I.indices());
          const Rational s = (q * (n - q)) % 2 ? -1 : 1;
          CHECK(hodge_star(hodge_star(u)) == s * u);
        }
  }

  TEST_CASE("exterior derivative examples") {
    PolyForm f = zero_poly_form(2, 0);
    f[0] = X(2, 0) * X(2, 1);
    PolyForm df = zero_poly_form(2, 1);
    df[0] = X(2, 1);
    df[1] = X(2, 0);
    CHECK(exterior_derivative(f) == df);

    PolyForm u = zero_poly_form(2, 1);
    u[0] = X(2, 1);
    CHECK(exterior_derivative(u) == top(2, C(2, -1)));

    CHECK(exterior_derivative(top(3, X(3, 0) * X(3, 2))).is_zero());
  }

  TEST_CASE("codifferential examples") {
    PolyForm v = zero_poly_form(2, 1);
    v[0] = X(2, 0);
    PolyForm expect = zero_poly_form(2, 0);
    expect[0] = C(2, -1);
    CHECK(codifferential(v) == expect);
    CHECK(codifferential(basis(3, {1})).is_zero());
    CHECK_THROWS_AS(codifferential(zero_poly_form(2, 0)), DegreeMismatch);
  }

  TEST_CASE("hodge laplacian examples") {
    PolyForm u = zero_poly_form(2, 0);
    u[0] = X(2, 0) * X(2, 0);
    PolyForm expect = zero_poly_form(2, 0);
    expect[0] = C(2, -2);
    CHECK(hodge_laplacian(u) == expect);

    u[0] = X(2, 0) * X(2, 0) - X(2, 1) * X(2, 1);
    CHECK(hodge_laplacian(u).is_zero());

    PolyForm w = zero_poly_form(2, 1);
    w[0] = X(2, 0) * X(2, 1);
    CHECK(hodge_laplacian(w).is_zero());
  }

  TEST_CASE("matrix action through wedge and star equals the matrix product") {
    const MatrixCoefficient swap(2, 1, {{0, 1}, {1, 0}});
    PolyForm u = zero_poly_form(2, 1);
    u[0] = X(2, 0);
    u[1] = C(2, 5);
    PolyForm expect = zero_poly_form(2, 1);
    expect[0] = C(2, 5);
    expect[1] = X(2, 0);
    CHECK(matrix_action(swap, u) == expect);
    CHECK(matrix_action_direct(swap, u) == expect);

    CHECK(matrix_action(MatrixCoefficient::identity(2, 1), u) == u);
    CHECK(matrix_action(MatrixCoefficient::scalar(2, 1, 3), u) == Rational(3) * u);

    std::mt19937 rng(11);
    for (int q = 0; q <= 3; ++q) {
      const auto k = static_cast<std::size_t>(binomial(3, q));
      std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
      std::uniform_int_distribution<int> dist(-4, 4);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) m[i][j] = m[j][i] = dist(rng);
      const MatrixCoefficient M(3, q, m);
      const PolyForm v = random_poly_form(3, q, 2, rng);
      CHECK(matrix_action(M, v) == matrix_action_direct(M, v));
    }
  }

  TEST_CASE("matrix action rejects degree mismatch") {
    CHECK_THROWS_AS(matrix_action(MatrixCoefficient::identity(2, 0), basis(2, {0})), DegreeMismatch);
  }

  TEST_CASE("matrix coefficients are validated") {
    CHECK_THROWS_AS(MatrixCoefficient(2, 1, {{1, 2}, {3, 1}}), ParameterError);
    CHECK_THROWS_AS(MatrixCoefficient(2, 1, {{1}}), DimensionMismatch);
    CHECK(MatrixCoefficient(2, 1, {{2, 1}, {1, 2}}).is_positive());
    CHECK_FALSE(MatrixCoefficient(2, 1, {{1, 2}, {2, 1}}).is_positive());
  }

  TEST_CASE("lame operator reductions") {
    std::mt19937 rng(3);
    for (int q = 0; q <= 3; ++q) {
      const PolyForm u = random_poly_form(3, q, 3, rng);
      const MatrixCoefficient M = q < 3 ? MatrixCoefficient::identity(3, q + 1) : MatrixCoefficient();
      const MatrixCoefficient Mt = q > 0 ? MatrixCoefficient::identity(3, q - 1) : MatrixCoefficient();
      CHECK(lame_laplacian(M, Mt, u) == hodge_laplacian(u));
    }
    // closed input: only the d d* half survives
    PolyForm f = zero_poly_form(3, 0);
    f[0] = X(3, 0) * X(3, 0) * X(3, 1) + X(3, 2);
    const PolyForm u = exterior_derivative(f);
    CHECK(lame_laplacian_scalar(2, 3, u) == Rational(3) * exterior_derivative(codifferential(u)));
    CHECK(lame_laplacian(MatrixCoefficient::scalar(3, 2, 2), MatrixCoefficient::scalar(3, 0, 3), u) ==
          lame_laplacian_scalar(2, 3, u));
    // 0-form: a d*d x1^2 = -2a
    PolyForm s = zero_poly_form(2, 0);
    s[0] = X(2, 0) * X(2, 0);
    PolyForm expect = zero_poly_form(2, 0);
    expect[0] = C(2, -10);
    CHECK(lame_laplacian_scalar(5, 7, s) == expect);
  }

  TEST_CASE("complex and hodge identities on a random corpus") {
    std::mt19937 rng(2024);
    int forms = 0;
    for (int n = 1; n <= 4; ++n)
      for (int q = 0; q <= n; ++q)
        for (int trial = 0; trial < 3; ++trial, ++forms) {
          const PolyForm u = random_poly_form(n, q, 3, rng);
          CHECK(exterior_derivative(exterior_derivative(u)).is_zero());
          if (q >= 2) CHECK(codifferential(codifferential(u)).is_zero());
          CHECK((hodge_laplacian(u) + componentwise_laplacian(u)).is_zero());
        }
    CHECK(forms >= 40);
  }
}
