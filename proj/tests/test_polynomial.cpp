#include "doctest.h"
#include "drstokes/polynomial.hpp"

using namespace drstokes;

TEST_SUITE("exterior_core") {
  TEST_CASE("polynomial arithmetic is exact") {
    const Polynomial x = Polynomial::coordinate(2, 0);
    const Polynomial y = Polynomial::coordinate(2, 1);
    const Polynomial p = x * y + Rational(1, 3) * x;
    CHECK(p.derivative(0) == y + Polynomial::constant(2, Rational(1, 3)));
    CHECK(p.derivative(1) == x);
    CHECK((p - p).is_zero());
    const double pt[2] = {2.0, 3.0};
    CHECK(p.evaluate(pt) == doctest::Approx(6.0 + 2.0 / 3.0));
  }

  TEST_CASE("zero terms are never stored") {
    Polynomial p(1);
    p.add_term({2}, 3);
    p.add_term({2}, -3);
    CHECK(p.is_zero());
    CHECK(p.terms().empty());
  }
}
