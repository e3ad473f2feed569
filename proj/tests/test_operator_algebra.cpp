#include <random>

#include "doctest.h"
#include "drstokes/errors.hpp"
#include "drstokes/parser.hpp"
#include "drstokes/rewrite.hpp"
#include "drstokes/solution_system.hpp"
#include "drstokes/stokes_blocks.hpp"

using namespace drstokes;

namespace {

Expression P(const char* s, int n = 4, std::optional<int> hint = std::nullopt) { return parse_expression(s, n, hint); }

bool reduces_to_zero(const BlockMatrix& m, const RewriteOptions& o = {}) { return m.normalized(o).is_zero(); }

}  // namespace

TEST_SUITE("operator_algebra") {
  TEST_CASE("parser builds typed words") {
    const Expression e = P("ds1 M1 d1 PhiMu1 - 2 d0 Phi0 ds0");
    CHECK(e.source() == 1);
    CHECK(e.target() == 1);
    CHECK(e.terms().size() == 2);
    CHECK(e.coefficient({d(0), phi(0), ds(0)}) == -2);
    CHECK(P("d{0}") == P("d0"));
    CHECK(P("(ds1 d1 + d0 ds0) Phi1") == P("ds1 d1 Phi1 + d0 ds0 Phi1"));
    CHECK(P("I", 4, 2) == Expression::identity(4, 2));
    CHECK(P("0", 4, 1).is_zero());
  }

  TEST_CASE("parser reports positions") {
    try {
      P("d0 + ds1 Foo2");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.position() == 9);
    }
    CHECK_THROWS_AS(P("d0 +"), ParseError);
    CHECK_THROWS_AS(P("Phi"), ParseError);
    CHECK_THROWS_AS(P("I"), ParseError);
  }

  TEST_CASE("ill-typed compositions are rejected") {
    CHECK_THROWS_AS(P("d0 d0"), DegreeMismatch);
    CHECK_THROWS_AS(P("d1 + d0"), DegreeMismatch);
    CHECK_THROWS_AS(P("M1 Phi1"), DegreeMismatch);
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> kind(0, 5), lvl(0, 3);
    int rejected = 0;
    for (int t = 0; t < 200; ++t) {
      Word w{Generator{static_cast<GenKind>(kind(rng)), lvl(rng)}, Generator{static_cast<GenKind>(kind(rng)), lvl(rng)}};
      if (w[0].source_degree() == w[1].target_degree()) continue;
      CHECK_THROWS_AS(Expression::word(4, w), DegreeMismatch);
      ++rejected;
    }
    CHECK(rejected > 50);
  }

  TEST_CASE("block matrices parse and print") {
    const BlockMatrix s = build_stokes(4, 1, 1, CoefficientMode::Identity);
    CHECK(parse_block_matrix(s.to_string(), 4) == s);
    const BlockMatrix m = parse_block_matrix("[[ds1 d1 + d0 ds0, d0], [ds0, 0]]", 4);
    CHECK(m == s);
    CHECK_THROWS_AS(parse_block_matrix("[[ds1 d1, d0], [ds0]]", 4), ParseError);
  }

  TEST_CASE("basic normalization examples") {
    CHECK(normalize(P("d1 d0")).is_zero());
    CHECK(normalize(P("ds0 ds1")).is_zero());
    CHECK(normalize(P("(ds1 d1 + d0 ds0) Phi1")) == Expression::identity(4, 1));
    CHECK(normalize(P("d1 Phi1 - Phi2 d1")).is_zero());
    CHECK(normalize(P("ds0 Phi1 - Phi0 ds0")).is_zero());
    CHECK(normalize(P("ds3 d3", 3)).is_zero());
    CHECK(normalize(P("(ds1 M1 d1 + d0 Mt1 ds0) PhiMu1")) == Expression::identity(4, 1));
    CHECK(normalize(P("PhiMu2 (ds2 M2 d2 + d1 Mt2 ds1)")) == Expression::identity(4, 2));
    CHECK(normalize(P("ds0 d0 Phi0")) == Expression::identity(4, 0));
  }

  TEST_CASE("intertwining identities reduce") {
    CHECK(normalize(P("d1 (ds1 d1 + d0 ds0) - (ds2 d2 + d1 ds1) d1")).is_zero());
    CHECK(normalize(P("ds1 M1 d1 (ds1 M1 d1 + d0 Mt1 ds0) - (ds1 M1 d1 + d0 Mt1 ds0) ds1 M1 d1")).is_zero());
    CHECK(normalize(P("d0 Mt1 ds0 (ds1 M1 d1 + d0 Mt1 ds0) - (ds1 M1 d1 + d0 Mt1 ds0) d0 Mt1 ds0")).is_zero());
  }

  TEST_CASE("normalize is idempotent and commutes with adjoint up to normalization") {
    const Expression e = P("ds1 d1 Phi1 Phi1 ds1 d1 + 3 Phi1 d0 ds0 - PhiMu1 ds1 M1 d1 Phi1");
    const Expression n1 = normalize(e);
    CHECK(normalize(n1) == n1);
    CHECK(normalize(n1.adjoint()) == normalize(e.adjoint()));
  }

  TEST_CASE("adjoint examples") {
    CHECK(P("d0").adjoint() == P("ds0"));
    CHECK(P("ds1 M1 d1 PhiMu1 PhiMu1").adjoint() == P("PhiMu1 PhiMu1 ds1 M1 d1"));
    const Expression e = P("ds1 M1 d1 PhiMu1 - 2 d0 Phi0 ds0 + Phi1 d0 Mt1 ds0");
    CHECK(e.adjoint().adjoint() == e);
  }

  TEST_CASE("stokes operator layout") {
    const BlockMatrix s1 = build_stokes(4, 1, 1, CoefficientMode::Abstract);
    CHECK(s1(0, 0) == P("ds1 M1 d1 + d0 Mt1 ds0"));
    CHECK(s1(0, 1) == P("d0"));
    CHECK(s1(1, 0) == P("ds0"));
    CHECK(s1(1, 1).is_zero());
    const BlockMatrix s2 = build_stokes(4, 2, 2, CoefficientMode::Abstract);
    CHECK(s2(1, 1).is_zero());
    CHECK(s2(2, 2).is_zero());
    CHECK(s2(0, 0) == P("ds2 M2 d2 + d1 Mt2 ds1"));
    CHECK(reduces_to_zero(s2.adjoint() - s2));
    CHECK_THROWS_AS(build_stokes(4, 2, 3, CoefficientMode::Abstract), DegreeMismatch);
    CHECK_THROWS_AS(build_psi_right(4, 2, 1, CoefficientMode::Abstract), UnsupportedConfiguration);
  }

  TEST_CASE("q = 1 fundamental solutions have the published blocks") {
    const BlockMatrix r = build_psi_right(4, 1, 1, CoefficientMode::Abstract);
    CHECK(r(0, 0) == P("ds1 M1 d1 PhiMu1 PhiMu1"));
    CHECK(r(0, 1) == P("d0 Phi0"));
    CHECK(r(1, 0) == P("Mt1 ds0 PhiMu1"));
    CHECK(r(1, 1) == P("-Mt1"));
    const BlockMatrix l = build_psi_left(4, 1, 1, CoefficientMode::Abstract);
    CHECK(l(0, 1) == P("PhiMu1 d0 Mt1"));
    CHECK(l(1, 0) == P("Phi0 ds0"));
  }

  TEST_CASE("right and left inverses, abstract matrices") {
    for (int q = 1; q <= 2; ++q) {
      CAPTURE(q);
      const BlockMatrix s = build_stokes(4, q, q, CoefficientMode::Abstract);
      const BlockMatrix I = BlockMatrix::identity(4, q);
      CHECK(reduces_to_zero(s * build_psi_right(4, q, q, CoefficientMode::Abstract) - I));
      CHECK(reduces_to_zero(build_psi_left(4, q, q, CoefficientMode::Abstract) * s - I));
    }
  }

  TEST_CASE("identity matrices give a bilateral solution") {
    for (int q = 1; q <= 3; ++q) {
      CAPTURE(q);
      const BlockMatrix s = build_stokes(4, q, q, CoefficientMode::Identity);
      const BlockMatrix r = build_psi_right(4, q, q, CoefficientMode::Identity);
      const BlockMatrix I = BlockMatrix::identity(4, q);
      CHECK(reduces_to_zero(s * r - I));
      CHECK(reduces_to_zero(r * s - I));
      CHECK(reduces_to_zero(r - r.adjoint()));
    }
  }

  TEST_CASE("defect matches closed form and is annihilated") {
    for (int q = 1; q <= 2; ++q) {
      CAPTURE(q);
      const auto mode = CoefficientMode::Abstract;
      const BlockMatrix A = build_defect(4, q, mode);
      CHECK(reduces_to_zero(A - closed_form_defect(4, q, mode)));
      CHECK(reduces_to_zero(build_stokes(4, q, q, mode) * A));
    }
    const BlockMatrix A1 = closed_form_defect(4, 1, CoefficientMode::Abstract);
    CHECK(A1(1, 0).is_zero());
  }

  TEST_CASE("bilateral solution from the defect") {
    for (int q = 1; q <= 2; ++q) {
      CAPTURE(q);
      const auto mode = CoefficientMode::Abstract;
      const BlockMatrix s = build_stokes(4, q, q, mode);
      const BlockMatrix psi = build_psi_bilateral(4, q, mode);
      const BlockMatrix I = BlockMatrix::identity(4, q);
      CHECK(reduces_to_zero(s * psi - I));
      CHECK(reduces_to_zero(psi * s - I));
    }
    // identity matrices: the correction vanishes
    for (int q = 1; q <= 3; ++q)
      CHECK(reduces_to_zero(closed_form_defect(4, q, CoefficientMode::Identity)));
  }

  TEST_CASE("other rewrite orders agree") {
    const auto mode = CoefficientMode::Abstract;
    const BlockMatrix s = build_stokes(4, 2, 2, mode);
    const BlockMatrix e = s * build_psi_bilateral(4, 2, mode) - BlockMatrix::identity(4, 2);
    const BlockMatrix f = build_psi_bilateral(4, 2, mode) * s - BlockMatrix::identity(4, 2);
    RewriteOptions rev;
    rev.terms = TermOrder::Reversed;
    CHECK(reduces_to_zero(e, rev));
    CHECK(reduces_to_zero(f, rev));
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      RewriteOptions rnd;
      rnd.terms = TermOrder::Shuffled;
      rnd.seed = seed;
      CHECK(reduces_to_zero(e, rnd));
      CHECK(reduces_to_zero(f, rnd));
    }
  }

  TEST_CASE("outermost redex selection is not confluent") {
    // the same word reduces two ways; both results are correct but differ
    const Expression w = P("PhiMu2 d1 Mt2 ds1 d1 ds1 Phi2");
    RewriteOptions outer;
    outer.redex = RedexOrder::Outermost;
    CHECK(normalize(w) == P("PhiMu2 d1 Mt2 ds1"));
    CHECK(normalize(w, outer) == P("d1 ds1 Phi2"));
  }

  TEST_CASE("corrupted rules and mutated solutions fail") {
    RewriteOptions bad;
    bad.corrupt = true;
    CHECK_FALSE(normalize(P("d1 Phi1 - Phi2 d1"), bad).is_zero());
    for (PsiMutation m : all_mutations()) {
      CAPTURE(to_string(m));
      bool caught = false;
      for (int q = 1; q <= 2 && !caught; ++q) {
        const BlockMatrix s = build_stokes(4, q, q, CoefficientMode::Abstract);
        caught = !reduces_to_zero(s * build_psi_right(4, q, q, CoefficientMode::Abstract, m) - BlockMatrix::identity(4, q));
      }
      CHECK(caught);
    }
  }

  TEST_CASE("budget guard") {
    RewriteOptions tiny;
    tiny.budget = 1;
    const BlockMatrix e = build_stokes(4, 2, 2, CoefficientMode::Abstract) *
                              build_psi_right(4, 2, 2, CoefficientMode::Abstract) -
                          BlockMatrix::identity(4, 2);
    CHECK_THROWS_AS(e.normalized(tiny), BudgetExceeded);
  }

  TEST_CASE("commute condition on the matrix forms") {
    const int n = 2;
    PolyForm constant = zero_poly_form(n, 1);
    constant[0] = Polynomial::constant(n, 2);
    CHECK(check_commute_condition({constant}));
    PolyForm f = zero_poly_form(n, 0);
    f[0] = Polynomial::coordinate(n, 0) * Polynomial::coordinate(n, 1);
    CHECK(check_commute_condition({exterior_derivative(f), constant}));
    PolyForm bad = zero_poly_form(n, 1);
    bad[0] = Polynomial::coordinate(n, 1);
    CHECK_FALSE(check_commute_condition({constant, bad}));
  }

  TEST_CASE("solution system consequences reduce") {
    for (int q = 1; q <= 3; ++q)
      for (int j0 = 1; j0 <= q; ++j0) {
        CAPTURE(q);
        CAPTURE(j0);
        const auto report = verify_solution_system(4, q, j0);
        CHECK(report.size() >= 3);
        for (const auto& r : report) {
          CAPTURE(r.name);
          CAPTURE(r.residual);
          CHECK(r.status == DerivationStatus::Reduced);
        }
      }
    const auto q1 = verify_solution_system(4, 1, 1);
    bool flagged = false;
    for (const auto& r : q1) flagged = flagged || !r.note.empty();
    CHECK(flagged);
  }
}
