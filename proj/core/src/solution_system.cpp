#include "drstokes/solution_system.hpp"

#include <map>
#include <optional>

#include "drstokes/errors.hpp"

namespace drstokes {
namespace {

// Row r of S u = 0 is the equation of degree r; its coefficient on u_k is
// block (q - r, q - k) of S.
class System {
 public:
  System(int n, int q, int j0) : n_(n), q_(q), s_(build_stokes(n, q, j0, CoefficientMode::Abstract)) {}

  const Expression& coef(int row, int k) const { return s_(q_ - row, q_ - k); }
  int n() const { return n_; }
  int q() const { return q_; }

 private:
  int n_;
  int q_;
  BlockMatrix s_;
};

// A combination sum_r P_r * row_r, reduced to its coefficient on every unknown.
struct Combination {
  int target;
  std::map<int, Expression> multipliers;  // row -> P_r (degree r -> target)
};

Expression op(int n, const Word& w) { return Expression::word(n, w); }
Expression lap(int n, int q) { return hodge_symbol(n, q); }

DerivedIdentity check(const System& sys, const std::string& name, const std::string& statement,
                      const Combination& comb, const std::map<int, Expression>& expected, const RewriteOptions& opts,
                      const std::string& note = {}) {
  DerivedIdentity out{name, statement, DerivationStatus::Reduced, note, {}};
  for (int k = 0; k <= sys.q(); ++k) {
    Expression lhs(sys.n(), k, comb.target);
    for (const auto& [row, p] : comb.multipliers) {
      const Expression& c = sys.coef(row, k);
      if (!c.is_zero()) lhs += p * c;
    }
    auto it = expected.find(k);
    if (it != expected.end()) lhs -= it->second;
    const Expression r = normalize(lhs, opts);
    if (!r.is_zero()) {
      out.status = DerivationStatus::Stuck;
      out.residual = "u" + std::to_string(k) + ": " + r.to_string();
      return out;
    }
  }
  return out;
}

std::string sub(int k) { return std::to_string(k); }

}  // namespace

std::string to_string(DerivationStatus s) { return s == DerivationStatus::Reduced ? "REDUCED" : "STUCK"; }

std::vector<DerivedIdentity> verify_solution_system(int n, int q, int j0, const RewriteOptions& opts) {
  if (!(1 <= j0 && j0 <= q && q <= n)) throw DegreeMismatch("need 1 <= j0 <= q <= n");
  const System sys(n, q, j0);
  std::vector<DerivedIdentity> out;
  auto E = [&](const Word& w) { return op(n, w); };
  const int p = q - 1;

  // First row of the system itself: ds0 u1 = 0 (no Lame block at degree 0).
  out.push_back(check(sys, "divergence-free", "ds0 u1 = 0", {0, {{0, Expression::identity(n, 0)}}},
                      {{1, E({ds(0)})}}, opts));

  for (int j = 2; j <= j0; ++j) {
    out.push_back(check(sys, "closed-lower-" + sub(j), "d" + sub(j - 1) + " ds" + sub(j - 1) + " u" + sub(j) + " = 0",
                        {j, {{j - 1, E({d(j - 1)})}}}, {{j, E({d(j - 1), ds(j - 1)})}}, opts));
    out.push_back(check(sys, "coclosed-lower-" + sub(j - 2),
                        "ds" + sub(j - 2) + " d" + sub(j - 2) + " u" + sub(j - 2) + " = 0",
                        {j - 2, {{j - 1, E({ds(j - 2)})}}}, {{j - 2, E({ds(j - 2), d(j - 2)})}}, opts));
  }

  if (q < n) {
    out.push_back(check(sys, "top-third-order", "ds" + sub(q) + " d" + sub(q) + " ds" + sub(q) + " M" + sub(q) + " d" +
                                                    sub(q) + " u" + sub(q) + " = 0",
                        {q, {{q, E({ds(q), d(q)})}}}, {{q, E({ds(q), d(q), ds(q), mat(q), d(q)})}}, opts));
  }
  out.push_back(check(sys, "top-exact-part",
                      "d" + sub(p) + " ds" + sub(p) + " d" + sub(p) + " Mt" + sub(q) + " ds" + sub(p) + " u" + sub(q) +
                          " + d" + sub(p) + " ds" + sub(p) + " d" + sub(p) + " u" + sub(p) + " = 0",
                      {q, {{q, E({d(p), ds(p)})}}},
                      {{q, E({d(p), ds(p), d(p), mat_tilde(q), ds(p)})}, {p, E({d(p), ds(p), d(p)})}}, opts));

  for (int j = j0 + 1; j <= q; ++j) {
    const int r = j - 1;  // the row with a Lame block
    std::map<int, Expression> exp1{{j, E({d(r), ds(r)})}};
    if (r < n) exp1.emplace(r, E({d(r), ds(r), mat(r), d(r)}));
    out.push_back(check(sys, "closed-part-" + sub(j), "d ds u" + sub(j) + " + d ds M d u" + sub(r) + " = 0",
                        {j, {{r, E({d(r)})}}}, exp1, opts));
    std::map<int, Expression> exp2{{r, E({ds(r - 1), d(r - 1), mat_tilde(r), ds(r - 1)})}};
    exp2.emplace(r - 1, E({ds(r - 1), d(r - 1)}));
    out.push_back(check(sys, "coclosed-part-" + sub(j), "ds d Mt ds u" + sub(r) + " + ds d u" + sub(r - 1) + " = 0",
                        {r - 1, {{r, E({ds(r - 1)})}}}, exp2, opts));
  }

  // Fourth-order systems.
  {
    std::map<int, Expression> e{{q, lap(n, q) * lame_symbol(n, q, CoefficientMode::Abstract)}};
    e.emplace(p, E({d(p), ds(p), d(p)}));
    out.push_back(check(sys, "fourth-order-top", "Lap" + sub(q) + " Lame" + sub(q) + " u" + sub(q) + " + d ds d u" + sub(p) + " = 0",
                        {q, {{q, lap(n, q)}}}, e, opts));
  }
  for (int j = j0 + 1; j <= q - 1; ++j) {
    std::map<int, Expression> e{{j, lap(n, j) * lame_symbol(n, j, CoefficientMode::Abstract)},
                                {j + 1, E({ds(j), d(j), ds(j)})},
                                {j - 1, E({d(j - 1), ds(j - 1), d(j - 1)})}};
    out.push_back(check(sys, "fourth-order-" + sub(j), "Lap Lame u" + sub(j) + " + ds d ds u" + sub(j + 1) + " + d ds d u" + sub(j - 1) + " = 0",
                        {j, {{j, lap(n, j)}}}, e, opts));
  }
  if (j0 < q) {
    const int k = j0;
    Expression outer(n, k, k);
    if (k < n) outer += E({ds(k), mat(k), d(k)});
    outer += E({d(k - 1), ds(k - 1)});
    std::map<int, Expression> e{{k, lap(n, k) * outer}, {k + 1, E({ds(k), d(k), ds(k)})}};
    Combination c{k, {{k, lap(n, k) - E({d(k - 1), ds(k - 1)})}, {k - 1, E({d(k - 1), ds(k - 1), d(k - 1)})}}};
    out.push_back(check(sys, "fourth-order-lowest",
                        "Lap" + sub(k) + " (ds M d + d ds) u" + sub(k) + " + ds d ds u" + sub(k + 1) + " = 0", c, e, opts));
  }

  for (int j = 0; j <= j0 - 2; ++j) {
    Combination c{j, {{j + 1, E({ds(j)})}}};
    if (j >= 1) c.multipliers.emplace(j - 1, E({d(j - 1)}));
    out.push_back(check(sys, "harmonic-" + sub(j), "Lap" + sub(j) + " u" + sub(j) + " = 0", c, {{j, lap(n, j)}}, opts));
  }

  if (j0 == 1) {
    Combination c{0, {{1, E({ds(0)})}, {0, -E({ds(0), d(0), mat_tilde(1)})}}};
    out.push_back(check(sys, "harmonic-pressure", "ds0 d0 u0 = 0", c, {{0, E({ds(0), d(0)})}}, opts));
    if (q == 1 && n >= 2) {
      out.push_back(check(sys, "closed-velocity", "d1 ds1 M1 d1 u1 = 0", {2, {{1, E({d(1)})}}},
                          {{1, E({d(1), ds(1), mat(1), d(1)})}}, opts,
                          "the printed chain ends in 'd1 ds1 M1 d1' without u1; verified with u1 restored"));
    }
  }
  return out;
}

}  // namespace drstokes
