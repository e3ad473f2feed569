// Acceptance driver: one PASS / FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "drstokes/bump.hpp"
#include "drstokes/commands.hpp"
#include "drstokes/exterior.hpp"
#include "drstokes/poly_form.hpp"
#include "drstokes/stokes_assembly.hpp"
#include "drstokes/stokes_blocks.hpp"

using namespace drstokes;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds; 0 means none
  std::function<Outcome()> run;
};

constexpr int kAlgebraDim = 4;

// Same corpus for the complex property and the Laplacian identity: every
// dimension 1..4 and degree 0..n in turn, degree <= 3 coefficients.
template <class Check>
long long over_corpus(long long min_forms, Check check, long long& failures) {
  std::mt19937 rng(2024);
  long long forms = 0;
  failures = 0;
  while (forms < min_forms)
    for (int n = 1; n <= kAlgebraDim; ++n)
      for (int q = 0; q <= n; ++q, ++forms)
        if (!check(random_poly_form(n, q, 3, rng))) ++failures;
  return forms;
}

Outcome complex_property() {
  long long failures = 0;
  const long long forms = over_corpus(
      120,
      [](const PolyForm& u) {
        const bool dd = exterior_derivative(exterior_derivative(u)).is_zero();
        const bool ss = u.degree() < 2 || codifferential(codifferential(u)).is_zero();
        return dd && ss;
      },
      failures);
  return {failures == 0, std::to_string(forms) + " forms, " + std::to_string(failures) + " nonzero d d or d* d*"};
}

Outcome hodge_identity() {
  long long failures = 0;
  const long long forms = over_corpus(
      120, [](const PolyForm& u) { return (hodge_laplacian(u) + componentwise_laplacian(u)).is_zero(); }, failures);
  return {failures == 0, std::to_string(forms) + " forms, " + std::to_string(failures) + " nonzero residuals"};
}

// Counts identities whose normal form is nonzero; names the first one.
struct IdentityTally {
  int checked = 0;
  int failed = 0;
  std::string first;

  void expect_zero(const std::string& name, const BlockMatrix& m) {
    ++checked;
    if (m.normalized().is_zero()) return;
    if (!failed++) first = name;
  }
  Outcome outcome() const {
    std::string s = std::to_string(checked) + " normal forms";
    s += failed ? ", " + std::to_string(failed) + " nonzero (first: " + first + ")" : ", all zero";
    return {failed == 0, s};
  }
};

Outcome symbolic_inverses() {
  const int n = kAlgebraDim;
  IdentityTally t;
  const auto A = CoefficientMode::Abstract, Id = CoefficientMode::Identity;
  for (int q = 1; q <= 2; ++q) {
    const BlockMatrix S = build_stokes(n, q, q, A), I = BlockMatrix::identity(n, q);
    t.expect_zero("S Psi_r - I, abstract q=" + std::to_string(q), S * build_psi_right(n, q, q, A) - I);
    t.expect_zero("Psi_l S - I, abstract q=" + std::to_string(q), build_psi_left(n, q, q, A) * S - I);
  }
  for (int q = 1; q <= 3; ++q) {
    const BlockMatrix S = build_stokes(n, q, q, Id), I = BlockMatrix::identity(n, q);
    t.expect_zero("S Psi_r - I, identity q=" + std::to_string(q), S * build_psi_right(n, q, q, Id) - I);
    t.expect_zero("Psi_l S - I, identity q=" + std::to_string(q), build_psi_left(n, q, q, Id) * S - I);
  }
  return t.outcome();
}

Outcome defect_and_bilateral() {
  const int n = kAlgebraDim;
  IdentityTally t;
  const auto A = CoefficientMode::Abstract;
  for (int q = 1; q <= 2; ++q) {
    const std::string tag = " q=" + std::to_string(q);
    const BlockMatrix S = build_stokes(n, q, q, A), I = BlockMatrix::identity(n, q);
    const BlockMatrix closed = closed_form_defect(n, q, A);
    t.expect_zero("A - closed form" + tag, build_defect(n, q, A) - closed);
    t.expect_zero("S A" + tag, S * closed);
    const BlockMatrix P = build_psi_right(n, q, q, A) + closed * build_psi_right(n, q, q, A).adjoint();
    t.expect_zero("S (Psi_r + A Psi_r*) - I" + tag, S * P - I);
    t.expect_zero("(Psi_r + A Psi_r*) S - I" + tag, P * S - I);
  }
  return t.outcome();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double metric(const CheckRecord& r, const std::string& key) {
  const auto it = r.metrics.find(key);
  if (it == r.metrics.end()) return NAN;
  if (const auto* d = std::get_if<double>(&it->second)) return *d;
  if (const auto* i = std::get_if<long long>(&it->second)) return static_cast<double>(*i);
  return NAN;
}

// Runs one kernel suite at n = 2 (32, 64, 128) and n = 3 (24, 48) with
// default tolerances (order >= 1.5, final <= 5e-3).
Outcome kernel_suite(const std::string& suite) {
  bool pass = true;
  double worst_order = INFINITY, worst_final = 0;
  int records = 0;
  std::string failed;
  for (const char* n : {"2", "3"}) {
    RunConfig c;
    c.set("n", n);
    c.set("kernel.suites", suite);
    c.set("grid.levels", std::string(n) == "2" ? "32,64,128" : "24,48");
    const VerificationReport r = cmd_verify_kernels(c);
    const std::string last = std::string(n) == "2" ? "128" : "48";
    for (const auto& rec : r.records) {
      ++records;
      worst_order = std::min(worst_order, metric(rec, "residual_order"));
      worst_final = std::max(worst_final, metric(rec, "residual_" + last));
      if (rec.status != CheckStatus::Pass) {
        pass = false;
        if (failed.empty()) failed = " (first failure n=" + std::string(n) + " " + rec.name + ": " + rec.detail + ")";
      }
    }
  }
  return {pass, std::to_string(records) + " degrees, min order " + fmt(worst_order) + ", max final residual " +
                    fmt(worst_final) + failed};
}

int binom(int n, int k) { return k < 0 || k > n ? 0 : k == 0 ? 1 : binom(n - 1, k - 1) * n / k; }

MatrixCoefficient random_spd(int n, int q, std::mt19937_64& rng) {
  const int k = binom(n, q);
  std::uniform_real_distribution<double> off(-0.3, 0.3);
  std::vector<std::vector<double>> m(k, std::vector<double>(k, 0));
  for (int i = 0; i < k; ++i) {
    m[i][i] = 1.5 + 0.3 * k;
    for (int j = 0; j < i; ++j) m[i][j] = m[j][i] = off(rng);
  }
  return MatrixCoefficient::from_doubles(n, q, m);
}

Outcome grid_self_adjointness() {
  std::mt19937_64 rng(77);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 2;
    const int q = 1 + (t / 2) % n;
    const GridSpec g = GridSpec::cube(n, 1.0, n == 2 ? 40 : 20);
    StokesSpec spec;
    switch ((t / 6) % 3) {
      case 0: spec = StokesSpec::identity(n, q, 1 + t % q); break;
      case 1: spec = StokesSpec::scalar_top(n, q, 2.0, 3.0); break;
      default:
        spec = StokesSpec::identity(n, q, 1);
        for (auto& [deg, l] : spec.levels) {
          if (l.M.size()) l.M = random_spd(n, deg + 1, rng);
          if (l.Mt.size()) l.Mt = random_spd(n, deg - 1, rng);
        }
    }
    FormTuple u, v;
    for (int i = 0; i <= q; ++i) {
      u.push_back(sample(random_bump_form(n, q - i, rng, 0.2, 0.3, 0.5), g));
      v.push_back(sample(random_bump_form(n, q - i, rng, 0.2, 0.3, 0.5), g));
    }
    const double gap = std::abs(inner_product(apply_stokes(spec, u), v) - inner_product(u, apply_stokes(spec, v)));
    worst = std::max(worst, gap / std::sqrt(inner_product(u, u) * inner_product(v, v)));
  }
  return {worst <= 1e-10, "50 tuples, max |(Su,v) - (u,Sv)| / (|u||v|) = " + fmt(worst)};
}

Outcome homotopy_formula() {
  bool pass = true;
  std::ostringstream s;
  for (const char* n : {"2", "3"}) {
    RunConfig c;
    c.set("n", n);
    std::vector<ReconstructionRow> rows;
    const VerificationReport r = cmd_reconstruct(c, &rows);
    s << "n=" << n << ":";
    for (const auto& rec : r.records) {
      pass = pass && rec.status == CheckStatus::Pass;
      if (rec.name == "reconstruct.constant_pressure")
        s << " const rel " << fmt(metric(rec, "interior_max_rel_error")) << " ext " << fmt(metric(rec, "exterior_max_abs"));
      else if (rec.name == "reconstruct.exterior_pole")
        s << ", pole rel " << fmt(metric(rec, "interior_max_rel_error"));
      else if (rec.name == "reconstruct.refinement")
        s << ", refinement " << (rec.status == CheckStatus::Pass ? "halves" : "FAILS");
      if (rec.status != CheckStatus::Pass) s << " [" << rec.name << ": " << rec.detail << "]";
    }
    s << "; ";
  }
  std::string out = s.str();
  out.resize(out.size() - 2);
  return {pass, out};
}

Outcome negative_controls() {
  const int n = kAlgebraDim;
  const auto A = CoefficientMode::Abstract;
  int caught = 0;
  std::string missed;
  for (PsiMutation m : all_mutations()) {
    bool hit = false;
    for (int q = 1; q <= 2 && !hit; ++q)
      hit = !(build_stokes(n, q, q, A) * build_psi_right(n, q, q, A, m) - BlockMatrix::identity(n, q)).normalized().is_zero();
    if (hit)
      ++caught;
    else if (missed.empty())
      missed = " (missed " + to_string(m) + ")";
  }
  const int total = static_cast<int>(all_mutations().size());
  return {caught == total && total == 5, std::to_string(caught) + "/" + std::to_string(total) + " sign mutations break S Psi_r = I" + missed};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact complex property", 10, complex_property},
      {2, "Hodge Laplacian identity", 0, hodge_identity},
      {3, "symbolic right and left inverses", 60, symbolic_inverses},
      {4, "defect closed form and bilateral inverse", 120, defect_and_bilateral},
      {5, "kernel inversion convergence", 300, [] { return kernel_suite("inversion"); }},
      {6, "kernel commutation convergence", 0, [] { return kernel_suite("commutation"); }},
      {7, "discrete self-adjointness of S", 0, grid_self_adjointness},
      {8, "homotopy formula reconstruction", 300, homotopy_formula},
      {9, "negative controls", 0, negative_controls},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0 && secs > c.time_limit) {
      o.pass = false;
      o.summary += ", over the " + fmt(c.time_limit) + " s limit";
    }
    failures += !o.pass;
    std::printf("criterion %d %s  %s: %s (%.1f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.summary.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
