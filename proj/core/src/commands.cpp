#include "drstokes/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <iomanip>
#include <limits>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "drstokes/errors.hpp"
#include "drstokes/green_homotopy.hpp"
#include "drstokes/grid_potentials.hpp"
#include "drstokes/parser.hpp"
#include "drstokes/poly_form.hpp"
#include "drstokes/residual_report.hpp"
#include "drstokes/solution_system.hpp"
#include "drstokes/stokes_blocks.hpp"

namespace drstokes {

namespace {

using Task = std::function<CheckRecord()>;

std::vector<CheckRecord> run_tasks(const std::vector<Task>& tasks, const RunOptions& opts) {
  std::vector<CheckRecord> out(tasks.size());
  const int workers = opts.parallel ? std::min<int>(worker_count(opts.threads), static_cast<int>(tasks.size())) : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) out[i] = tasks[i]();
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) {
        try {
          out[i] = tasks[i]();
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

CheckRecord make_record(std::string name, std::string identity) {
  CheckRecord r;
  r.name = std::move(name);
  r.identity = std::move(identity);
  return r;
}

// ----- algebra -----

// Normalizes every named block-matrix difference; the record fails at the
// first one that does not reduce to zero.
struct Identity {
  std::string label;
  std::function<BlockMatrix()> build;
};

CheckRecord check_identities(CheckRecord rec, const std::vector<Identity>& ids, const RewriteOptions& ro) {
  std::size_t steps = 0;
  try {
    for (const auto& id : ids) {
      RewriteStats stats;
      const BlockMatrix m = id.build().normalized(ro, &stats);
      steps += stats.steps;
      if (!m.is_zero()) {
        rec.status = CheckStatus::Fail;
        rec.detail = id.label + " does not reduce to zero: " + m.to_string();
        rec.metrics["rewrite_steps"] = static_cast<long long>(steps);
        return rec;
      }
    }
    rec.status = CheckStatus::Pass;
  } catch (const BudgetExceeded& e) {
    rec.status = CheckStatus::Stuck;
    rec.detail = e.what();
  }
  rec.metrics["rewrite_steps"] = static_cast<long long>(steps);
  rec.metrics["identities"] = static_cast<long long>(ids.size());
  return rec;
}

std::vector<Task> algebra_tasks(const RunConfig& cfg) {
  const int n = static_cast<int>(cfg.integer("algebra.n"));
  const int max_q = static_cast<int>(cfg.integer("algebra.max_q"));
  const long long corpus = cfg.integer("algebra.corpus");
  const std::uint64_t seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  RewriteOptions ro;
  ro.budget = static_cast<std::size_t>(cfg.integer("algebra.budget"));
  ro.corrupt = cfg.flag("algebra.corrupt");
  const auto A = CoefficientMode::Abstract;
  const auto Id = CoefficientMode::Identity;

  std::vector<Task> tasks;

  tasks.push_back([=] {
    CheckRecord rec = make_record("complex.nilpotent", "d d u = 0 and d* d* u = 0 on random polynomial forms");
    std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
    long long forms = 0, failures = 0;
    while (forms < corpus)
      for (int m = 1; m <= n; ++m)
        for (int q = 0; q <= m; ++q, ++forms) {
          const PolyForm u = random_poly_form(m, q, 3, rng);
          if (!exterior_derivative(exterior_derivative(u)).is_zero()) ++failures;
          if (q >= 2 && !codifferential(codifferential(u)).is_zero()) ++failures;
        }
    rec.metrics["forms"] = forms;
    rec.metrics["failures"] = failures;
    rec.status = failures == 0 ? CheckStatus::Pass : CheckStatus::Fail;
    if (failures) rec.detail = std::to_string(failures) + " forms violate the complex property";
    return rec;
  });

  tasks.push_back([=] {
    CheckRecord rec = make_record("complex.hodge_laplacian", "(d*d + dd*) u + sum_k d_k^2 u = 0 on random polynomial forms");
    std::mt19937 rng(static_cast<std::mt19937::result_type>(seed + 1));
    long long forms = 0, failures = 0;
    while (forms < corpus)
      for (int m = 1; m <= n; ++m)
        for (int q = 0; q <= m; ++q, ++forms) {
          const PolyForm u = random_poly_form(m, q, 3, rng);
          if (!(hodge_laplacian(u) + componentwise_laplacian(u)).is_zero()) ++failures;
        }
    rec.metrics["forms"] = forms;
    rec.metrics["failures"] = failures;
    rec.status = failures == 0 ? CheckStatus::Pass : CheckStatus::Fail;
    if (failures) rec.detail = std::to_string(failures) + " forms violate the Laplacian identity";
    return rec;
  });

  tasks.push_back([=] {
    CheckRecord rec = make_record("rewrite.intertwining", "d Delta = Delta d, d* Delta = Delta d*, Phi d = d Phi, Phi d* = d* Phi");
    std::size_t steps = 0;
    try {
      for (int q = 0; q < n; ++q) {
        const std::string d = "d" + std::to_string(q), ds = "ds" + std::to_string(q);
        const std::string lo = std::to_string(q), hi = std::to_string(q + 1);
        std::vector<std::string> exprs = {d + " Phi" + lo + " - Phi" + hi + " " + d,
                                          ds + " Phi" + hi + " - Phi" + lo + " " + ds};
        for (const auto& text : exprs) {
          RewriteStats stats;
          const Expression r = normalize(parse_expression(text, n), ro, &stats);
          steps += stats.steps;
          if (!r.is_zero()) {
            rec.status = CheckStatus::Fail;
            rec.detail = text + " reduces to " + r.to_string();
            rec.metrics["rewrite_steps"] = static_cast<long long>(steps);
            return rec;
          }
        }
        {
          const Expression dq = Expression::generator(n, drstokes::d(q));
          const Expression e = dq * hodge_symbol(n, q) - hodge_symbol(n, q + 1) * dq;
          RewriteStats stats;
          const Expression r = normalize(e, ro, &stats);
          steps += stats.steps;
          if (!r.is_zero()) {
            rec.status = CheckStatus::Fail;
            rec.detail = "d" + lo + " Delta" + lo + " - Delta" + hi + " d" + lo + " reduces to " + r.to_string();
            rec.metrics["rewrite_steps"] = static_cast<long long>(steps);
            return rec;
          }
        }
      }
      rec.status = CheckStatus::Pass;
    } catch (const BudgetExceeded& e) {
      rec.status = CheckStatus::Stuck;
      rec.detail = e.what();
    }
    rec.metrics["rewrite_steps"] = static_cast<long long>(steps);
    return rec;
  });

  for (int q = 1; q <= std::min(max_q, n); ++q)
    tasks.push_back([=] {
      return check_identities(make_record("stokes.self_adjoint.q" + std::to_string(q), "S* - S = 0"),
                              {{"S* - S", [=] {
                                  const BlockMatrix s = build_stokes(n, q, q, A);
                                  return s.adjoint() - s;
                                }}},
                              ro);
    });

  for (int q = 1; q <= std::min({2, max_q, n}); ++q) {
    tasks.push_back([=] {
      return check_identities(make_record("psi.right_inverse.q" + std::to_string(q) + ".abstract", "S Psi_r - I = 0"),
                              {{"S Psi_r - I", [=] {
                                  return build_stokes(n, q, q, A) * build_psi_right(n, q, q, A) - BlockMatrix::identity(n, q);
                                }}},
                              ro);
    });
    tasks.push_back([=] {
      return check_identities(make_record("psi.left_inverse.q" + std::to_string(q) + ".abstract", "Psi_l S - I = 0"),
                              {{"Psi_l S - I", [=] {
                                  return build_psi_left(n, q, q, A) * build_stokes(n, q, q, A) - BlockMatrix::identity(n, q);
                                }}},
                              ro);
    });
  }

  for (int q = 1; q <= std::min(max_q, n); ++q)
    tasks.push_back([=] {
      auto S = [=] { return build_stokes(n, q, q, Id); };
      auto R = [=] { return build_psi_right(n, q, q, Id); };
      return check_identities(
          make_record("psi.bilateral.q" + std::to_string(q) + ".identity", "S Psi - I = 0, Psi S - I = 0, Psi - Psi* = 0"),
          {{"S Psi - I", [=] { return S() * R() - BlockMatrix::identity(n, q); }},
           {"Psi S - I", [=] { return R() * S() - BlockMatrix::identity(n, q); }},
           {"Psi - Psi*", [=] { return R() - R().adjoint(); }}},
          ro);
    });

  for (int q = 1; q <= std::min({2, max_q, n}); ++q) {
    tasks.push_back([=] {
      return check_identities(
          make_record("defect.q" + std::to_string(q), "A = I - Psi_r S matches its closed form; S A = 0"),
          {{"A - closed form", [=] { return build_defect(n, q, A, ro) - closed_form_defect(n, q, A); }},
           {"S A", [=] { return build_stokes(n, q, q, A) * closed_form_defect(n, q, A); }}},
          ro);
    });
    tasks.push_back([=] {
      auto S = [=] { return build_stokes(n, q, q, A); };
      auto P = [=] { return build_psi_bilateral(n, q, A); };
      return check_identities(
          make_record("psi.bilateral.q" + std::to_string(q) + ".abstract", "S (Psi_r + A Psi_r*) - I = 0, (Psi_r + A Psi_r*) S - I = 0"),
          {{"S Psi - I", [=] { return S() * P() - BlockMatrix::identity(n, q); }},
           {"Psi S - I", [=] { return P() * S() - BlockMatrix::identity(n, q); }}},
          ro);
    });
  }

  tasks.push_back([=] {
    CheckRecord rec = make_record("commute_condition", "d Mt = 0 for the matrix forms (closed forms commute)");
    const int m = std::max(2, std::min(n, 3));
    PolyForm constant = zero_poly_form(m, 1);
    constant[0] = Polynomial::constant(m, 2);
    PolyForm f = zero_poly_form(m, 0);
    f[0] = Polynomial::coordinate(m, 0) * Polynomial::coordinate(m, 1);
    PolyForm not_closed = zero_poly_form(m, 1);
    not_closed[0] = Polynomial::coordinate(m, 1);
    const bool accepts = check_commute_condition({exterior_derivative(f), constant});
    const bool rejects = !check_commute_condition({constant, not_closed});
    rec.status = accepts && rejects ? CheckStatus::Pass : CheckStatus::Fail;
    if (!accepts) rec.detail = "closed family rejected";
    if (!rejects) rec.detail = "non-closed family accepted";
    return rec;
  });

  for (int q = 1; q <= std::min(max_q, n); ++q)
    tasks.push_back([=] {
      CheckRecord rec = make_record("solution_system.q" + std::to_string(q), "consequences of S u = 0 reduce, j0 = 1..q");
      long long count = 0;
      try {
        for (int j0 = 1; j0 <= q; ++j0)
          for (const auto& r : verify_solution_system(n, q, j0, ro)) {
            ++count;
            if (r.status != DerivationStatus::Reduced) {
              rec.status = CheckStatus::Fail;
              rec.detail = r.name + " (j0 = " + std::to_string(j0) + "): " + r.statement + " leaves " + r.residual;
              rec.metrics["identities"] = count;
              return rec;
            }
          }
        rec.status = CheckStatus::Pass;
      } catch (const BudgetExceeded& e) {
        rec.status = CheckStatus::Stuck;
        rec.detail = e.what();
      }
      rec.metrics["identities"] = count;
      return rec;
    });

  tasks.push_back([=] {
    CheckRecord rec = make_record("negative_controls.sign_flips", "every single sign flip in Psi_r breaks S Psi_r = I");
    long long detected = 0;
    RewriteOptions clean = ro;
    clean.corrupt = false;
    try {
      for (PsiMutation m : all_mutations()) {
        bool caught = false;
        for (int q = 1; q <= std::min(2, n) && !caught; ++q)
          caught = !(build_stokes(n, q, q, A) * build_psi_right(n, q, q, A, m) - BlockMatrix::identity(n, q))
                        .normalized(clean)
                        .is_zero();
        if (caught)
          ++detected;
        else if (rec.detail.empty())
          rec.detail = "mutation " + to_string(m) + " went undetected";
      }
      rec.status = detected == static_cast<long long>(all_mutations().size()) ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const BudgetExceeded& e) {
      rec.status = CheckStatus::Stuck;
      rec.detail = e.what();
    }
    rec.metrics["mutations"] = static_cast<long long>(all_mutations().size());
    rec.metrics["detected"] = detected;
    return rec;
  });

  return tasks;
}

// ----- kernels -----

std::vector<int> grid_levels(const RunConfig& cfg, int n) {
  std::vector<int> levels;
  for (long long v : cfg.integers("grid.levels")) levels.push_back(static_cast<int>(v));
  if (levels.empty()) levels = n == 2 ? std::vector<int>{32, 64, 128} : std::vector<int>{24, 48};
  if (levels.size() < 2) throw ConfigError("grid.levels needs at least two grids");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k] < 16) throw ConfigError("grid.levels entries must be at least 16");
    if (k > 0 && levels[k] != 2 * levels[k - 1]) throw ConfigError("grid.levels must double from one grid to the next");
    const double nodes = std::pow(static_cast<double>(levels[k]), n);
    if (nodes > std::pow(256.0, 3))
      throw ConfigError("grid of " + std::to_string(levels[k]) + "^" + std::to_string(n) +
                        " nodes exceeds the memory guard of 256^3 nodes");
  }
  return levels;
}

KernelSettings kernel_settings(const RunConfig& cfg) {
  KernelSettings s;
  s.method = parse_convolution_method(cfg.text("kernel.method"));
  s.pad_factor = static_cast<int>(cfg.integer("kernel.pad_factor"));
  s.singular_tol = cfg.real("kernel.singular_tol");
  if (s.method == ConvolutionMethod::Fft && s.pad_factor < 2) throw ConfigError("kernel.pad_factor must be at least 2");
  if (!(s.singular_tol > 0)) throw ConfigError("kernel.singular_tol must be positive");
  return s;
}

int dimension(const RunConfig& cfg) {
  const long long n = cfg.integer("n");
  if (n != 2 && n != 3) throw ConfigError("n must be 2 or 3 for numerical commands");
  return static_cast<int>(n);
}

StokesSpec numeric_spec(const RunConfig& cfg) {
  const int n = dimension(cfg);
  const long long q = cfg.integer("q"), j0 = cfg.integer("j0");
  if (q < 1 || q > n) throw ConfigError("q must lie in 1..n");
  if (j0 != 0 && j0 != q) throw ConfigError("numerical commands need j0 = q (or j0 = 0 for the default)");
  if (cfg.text("matrices") == "scalar") {
    const double a = cfg.real("lame.a"), at = cfg.real("lame.a_tilde");
    if (!(a > 0) || !(at > 0)) throw ConfigError("lame.a and lame.a_tilde must be positive");
    return StokesSpec::scalar_top(n, static_cast<int>(q), a, at);
  }
  return StokesSpec::identity(n, static_cast<int>(q), static_cast<int>(q));
}

BumpForm test_bump_form(int n, int degree, std::mt19937_64& rng, double radius, double sharpness) {
  std::uniform_real_distribution<double> center(-0.05, 0.05), amp(0.5, 1.0), sign(0, 1);
  BumpForm f(n, degree, BumpSum{});
  for (std::size_t k = 0; k < f.size(); ++k) {
    Bump b;
    for (int a = 0; a < n; ++a) b.center.push_back(center(rng));
    b.radius = radius;
    b.amplitude = amp(rng) * (sign(rng) < 0.5 ? -1 : 1);
    b.sharpness = sharpness;
    f[k] = BumpSum(b);
  }
  return f;
}

void add_refinement_metrics(CheckRecord& rec, const std::vector<int>& levels, const std::vector<double>& errors,
                            double min_order, double tol, const std::string& prefix = "residual") {
  for (std::size_t k = 0; k < levels.size(); ++k) rec.metrics[prefix + "_" + std::to_string(levels[k])] = errors[k];
  const std::size_t L = levels.size();
  const double h_c = 1.0 / (levels[L - 2] - 1), h_f = 1.0 / (levels[L - 1] - 1);
  const double order = errors[L - 1] == 0 ? std::numeric_limits<double>::infinity()
                                          : observed_order(errors[L - 2], errors[L - 1], h_c, h_f);
  rec.metrics[prefix + "_order"] = order;
  const bool ok_order = order >= min_order;
  const bool ok_final = errors[L - 1] <= tol;
  if (ok_order && ok_final) {
    rec.status = CheckStatus::Pass;
  } else {
    rec.status = CheckStatus::Fail;
    std::ostringstream os;
    os << std::setprecision(3);
    if (!ok_order) os << prefix << " order " << order << " below " << min_order;
    if (!ok_order && !ok_final) os << "; ";
    if (!ok_final) os << "final " << prefix << " " << errors[L - 1] << " above " << tol;
    rec.detail = os.str();
  }
}

// ----- reconstruction -----

DomainSpec reconstruction_domain(const RunConfig& cfg, int n) {
  if (cfg.text("domain.shape") == "ball") {
    const double r = cfg.real("domain.radius");
    if (!(r > 0)) throw ConfigError("domain.radius must be positive");
    return DomainSpec::ball(n, r);
  }
  std::vector<double> corners = cfg.reals("domain.box");
  if (corners.empty()) {
    corners.assign(n, -1.0);
    corners.insert(corners.end(), n, 1.0);
  }
  if (static_cast<int>(corners.size()) != 2 * n) throw ConfigError("domain.box needs 2n numbers (lo..., hi...)");
  DomainSpec d = DomainSpec::box({corners.begin(), corners.begin() + n}, {corners.begin() + n, corners.end()});
  try {
    d.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("domain.box: ") + e.what());
  }
  return d;
}

std::vector<double> domain_center(const DomainSpec& d) {
  if (d.shape == DomainShape::Ball) return d.center;
  std::vector<double> c(d.n);
  for (int a = 0; a < d.n; ++a) c[a] = 0.5 * (d.lo[a] + d.hi[a]);
  return c;
}

std::vector<double> random_direction(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  double s = 0;
  do {
    s = 0;
    for (auto& x : v) {
      x = g(rng);
      s += x * x;
    }
  } while (s < 1e-12);
  for (auto& x : v) x /= std::sqrt(s);
  return v;
}

// Interior points at distance >= 0.2 diam from the boundary; exterior points
// at distance >= 0.5 diam from the closed domain.
std::vector<std::vector<double>> interior_points(const DomainSpec& d, int count, std::mt19937_64& rng) {
  const double diam = d.diameter();
  const auto c = domain_center(d);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<std::vector<double>> pts;
  for (int tries = 0; static_cast<int>(pts.size()) < count; ++tries) {
    if (tries > 100000) throw ConfigError("domain too thin for interior evaluation points");
    const auto dir = random_direction(d.n, rng);
    std::vector<double> x(d.n);
    const double r = 0.5 * diam * u(rng);
    for (int a = 0; a < d.n; ++a) x[a] = c[a] + r * dir[a];
    if (d.contains(x) && d.distance_to_boundary(x) >= 0.2 * diam) pts.push_back(std::move(x));
  }
  return pts;
}

std::vector<std::vector<double>> exterior_points(const DomainSpec& d, int count, std::mt19937_64& rng) {
  const double diam = d.diameter();
  const auto c = domain_center(d);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<std::vector<double>> pts;
  while (static_cast<int>(pts.size()) < count) {
    const auto dir = random_direction(d.n, rng);
    std::vector<double> x(d.n);
    const double r = (1.0 + 0.5 * u(rng)) * diam + 0.5 * diam;
    for (int a = 0; a < d.n; ++a) x[a] = c[a] + r * dir[a];
    if (!d.contains(x) && d.distance_to_boundary(x) >= 0.5 * diam) pts.push_back(std::move(x));
  }
  return pts;
}

std::string component_label(int degree, std::size_t coef, int n) {
  std::string s = "u" + std::to_string(degree);
  if (degree == 0) return s;
  s += ".";
  for (int i : multi_indices(n, degree)[coef].indices()) s += std::to_string(i + 1);
  return s;
}

struct ErrorSummary {
  double interior_abs = 0;
  double interior_ref = 0;
  double exterior_abs = 0;
  long long near_boundary = 0;
  double interior_rel() const { return interior_ref > 0 ? interior_abs / interior_ref : interior_abs; }
};

ErrorSummary evaluate_solution(const HomotopyReconstructor& rec, const AnalyticSolution& sol, const DomainSpec& domain,
                               int nodes, const std::vector<std::vector<double>>& inner,
                               const std::vector<std::vector<double>>& outer, std::vector<ReconstructionRow>* rows) {
  const BoundaryTrace trace = sample_trace(boundary_quadrature(domain, nodes), sol.field);
  ErrorSummary e;
  auto visit = [&](const std::vector<double>& x, bool inside) {
    const Reconstruction r = rec.reconstruct(trace, x);
    if (r.near_boundary) ++e.near_boundary;
    const TupleJet ref = inside ? sol.field(x) : TupleJet{};
    for (std::size_t i = 0; i < r.value.size(); ++i)
      for (std::size_t c = 0; c < r.value[i].size(); ++c) {
        const double want = inside ? ref[i].value[c] : 0.0;
        const double err = std::abs(r.value[i][c] - want);
        if (inside) {
          e.interior_abs = std::max(e.interior_abs, err);
          e.interior_ref = std::max(e.interior_ref, std::abs(want));
        } else {
          e.exterior_abs = std::max(e.exterior_abs, err);
        }
        if (rows)
          rows->push_back({sol.kind, x, component_label(r.value[i].degree(), c, domain.n), r.value[i][c], want, err});
      }
  };
  for (const auto& x : inner) visit(x, true);
  for (const auto& x : outer) visit(x, false);
  return e;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

double parse_number(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw FormatError("trailing characters in number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw FormatError("malformed number '" + s + "' in table");
  }
}

}  // namespace

int worker_count(int requested) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DRSTOKES_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = cap;
  }
  if (requested > 0) n = std::min(n, requested);
  return std::max(n, 1);
}

std::map<std::string, std::string> config_echo(const RunConfig& cfg) { return cfg.values(); }

VerificationReport cmd_verify_algebra(const RunConfig& cfg, const RunOptions& opts) {
  const long long n = cfg.integer("algebra.n"), max_q = cfg.integer("algebra.max_q");
  if (n < 1 || n > 6) throw ConfigError("algebra.n must lie in 1..6");
  if (max_q < 1 || max_q > 3) throw ConfigError("algebra.max_q must lie in 1..3");
  if (cfg.integer("algebra.budget") < 1) throw ConfigError("algebra.budget must be positive");
  if (cfg.integer("algebra.corpus") < 1) throw ConfigError("algebra.corpus must be positive");

  VerificationReport rep;
  rep.tool_version = library_version();
  rep.command = "verify-algebra";
  rep.timestamp = utc_timestamp();
  rep.config = config_echo(cfg);
  rep.records = run_tasks(algebra_tasks(cfg), opts);
  return rep;
}

VerificationReport cmd_verify_kernels(const RunConfig& cfg, const RunOptions& opts) {
  // everything validated before the first convolution
  const int n = dimension(cfg);
  const std::vector<int> levels = grid_levels(cfg, n);
  const KernelSettings ks = kernel_settings(cfg);
  const StokesSpec spec = numeric_spec(cfg);
  const double L = cfg.real("grid.extent"), radius = cfg.real("bump.radius"), sharp = cfg.real("bump.sharpness");
  if (!(L > 0)) throw ConfigError("grid.extent must be positive");
  if (!(radius > 0) || radius + 0.05 > 0.9 * L) throw ConfigError("bump.radius must be positive and leave a margin inside the grid");
  if (!(sharp > 0)) throw ConfigError("bump.sharpness must be positive");
  const double min_order = cfg.real("tol.order"), tol_k = cfg.real("tol.kernel_residual"),
               tol_s = cfg.real("tol.stokes_residual");
  const auto suites = cfg.texts("kernel.suites");
  if (suites.empty()) throw ConfigError("kernel.suites is empty");
  const std::uint64_t seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  auto has = [&](const char* s) { return std::find(suites.begin(), suites.end(), s) != suites.end(); };

  std::vector<std::shared_ptr<PotentialPlans>> plans;
  auto plan = [&](std::size_t k) -> const PotentialPlans& { return *plans[k]; };
  if (has("inversion") || has("commutation"))
    for (int m : levels) plans.push_back(std::make_shared<PotentialPlans>(GridSpec::cube(n, L, m), ks));

  std::vector<Task> tasks;
  if (has("inversion"))
    for (int deg = 0; deg <= n; ++deg)
      tasks.push_back([&, deg] {
        std::mt19937_64 rng(seed * 1000 + static_cast<std::uint64_t>(deg));
        const BumpForm u = test_bump_form(n, deg, rng, radius, sharp);
        CheckRecord rec = make_record("inversion.q" + std::to_string(deg), "Delta_h Phi u - u -> 0 at second order");
        std::vector<double> errs;
        for (std::size_t k = 0; k < levels.size(); ++k) errs.push_back(inversion_residual(plan(k), sample(u, plan(k).grid())));
        add_refinement_metrics(rec, levels, errs, min_order, tol_k);
        return rec;
      });
  if (has("commutation"))
    for (int deg = 0; deg <= n; ++deg)
      tasks.push_back([&, deg] {
        std::mt19937_64 rng(seed * 1000 + 100 + static_cast<std::uint64_t>(deg));
        const BumpForm u = test_bump_form(n, deg, rng, radius, sharp);
        CheckRecord rec = make_record("commutation.q" + std::to_string(deg), "d Phi u - Phi d u -> 0 and d* Phi u - Phi d* u -> 0");
        std::vector<double> errs;
        for (std::size_t k = 0; k < levels.size(); ++k) errs.push_back(commutation_residual(plan(k), u).max());
        add_refinement_metrics(rec, levels, errs, min_order, tol_k);
        return rec;
      });
  if (has("stokes"))
    tasks.push_back([&] {
      std::mt19937_64 rng(seed * 1000 + 200);
      BumpTuple f{n, spec.q, {}};
      for (int i = 0; i <= spec.q; ++i) f.comps.push_back(test_bump_form(n, spec.q - i, rng, radius, sharp));
      ResidualSettings rs;
      rs.base_nodes = levels.front();
      rs.refinements = static_cast<int>(levels.size());
      rs.half_extent = L;
      rs.kernel = ks;
      rs.min_order = min_order;
      const ResidualReport r = residual_report(spec, f, rs);
      CheckRecord rec = make_record("stokes.q" + std::to_string(spec.q), "S Psi f - f -> 0 and Psi S f - f -> 0");
      std::vector<double> right, left;
      for (const auto& l : r.levels) {
        right.push_back(l.residual_right);
        left.push_back(l.residual_left);
      }
      CheckRecord a = rec, b = rec;
      add_refinement_metrics(a, levels, right, min_order, tol_s, "right");
      add_refinement_metrics(b, levels, left, min_order, tol_s, "left");
      rec.metrics = a.metrics;
      rec.metrics.insert(b.metrics.begin(), b.metrics.end());
      rec.status = a.status == CheckStatus::Pass && b.status == CheckStatus::Pass ? CheckStatus::Pass : CheckStatus::Fail;
      rec.detail = a.detail + (a.detail.empty() || b.detail.empty() ? "" : "; ") + b.detail;
      return rec;
    });

  VerificationReport rep;
  rep.tool_version = library_version();
  rep.command = "verify-kernels";
  rep.timestamp = utc_timestamp();
  rep.config = config_echo(cfg);
  rep.records = run_tasks(tasks, opts);
  return rep;
}

VerificationReport cmd_reconstruct(const RunConfig& cfg, std::vector<ReconstructionRow>* rows, const RunOptions& opts) {
  const int n = dimension(cfg);
  if (cfg.integer("q") != 1)
    throw UnsupportedConfiguration("reconstruction is implemented for q = 1 only (got q = " +
                                   std::to_string(cfg.integer("q")) + ")");
  const StokesSpec spec = numeric_spec(cfg);
  const DomainSpec domain = reconstruction_domain(cfg, n);
  const long long nodes = cfg.integer("quad.nodes_per_axis");
  if (nodes < 8 || nodes > 512) throw ConfigError("quad.nodes_per_axis must lie in 8..512");
  const long long n_in = cfg.integer("points.interior"), n_out = cfg.integer("points.exterior");
  if (n_in < 1 || n_out < 0 || n_in > 1000 || n_out > 1000) throw ConfigError("points.interior / points.exterior out of range");
  std::vector<double> pole = cfg.reals("solution.pole");
  if (pole.empty()) {
    pole.assign(n, 0.0);
    pole[0] = 2.0;
    pole[1] = 0.5;
  }
  if (static_cast<int>(pole.size()) != n) throw ConfigError("solution.pole needs n coordinates");
  if (domain.contains(pole) || domain.distance_to_boundary(pole) < 0.25 * domain.diameter())
    throw ConfigError("solution.pole must lie outside the domain, at least 0.25 diam away");
  const auto kinds = cfg.texts("solution.kind");
  if (kinds.empty()) throw ConfigError("solution.kind is empty");
  const double tol = cfg.real("tol.reconstruct"), tol_pole = cfg.real("tol.pole_relative");

  std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.integer("seed")));
  const auto inner = interior_points(domain, static_cast<int>(n_in), rng);
  const auto outer = exterior_points(domain, static_cast<int>(n_out), rng);
  const HomotopyReconstructor rec(spec, domain);

  std::vector<AnalyticSolution> sols;
  for (const auto& k : kinds) sols.push_back(make_solution(k, spec, pole));

  std::vector<std::vector<ReconstructionRow>> part_rows(sols.size());
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < sols.size(); ++s)
    tasks.push_back([&, s] {
      const AnalyticSolution& sol = sols[s];
      const ErrorSummary e = evaluate_solution(rec, sol, domain, static_cast<int>(nodes), inner, outer,
                                               rows ? &part_rows[s] : nullptr);
      const bool pole_kind = sol.kind == "exterior_pole";
      CheckRecord r = make_record("reconstruct." + sol.kind, "-int G_S(Psi(x, .), u) = u(x) inside, 0 outside");
      r.metrics["interior_max_abs_error"] = e.interior_abs;
      r.metrics["interior_max_rel_error"] = e.interior_rel();
      r.metrics["exterior_max_abs"] = e.exterior_abs;
      r.metrics["near_boundary_points"] = e.near_boundary;
      r.metrics["boundary_nodes"] = static_cast<long long>(boundary_quadrature(domain, static_cast<int>(nodes)).size());
      const double bound = pole_kind ? tol_pole : tol;
      const bool ok_in = e.interior_rel() <= bound, ok_out = e.exterior_abs <= tol;
      r.status = ok_in && ok_out ? CheckStatus::Pass : CheckStatus::Fail;
      std::ostringstream os;
      os << std::setprecision(3);
      if (!ok_in) os << "interior relative error " << e.interior_rel() << " above " << bound << "; ";
      if (!ok_out) os << "exterior value " << e.exterior_abs << " above " << tol;
      r.detail = os.str();
      return r;
    });

  // refinement of the quadrature at a quarter, half and the full node count
  tasks.push_back([&] {
    CheckRecord r = make_record("reconstruct.refinement", "quadrature error at least halves per node doubling");
    const AnalyticSolution sol =
        make_solution(std::find(kinds.begin(), kinds.end(), "exterior_pole") != kinds.end() ? "exterior_pole" : kinds.front(),
                      spec, pole);
    constexpr double kFloor = 1e-12;
    std::vector<int> ms;
    for (long long m = std::max<long long>(4, nodes / 4); m <= nodes; m *= 2) ms.push_back(static_cast<int>(m));
    std::vector<double> errs;
    for (int m : ms) {
      const ErrorSummary e = evaluate_solution(rec, sol, domain, m, inner, outer, nullptr);
      errs.push_back(std::max(e.interior_rel(), e.exterior_abs));
      r.metrics["error_m" + std::to_string(m)] = errs.back();
    }
    r.metrics["floor"] = kFloor;
    r.status = CheckStatus::Pass;
    for (std::size_t k = 1; k < errs.size(); ++k)
      if (!(errs[k] <= 0.5 * errs[k - 1] || errs[k] <= kFloor)) {
        r.status = CheckStatus::Fail;
        r.detail = "error did not halve from m = " + std::to_string(ms[k - 1]) + " to m = " + std::to_string(ms[k]);
        break;
      }
    r.identity += " (" + sol.kind + ")";
    return r;
  });

  VerificationReport rep;
  rep.tool_version = library_version();
  rep.command = "reconstruct";
  rep.timestamp = utc_timestamp();
  rep.config = config_echo(cfg);
  rep.records = run_tasks(tasks, opts);
  if (rows)
    for (auto& p : part_rows) rows->insert(rows->end(), p.begin(), p.end());
  return rep;
}

VerificationReport cmd_report_merge(const std::vector<std::string>& report_texts) {
  std::vector<VerificationReport> parts;
  for (const auto& t : report_texts) parts.push_back(report_from_json(t));
  return merge_reports(parts, library_version());
}

std::string to_csv(const std::vector<ReconstructionRow>& rows) {
  std::ostringstream os;
  os << "solution,point,component,reconstructed,reference,abs_err\n";
  for (const auto& r : rows) {
    os << r.solution << ',';
    for (std::size_t a = 0; a < r.point.size(); ++a) os << (a ? " " : "") << format_number(r.point[a]);
    os << ',' << r.component << ',' << format_number(r.reconstructed) << ',' << format_number(r.reference) << ','
       << format_number(r.abs_err) << '\n';
  }
  return os.str();
}

std::vector<ReconstructionRow> rows_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "solution,point,component,reconstructed,reference,abs_err")
    throw FormatError("reconstruction table has the wrong header");
  std::vector<ReconstructionRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) throw FormatError("line " + std::to_string(lineno) + ": expected 6 columns");
    ReconstructionRow r;
    r.solution = cells[0];
    std::istringstream pts(cells[1]);
    std::string c;
    while (pts >> c) r.point.push_back(parse_number(c));
    if (r.point.empty()) throw FormatError("line " + std::to_string(lineno) + ": empty point");
    r.component = cells[2];
    r.reconstructed = parse_number(cells[3]);
    r.reference = parse_number(cells[4]);
    r.abs_err = parse_number(cells[5]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace drstokes
