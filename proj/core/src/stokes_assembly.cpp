#include "drstokes/stokes_assembly.hpp"

#include <algorithm>
#include <cmath>

#include "drstokes/errors.hpp"
#include "drstokes/exterior.hpp"
#include "drstokes/stokes_blocks.hpp"

namespace drstokes {

namespace {

bool scalar_multiple(const MatrixCoefficient& m, Rational& value) {
  if (m.size() == 0) return false;
  value = m(0, 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m(i, j) != (i == j ? value : Rational(0))) return false;
  return true;
}

void check_matrix(const MatrixCoefficient& m, int n, int degree, const char* what, int level) {
  const std::string where = std::string(what) + " at degree " + std::to_string(level);
  if (m.dim() != n || m.degree() != degree)
    throw DegreeMismatch(where + " must act on " + std::to_string(degree) + "-forms in dimension " + std::to_string(n));
  if (!m.is_positive()) throw ParameterError(where + " is not positive definite");
}

}  // namespace

StokesSpec StokesSpec::identity(int n, int q, int j0) {
  StokesSpec s{n, q, j0, {}};
  for (int j = j0; j <= q; ++j) {
    LameLevel l;
    if (j < n) l.M = MatrixCoefficient::identity(n, j + 1);
    if (j >= 1) l.Mt = MatrixCoefficient::identity(n, j - 1);
    s.levels[j] = std::move(l);
  }
  s.validate();
  return s;
}

StokesSpec StokesSpec::scalar_top(int n, int q, double a, double at) {
  if (!(a > 0) || !(at > 0)) throw ParameterError("Lame scalars must be positive");
  StokesSpec s{n, q, q, {}};
  LameLevel l;
  if (q < n) l.M = MatrixCoefficient::scalar(n, q + 1, rational_from_double(a));
  if (q >= 1) l.Mt = MatrixCoefficient::scalar(n, q - 1, rational_from_double(at));
  s.levels[q] = std::move(l);
  s.validate();
  return s;
}

void StokesSpec::validate() const {
  if (!(1 <= j0 && j0 <= q && q <= n))
    throw ParameterError("Stokes system needs 1 <= j0 <= q <= n, got n=" + std::to_string(n) + " q=" +
                         std::to_string(q) + " j0=" + std::to_string(j0));
  for (int j = j0; j <= q; ++j) {
    auto it = levels.find(j);
    if (it == levels.end()) throw ParameterError("missing Lame coefficients at degree " + std::to_string(j));
    if (j < n) check_matrix(it->second.M, n, j + 1, "M", j);
    if (j >= 1) check_matrix(it->second.Mt, n, j - 1, "Mt", j);
  }
  for (const auto& [j, l] : levels)
    if (j < j0 || j > q) throw ParameterError("Lame coefficients given at degree " + std::to_string(j) + " outside j0..q");
}

bool StokesSpec::is_identity() const {
  for (const auto& [j, l] : levels) {
    if (j < n && !l.M.is_identity()) return false;
    if (j >= 1 && !l.Mt.is_identity()) return false;
  }
  return true;
}

std::optional<std::pair<Rational, Rational>> StokesSpec::top_scalars() const {
  auto it = levels.find(q);
  if (it == levels.end()) return std::nullopt;
  Rational a = 1, at = 1;
  if (q < n && !scalar_multiple(it->second.M, a)) return std::nullopt;
  if (q >= 1 && !scalar_multiple(it->second.Mt, at)) return std::nullopt;
  return std::make_pair(a, at);
}

FormTuple zero_tuple(const GridSpec& grid, int n, int q) {
  FormTuple t;
  for (int i = 0; i <= q; ++i) t.push_back(zero_grid_form(grid, q - i));
  if (grid.dim() != n) throw DimensionMismatch("grid dimension does not match n");
  return t;
}

void check_tuple(const FormTuple& u, int n, int q) {
  if (static_cast<int>(u.size()) != q + 1) throw DimensionMismatch("tuple needs q + 1 components");
  for (int i = 0; i <= q; ++i) {
    if (u[i].dim() != n) throw DimensionMismatch("tuple component has the wrong dimension");
    if (u[i].degree() != q - i) throw DegreeMismatch("tuple degrees must descend from q to 0");
    if (!(u[i][0].grid() == u[0][0].grid())) throw DimensionMismatch("tuple components live on different grids");
  }
}

double inner_product(const FormTuple& u, const FormTuple& v) {
  if (u.size() != v.size()) throw DimensionMismatch("tuples differ in length");
  double s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += inner_product(u[i], v[i]);
  return s;
}

double max_abs(const FormTuple& u) {
  double m = 0;
  for (const auto& c : u) m = std::max(m, max_abs(c));
  return m;
}

double max_abs_interior(const FormTuple& u, int margin) {
  double m = 0;
  for (const auto& c : u) m = std::max(m, max_abs_interior(c, margin));
  return m;
}

FormTuple operator-(const FormTuple& a, const FormTuple& b) {
  if (a.size() != b.size()) throw DimensionMismatch("tuples differ in length");
  FormTuple r;
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] - b[i]);
  return r;
}

FormTuple operator*(double c, const FormTuple& a) {
  FormTuple r;
  for (const auto& f : a) {
    GridForm g = f;
    for (std::size_t k = 0; k < g.size(); ++k) g[k] *= c;
    r.push_back(std::move(g));
  }
  return r;
}

FormTuple apply_stokes(const StokesSpec& spec, const FormTuple& u) {
  spec.validate();
  check_tuple(u, spec.n, spec.q);
  const int n = spec.n, q = spec.q;
  FormTuple out;
  for (int i = 0; i <= q; ++i) out.push_back(u[i].zero_of_degree(q - i));
  for (int i = 0; i <= q; ++i) {
    const int deg = q - i;
    if (deg >= spec.j0) {
      const LameLevel& l = spec.levels.at(deg);
      Rational a = 1, at = 1;
      const bool scalar = (deg == n || scalar_multiple(l.M, a)) && (deg == 0 || scalar_multiple(l.Mt, at));
      if (scalar) {
        // a d*d + at dd* = a Delta + (at - a) dd* (or (a - at) d*d at the top
        // degree), with Delta on the compact stencil
        const double ad = to_double(a), atd = to_double(at);
        const double lead = deg == n ? atd : ad;
        GridForm lap = discrete_hodge_laplacian(u[i]);
        for (std::size_t k = 0; k < lap.size(); ++k) lap[k] *= lead;
        out[i] += lap;
        if (deg >= 1 && deg < n && atd != ad) {
          GridForm dds = exterior_derivative(codifferential(u[i]));
          for (std::size_t k = 0; k < dds.size(); ++k) dds[k] *= atd - ad;
          out[i] += dds;
        }
      } else {
        out[i] += lame_laplacian(l.M, l.Mt, u[i]);
      }
    }
    if (i < q) {
      out[i] += exterior_derivative(u[i + 1]);
      out[i + 1] += codifferential(u[i]);
    }
  }
  return out;
}

BlockMatrix substitute_scalar_lame(const BlockMatrix& m, const std::map<int, std::pair<Rational, Rational>>& scalars) {
  const int n = m.dim();
  BlockMatrix out(n, m.degree());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) {
      const Expression& e = m(i, j);
      Expression r(n, e.source(), e.target());
      for (const auto& [w, c] : e.terms()) {
        std::vector<std::pair<Rational, Word>> parts{{c, {}}};
        for (const Generator& g : w) {
          auto it = scalars.find(g.level);
          const bool lame = g.kind == GenKind::M || g.kind == GenKind::Mt || g.kind == GenKind::PhiMu;
          if (!lame || it == scalars.end()) {
            for (auto& p : parts) p.second.push_back(g);
            continue;
          }
          const auto& [a, at] = it->second;
          const int l = g.level;
          if (g.kind == GenKind::M || g.kind == GenKind::Mt) {
            for (auto& p : parts) p.first *= g.kind == GenKind::M ? a : at;
            continue;
          }
          std::vector<std::pair<Rational, Word>> next;
          for (const auto& p : parts) {
            if (l < n) next.emplace_back(p.first / a, concat(p.second, {phi(l), ds(l), d(l), phi(l)}));
            if (l >= 1) next.emplace_back(p.first / at, concat(p.second, {phi(l), d(l - 1), ds(l - 1), phi(l)}));
          }
          parts = std::move(next);
        }
        for (const auto& [coef, word] : parts) r.add(word, coef);
      }
      out.set(i, j, std::move(r));
    }
  return out;
}

GridBlockOperator::GridBlockOperator(BlockMatrix normalized) : m_(std::move(normalized)) {
  for (int i = 0; i < m_.size(); ++i)
    for (int j = 0; j < m_.size(); ++j)
      for (const auto& [w, c] : m_(i, j).terms()) {
        std::size_t k = w.size();
        while (k > 0 && w[k - 1].kind == GenKind::Phi) --k;
        const bool diffs = std::all_of(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k), [](const Generator& g) {
          return g.kind == GenKind::D || g.kind == GenKind::DS;
        });
        if (!diffs || w.size() - k > 2)
          throw UnsupportedConfiguration("no grid realization for the word " + to_string(w));
      }
}

FormTuple GridBlockOperator::apply(const PotentialPlans& plans, const FormTuple& f) const {
  const int n = m_.dim(), q = m_.degree();
  check_tuple(f, n, q);
  if (!(f[0][0].grid() == plans.grid())) throw DimensionMismatch("tuple grid does not match the potential plans");

  // Potentials Phi^k f_j needed by some word.
  struct Task {
    int column;
    int power;
  };
  std::vector<Task> tasks;
  for (int j = 0; j <= q; ++j) {
    if (f[j].is_zero()) continue;
    bool need[3] = {false, false, false};
    for (int i = 0; i <= q; ++i)
      for (const auto& [w, c] : m_(i, j).terms()) {
        std::size_t k = 0;
        while (k < w.size() && w[w.size() - 1 - k].kind == GenKind::Phi) ++k;
        need[k] = true;
      }
    for (int k = 1; k <= 2; ++k)
      if (need[k]) tasks.push_back({j, k});
  }
  std::vector<GridForm> pots(tasks.size(), f[0]);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(tasks.size()); ++t) {
    const GridForm& src = f[tasks[t].column];
    pots[t] = tasks[t].power == 1 ? phi_apply(plans, src) : phi_sq_apply(plans, src);
  }
  auto potential = [&](int j, int k) -> const GridForm& {
    if (k == 0) return f[j];
    for (std::size_t t = 0; t < tasks.size(); ++t)
      if (tasks[t].column == j && tasks[t].power == k) return pots[t];
    throw Error("missing potential");
  };

  FormTuple out = zero_tuple(plans.grid(), n, q);
  for (int i = 0; i <= q; ++i)
    for (int j = 0; j <= q; ++j) {
      if (f[j].is_zero()) continue;
      for (const auto& [w, c] : m_(i, j).terms()) {
        std::size_t k = 0;
        while (k < w.size() && w[w.size() - 1 - k].kind == GenKind::Phi) ++k;
        GridForm v = potential(j, static_cast<int>(k));
        for (std::size_t p = w.size() - k; p-- > 0;)
          v = w[p].kind == GenKind::D ? exterior_derivative(v) : codifferential(v);
        const double s = to_double(c);
        for (std::size_t a = 0; a < v.size(); ++a) out[i][a] += v[a] * s;
      }
    }
  return out;
}

GridBlockOperator psi_identity_operator(int n, int q) {
  return GridBlockOperator(build_psi_bilateral(n, q, CoefficientMode::Identity).normalized());
}

GridBlockOperator psi_scalar_operator(int n, int q, const Rational& a, const Rational& at) {
  if (a <= 0 || at <= 0) throw ParameterError("Lame scalars must be positive");
  const BlockMatrix psi = build_psi_bilateral(n, q, CoefficientMode::Abstract);
  return GridBlockOperator(substitute_scalar_lame(psi, {{q, {a, at}}}).normalized());
}

FormTuple apply_psi_identity(const PotentialPlans& plans, const StokesSpec& spec, const FormTuple& f) {
  spec.validate();
  if (spec.j0 != spec.q || !spec.is_identity())
    throw UnsupportedConfiguration("apply_psi_identity needs identity matrices and j0 = q");
  return psi_identity_operator(spec.n, spec.q).apply(plans, f);
}

FormTuple apply_psi_scalar_lame(const PotentialPlans& plans, const StokesSpec& spec, const FormTuple& f) {
  spec.validate();
  const auto s = spec.top_scalars();
  if (spec.j0 != spec.q || !s) throw UnsupportedConfiguration("apply_psi_scalar_lame needs scalar matrices and j0 = q");
  return psi_scalar_operator(spec.n, spec.q, s->first, s->second).apply(plans, f);
}

}  // namespace drstokes
