#include "drstokes/green_homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "drstokes/errors.hpp"
#include "drstokes/exterior.hpp"
#include "drstokes/stokes_blocks.hpp"

namespace drstokes {

namespace {

double dot(const Form<double>& a, const Form<double>& b) {
  if (a.dim() != b.dim() || a.degree() != b.degree()) throw DegreeMismatch("pointwise pairing of mismatched forms");
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

void require_gradient(const FormJet& j, int slot) {
  if (!j.has_gradient())
    throw IncompleteTrace("tuple slot " + std::to_string(slot) + " needs first derivatives on the boundary");
}

void check_jet(const TupleJet& u, int n, int q) {
  if (static_cast<int>(u.size()) != q + 1) throw DimensionMismatch("tuple jet needs q + 1 components");
  for (int i = 0; i <= q; ++i) {
    if (u[i].value.dim() != n || u[i].value.degree() != q - i)
      throw DegreeMismatch("tuple jet degrees must descend from q to 0");
    if (u[i].has_gradient() && static_cast<int>(u[i].gradient.size()) != n)
      throw DimensionMismatch("tuple jet gradient needs n partial derivatives");
  }
}

double inner(const std::vector<Form<double>>& a, const std::vector<Form<double>>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += dot(a[i], b[i]);
  return s;
}

std::vector<Form<double>> evaluate_tuple(const std::vector<PolyForm>& u, const std::vector<double>& x) {
  std::vector<Form<double>> out;
  for (const auto& f : u) {
    std::vector<double> c(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) c[k] = f[k].evaluate(x);
    out.emplace_back(f.dim(), f.degree(), std::move(c));
  }
  return out;
}

void check_poly_tuple(const std::vector<PolyForm>& u, int n, int q) {
  if (static_cast<int>(u.size()) != q + 1) throw DimensionMismatch("tuple needs q + 1 components");
  for (int i = 0; i <= q; ++i) {
    if (u[i].dim() != n) throw DimensionMismatch("tuple component has the wrong dimension");
    if (u[i].degree() != q - i) throw DegreeMismatch("tuple degrees must descend from q to 0");
  }
}

// dx_j ^ dx_J = sign dx_K for every j not in J, |J| = p.
struct WedgeEntry {
  int j;
  std::size_t J;
  std::size_t K;
  double sign;
};

const std::vector<WedgeEntry>& wedge_table(int n, int p) {
  constexpr int kMaxDim = 8;
  if (n < 1 || n > kMaxDim || p < 0 || p >= n) throw DimensionMismatch("no wedge table for this degree");
  static const auto tables = [] {
    std::vector<std::vector<std::vector<WedgeEntry>>> t(kMaxDim + 1);
    for (int m = 1; m <= kMaxDim; ++m) {
      t[m].resize(m);
      for (int deg = 0; deg < m; ++deg) {
        const auto& Is = multi_indices(m, deg);
        for (std::size_t a = 0; a < Is.size(); ++a)
          for (int j = 0; j < m; ++j) {
            if (Is[a].contains(j)) continue;
            std::vector<int> k = Is[a].indices();
            k.insert(std::upper_bound(k.begin(), k.end(), j), j);
            t[m][deg].push_back({j, a, rank_of(MultiIndex(m, std::move(k))),
                                 static_cast<double>(merge_sign({j}, Is[a].indices()))});
          }
      }
    }
    return t;
  }();
  return tables[n][p];
}

// Dense double copy of a matrix coefficient.
std::vector<double> dense(const MatrixCoefficient& m) {
  std::vector<double> out(m.size() * m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i * m.size() + j] = to_double(m(i, j));
  return out;
}

Form<double> apply_dense(const std::vector<double>& m, const Form<double>& u) {
  Form<double> out(u.dim(), u.degree(), 0.0);
  const std::size_t s = u.size();
  for (std::size_t i = 0; i < s; ++i) {
    double acc = 0;
    for (std::size_t j = 0; j < s; ++j) acc += m[i * s + j] * u[j];
    out[i] = acc;
  }
  return out;
}

// G_S with the matrices converted to doubles once.
class DensityEvaluator {
 public:
  explicit DensityEvaluator(const StokesSpec& spec) : spec_(spec) {
    spec_.validate();
    for (const auto& [j, l] : spec_.levels) {
      Level d;
      if (j < spec_.n) d.M = dense(l.M);
      if (j >= 1) d.Mt = dense(l.Mt);
      levels_[j] = std::move(d);
    }
  }

  double operator()(const std::vector<double>& nu, const TupleJet& v, const TupleJet& u) const {
    const int n = spec_.n, q = spec_.q;
    if (static_cast<int>(nu.size()) != n) throw DimensionMismatch("normal has the wrong dimension");
    check_jet(u, n, q);
    check_jet(v, n, q);
    double s = 0;
    for (int i = 0; i < q; ++i)
      s += boundary_pairing(nu, u[i + 1].value, v[i].value) - boundary_pairing(nu, v[i + 1].value, u[i].value);
    for (int i = 0; i <= q; ++i) {
      const int deg = q - i;
      if (deg < spec_.j0) continue;
      require_gradient(u[i], i);
      require_gradient(v[i], i);
      const Level& l = levels_.at(deg);
      if (deg < n) {
        const Form<double> Mdu = apply_dense(l.M, jet_exterior_derivative(u[i]));
        const Form<double> Mdv = apply_dense(l.M, jet_exterior_derivative(v[i]));
        s += boundary_pairing(nu, u[i].value, Mdv) - boundary_pairing(nu, v[i].value, Mdu);
      }
      if (deg >= 1) {
        const Form<double> Mdsu = apply_dense(l.Mt, jet_codifferential(u[i]));
        const Form<double> Mdsv = apply_dense(l.Mt, jet_codifferential(v[i]));
        s += boundary_pairing(nu, Mdsu, v[i].value) - boundary_pairing(nu, Mdsv, u[i].value);
      }
    }
    return s;
  }

 private:
  struct Level {
    std::vector<double> M, Mt;
  };
  StokesSpec spec_;
  std::map<int, Level> levels_;
};

}  // namespace

double boundary_pairing(const std::vector<double>& nu, const Form<double>& a, const Form<double>& b) {
  const int n = a.dim(), p = a.degree();
  if (static_cast<int>(nu.size()) != n) throw DimensionMismatch("normal has the wrong dimension");
  if (b.dim() != n || b.degree() != p + 1) throw DegreeMismatch("boundary pairing needs degrees p and p + 1");
  double s = 0;
  for (const auto& e : wedge_table(n, p)) s += e.sign * nu[e.j] * a[e.J] * b[e.K];
  return s;
}

// d u = sum_j dx_j ^ d_j u.
Form<double> jet_exterior_derivative(const FormJet& u) {
  const int n = u.value.dim(), p = u.value.degree();
  if (!u.has_gradient()) throw IncompleteTrace("exterior derivative needs first derivatives");
  Form<double> out(n, std::min(p + 1, n), 0.0);
  if (p >= n) return out;
  for (const auto& e : wedge_table(n, p)) out[e.K] += e.sign * u.gradient[e.j][e.J];
  return out;
}

// d* v = -sum_j i(e_j) d_j v.
Form<double> jet_codifferential(const FormJet& v) {
  const int n = v.value.dim(), p = v.value.degree() - 1;
  if (p < 0) throw DegreeMismatch("codifferential of a 0-form is undefined");
  if (!v.has_gradient()) throw IncompleteTrace("codifferential needs first derivatives");
  Form<double> out(n, p, 0.0);
  for (const auto& e : wedge_table(n, p)) out[e.J] -= e.sign * v.gradient[e.j][e.K];
  return out;
}

double green_density_S(const StokesSpec& spec, const std::vector<double>& nu, const TupleJet& v, const TupleJet& u) {
  return DensityEvaluator(spec)(nu, v, u);
}

TupleJet poly_tuple_jet(const std::vector<PolyForm>& u, const std::vector<double>& x) {
  TupleJet out;
  for (const auto& f : u) {
    if (static_cast<int>(x.size()) != f.dim()) throw DimensionMismatch("point has the wrong dimension");
    FormJet j{Form<double>(f.dim(), f.degree(), 0.0), {}};
    for (std::size_t k = 0; k < f.size(); ++k) j.value[k] = f[k].evaluate(x);
    for (int a = 0; a < f.dim(); ++a) {
      Form<double> g(f.dim(), f.degree(), 0.0);
      for (std::size_t k = 0; k < f.size(); ++k) g[k] = f[k].derivative(a).evaluate(x);
      j.gradient.push_back(std::move(g));
    }
    out.push_back(std::move(j));
  }
  return out;
}

GreenIdentityCheck integrate_green_identity(const StokesSpec& spec, const DomainSpec& domain, int nodes_per_axis,
                                            const std::vector<PolyForm>& u, const std::vector<PolyForm>& v) {
  spec.validate();
  domain.validate();
  if (domain.n != spec.n) throw DimensionMismatch("domain and system dimensions differ");
  check_poly_tuple(u, spec.n, spec.q);
  check_poly_tuple(v, spec.n, spec.q);
  const auto Su = stokes_rows(spec, u);
  const auto Sv = stokes_rows(spec, v);

  const VolumeQuadrature vq = volume_quadrature(domain, nodes_per_axis);
  std::vector<double> vol(vq.weights.size());
  for (std::size_t k = 0; k < vol.size(); ++k) {
    const auto& x = vq.points[k];
    vol[k] = vq.weights[k] * (inner(evaluate_tuple(Su, x), evaluate_tuple(v, x)) -
                              inner(evaluate_tuple(u, x), evaluate_tuple(Sv, x)));
  }
  const BoundaryQuadrature bq = boundary_quadrature(domain, nodes_per_axis);
  const DensityEvaluator density(spec);
  std::vector<double> bnd(bq.size());
  for (std::size_t k = 0; k < bnd.size(); ++k)
    bnd[k] = bq.weights[k] * density(bq.normals[k], poly_tuple_jet(v, bq.nodes[k]), poly_tuple_jet(u, bq.nodes[k]));

  GreenIdentityCheck r;
  r.volume = pairwise_sum(vol);
  r.boundary = pairwise_sum(bnd);
  r.discrepancy = std::abs(r.boundary - r.volume);
  return r;
}

BoundaryTrace sample_trace(const BoundaryQuadrature& q, const TupleField& u) {
  BoundaryTrace t{q, {}};
  t.values.reserve(q.size());
  for (const auto& x : q.nodes) t.values.push_back(u(x));
  return t;
}

BlockMatrix psi_for_spec(const StokesSpec& spec) {
  spec.validate();
  if (spec.j0 != spec.q) throw UnsupportedConfiguration("Green reconstruction needs j0 = q");
  if (spec.is_identity()) return build_psi_bilateral(spec.n, spec.q, CoefficientMode::Identity).normalized();
  const auto s = spec.top_scalars();
  if (!s) throw UnsupportedConfiguration("Green reconstruction needs identity or scalar Lame matrices");
  const BlockMatrix psi = build_psi_bilateral(spec.n, spec.q, CoefficientMode::Abstract);
  return substitute_scalar_lame(psi, {{spec.q, *s}}).normalized();
}

HomotopyReconstructor::HomotopyReconstructor(const StokesSpec& spec, const DomainSpec& domain)
    : spec_(spec), domain_(domain), psi_(psi_for_spec(spec)) {
  domain_.validate();
  if (domain_.n != spec_.n) throw DimensionMismatch("domain and system dimensions differ");
  if (spec_.n != 2 && spec_.n != 3) throw UnsupportedConfiguration("kernels are implemented for n = 2 and 3");
}

Reconstruction HomotopyReconstructor::reconstruct(const BoundaryTrace& trace, const std::vector<double>& x) const {
  const int n = spec_.n, q = spec_.q;
  if (static_cast<int>(x.size()) != n) throw DimensionMismatch("point has the wrong dimension");
  if (trace.quadrature.n != n || trace.values.size() != trace.quadrature.size())
    throw DimensionMismatch("boundary trace does not match its quadrature");
  for (const auto& jet : trace.values) check_jet(jet, n, q);
  const DensityEvaluator density(spec_);

  Reconstruction r;
  r.inside = domain_.contains(x);
  r.near_boundary = domain_.distance_to_boundary(x) < boundary_collar(trace.quadrature);
  for (int slot = 0; slot <= q; ++slot) {
    Form<double> f(n, q - slot, 0.0);
    for (std::size_t c = 0; c < f.size(); ++c) {
      const KernelColumn col(psi_, x, slot, c);
      std::vector<double> terms(trace.quadrature.size());
#pragma omp parallel for schedule(static)
      for (std::size_t k = 0; k < terms.size(); ++k) {
        const auto& y = trace.quadrature.nodes[k];
        terms[k] = trace.quadrature.weights[k] *
                   density(trace.quadrature.normals[k], col.evaluate(y, true), trace.values[k]);
      }
      f[c] = -pairwise_sum(terms);
    }
    r.value.push_back(std::move(f));
  }
  return r;
}

std::vector<PolyForm> manufactured_tuple(const StokesSpec& spec) {
  spec.validate();
  if (spec.q != 1 || spec.n < 2) throw UnsupportedConfiguration("the manufactured solution needs q = 1 and n >= 2");
  const auto s = spec.top_scalars();
  if (!s) throw UnsupportedConfiguration("the manufactured solution needs scalar Lame matrices");
  const int n = spec.n;
  const Polynomial x1 = Polynomial::coordinate(n, 0), x2 = Polynomial::coordinate(n, 1);
  PolyForm u1 = zero_poly_form(n, 1);
  u1[0] = Polynomial::constant(n, 1) - x2 * x2;
  PolyForm p = zero_poly_form(n, 0);
  p[0] = Rational(-2) * s->first * x1;
  return {u1, p};
}

AnalyticSolution make_solution(const std::string& kind, const StokesSpec& spec, const std::vector<double>& pole) {
  spec.validate();
  const int n = spec.n, q = spec.q;
  if (kind == "constant_pressure") {
    return {kind, [n, q](const std::vector<double>&) {
              TupleJet t;
              for (int i = 0; i <= q; ++i) {
                FormJet j{Form<double>(n, q - i, 0.0), std::vector<Form<double>>(n, Form<double>(n, q - i, 0.0))};
                if (i == q) j.value[0] = 1.0;
                t.push_back(std::move(j));
              }
              return t;
            }};
  }
  if (kind == "exterior_pole") {
    if (static_cast<int>(pole.size()) != n) throw DimensionMismatch("pole has the wrong dimension");
    auto col = std::make_shared<KernelColumn>(psi_for_spec(spec), pole, 0, 0);
    return {kind, [col](const std::vector<double>& y) { return col->evaluate(y, true); }};
  }
  if (kind == "manufactured") {
    auto u = manufactured_tuple(spec);
    return {kind, [u](const std::vector<double>& y) { return poly_tuple_jet(u, y); }};
  }
  throw ParameterError("unknown analytic solution '" + kind + "' (expected constant_pressure, exterior_pole or manufactured)");
}

}  // namespace drstokes
