#pragma once

#include <functional>
#include <string>
#include <vector>

#include "drstokes/kernel_column.hpp"
#include "drstokes/poly_form.hpp"
#include "drstokes/quadrature.hpp"
#include "drstokes/stokes_assembly.hpp"

namespace drstokes {

/// Surface pairing of a p-form a and a (p+1)-form b at a boundary point
/// with outward unit normal nu: <nu ^ a, b>. It is the boundary term in
/// (d a, b) - (a, d* b) = int_{boundary} <nu ^ a, b> dS.
double boundary_pairing(const std::vector<double>& nu, const Form<double>& a, const Form<double>& b);

/// Pointwise d and d* from first derivatives.
Form<double> jet_exterior_derivative(const FormJet& u);
Form<double> jet_codifferential(const FormJet& u);

/// Scalar surface density G_S(v, u) with
/// (S u, v) - (u, S v) = int_{boundary} G_S(v, u) dS.
/// Coupling terms <nu ^ u_{i+1}, v_i> - <nu ^ v_{i+1}, u_i>; every Lame
/// degree j >= j0 adds <nu ^ u, M dv> - <nu ^ v, M du> + <nu ^ Mt d*u, v>
/// - <nu ^ Mt d*v, u>. Antisymmetric in (u, v). Throws IncompleteTrace if a
/// Lame-degree slot lacks derivatives.
double green_density_S(const StokesSpec& spec, const std::vector<double>& nu, const TupleJet& v, const TupleJet& u);

/// Analytic tuple: pointwise jets at any point.
using TupleField = std::function<TupleJet(const std::vector<double>&)>;

/// Jets of a polynomial tuple (exact derivatives).
TupleJet poly_tuple_jet(const std::vector<PolyForm>& u, const std::vector<double>& x);

struct GreenIdentityCheck {
  double boundary = 0;
  double volume = 0;
  double discrepancy = 0;
};

/// Boundary integral of G_S(v, u) against (S u, v) - (u, S v) computed by
/// volume quadrature, for polynomial tuples (S applied exactly).
GreenIdentityCheck integrate_green_identity(const StokesSpec& spec, const DomainSpec& domain, int nodes_per_axis,
                                            const std::vector<PolyForm>& u, const std::vector<PolyForm>& v);

/// Boundary trace: tuple jets of u at every boundary node.
struct BoundaryTrace {
  BoundaryQuadrature quadrature;
  std::vector<TupleJet> values;
};

BoundaryTrace sample_trace(const BoundaryQuadrature& q, const TupleField& u);

struct Reconstruction {
  /// Tuple value at x, slots q..0.
  std::vector<Form<double>> value;
  bool inside = false;
  /// x lies within the collar of 4 boundary spacings: accuracy degraded.
  bool near_boundary = false;
};

/// u(x) = -int G_S(Psi(x, .)* e, u) over the boundary, component by
/// component; ~0 outside the domain. Supports j0 = q with identity or
/// scalar top matrices.
class HomotopyReconstructor {
 public:
  HomotopyReconstructor(const StokesSpec& spec, const DomainSpec& domain);

  const BlockMatrix& psi() const noexcept { return psi_; }
  Reconstruction reconstruct(const BoundaryTrace& trace, const std::vector<double>& x) const;

 private:
  StokesSpec spec_;
  DomainSpec domain_;
  BlockMatrix psi_;
};

/// Normalized bilateral Psi for the spec (identity or scalar top matrices).
BlockMatrix psi_for_spec(const StokesSpec& spec);

/// Registry of S-null tuples used by the reconstruction checks.
///   constant_pressure: u = (0, ..., 0, 1).
///   exterior_pole: the kernel row Psi(., z) e for a pole z outside the domain.
///   manufactured: Poiseuille-type flow (1 - x_2^2) dx_1 with pressure
///     -2 a x_1 (q = 1).
struct AnalyticSolution {
  std::string kind;
  TupleField field;
};

AnalyticSolution make_solution(const std::string& kind, const StokesSpec& spec, const std::vector<double>& pole);

/// Polynomial tuple of the manufactured solution (q = 1).
std::vector<PolyForm> manufactured_tuple(const StokesSpec& spec);

}  // namespace drstokes
