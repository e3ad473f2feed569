#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "drstokes/block_matrix.hpp"
#include "drstokes/exterior.hpp"
#include "drstokes/grid.hpp"
#include "drstokes/grid_potentials.hpp"
#include "drstokes/matrix_coefficient.hpp"

namespace drstokes {

/// Coefficients of the Lame operator at one degree j:
/// d*_j M d_j + d_{j-1} Mt d*_{j-1}, with M acting on (j+1)-forms and Mt on
/// (j-1)-forms. A matrix whose degree falls outside 0..n is left empty.
struct LameLevel {
  MatrixCoefficient M;
  MatrixCoefficient Mt;
};

struct StokesSpec {
  int n = 2;
  int q = 1;
  int j0 = 1;
  /// One entry for every degree j0..q.
  std::map<int, LameLevel> levels;

  static StokesSpec identity(int n, int q, int j0);
  /// Scalar pair (a, at) at degree q, j0 = q.
  static StokesSpec scalar_top(int n, int q, double a, double at);

  /// Throws ParameterError / DegreeMismatch unless 1 <= j0 <= q <= n and
  /// every supplied matrix is symmetric positive definite with the right shape.
  void validate() const;
  bool is_identity() const;
  /// (a, at) when the degree-q matrices are scalar multiples of the identity.
  std::optional<std::pair<Rational, Rational>> top_scalars() const;
};

/// (u_q, u_{q-1}, ..., u_0) on one grid.
using FormTuple = std::vector<GridForm>;

FormTuple zero_tuple(const GridSpec& grid, int n, int q);
/// Throws DegreeMismatch / DimensionMismatch unless degrees descend q..0
/// and all components share `grid`.
void check_tuple(const FormTuple& u, int n, int q);
double inner_product(const FormTuple& u, const FormTuple& v);
double max_abs(const FormTuple& u);
double max_abs_interior(const FormTuple& u, int margin);
FormTuple operator-(const FormTuple& a, const FormTuple& b);
FormTuple operator*(double c, const FormTuple& a);

/// Row i: Lame_{q-i} u_i (for q-i >= j0) + d u_{i+1} + d* u_{i-1}, for any
/// coefficient type. The caller checks shapes.
template <class C>
std::vector<Form<C>> stokes_rows(const StokesSpec& spec, const std::vector<Form<C>>& u) {
  const int q = spec.q;
  std::vector<Form<C>> out;
  for (int i = 0; i <= q; ++i) out.push_back(u[i].zero_of_degree(q - i));
  for (int i = 0; i <= q; ++i) {
    const int deg = q - i;
    if (deg >= spec.j0) {
      const LameLevel& l = spec.levels.at(deg);
      out[i] += lame_laplacian(l.M, l.Mt, u[i]);
    }
    if (i < q) {
      out[i] += exterior_derivative(u[i + 1]);
      out[i + 1] += codifferential(u[i]);
    }
  }
  return out;
}

/// Grid Stokes operator; validates the spec and the tuple. Scalar Lame
/// blocks use the compact Laplacian plus a multiple of d d*; other matrices
/// use central differences throughout.
FormTuple apply_stokes(const StokesSpec& spec, const FormTuple& u);

/// Replaces M_j -> a_j, Mt_j -> at_j and
/// PhiMu_j -> Phi_j ((1/a_j) d*_j d_j + (1/at_j) d_{j-1} d*_{j-1}) Phi_j.
BlockMatrix substitute_scalar_lame(const BlockMatrix& m, const std::map<int, std::pair<Rational, Rational>>& scalars);

/// Grid realization of a block operator whose normal form only contains
/// words (d | d*)... Phi^k with k <= 2: Phi^0 = I, Phi^1 = -g*, Phi^2 = B*.
class GridBlockOperator {
 public:
  /// Throws UnsupportedConfiguration if some word is not of that shape.
  explicit GridBlockOperator(BlockMatrix normalized);

  const BlockMatrix& symbolic() const noexcept { return m_; }
  FormTuple apply(const PotentialPlans& plans, const FormTuple& f) const;

 private:
  BlockMatrix m_;
};

/// Bilateral fundamental solution with identity matrices (j0 = q).
GridBlockOperator psi_identity_operator(int n, int q);
/// Bilateral fundamental solution with scalar Lame pair at degree q (j0 = q).
GridBlockOperator psi_scalar_operator(int n, int q, const Rational& a, const Rational& at);

/// Throws UnsupportedConfiguration unless the spec has identity matrices and j0 = q.
FormTuple apply_psi_identity(const PotentialPlans& plans, const StokesSpec& spec, const FormTuple& f);
/// Throws UnsupportedConfiguration unless j0 = q and the top matrices are scalar.
FormTuple apply_psi_scalar_lame(const PotentialPlans& plans, const StokesSpec& spec, const FormTuple& f);

}  // namespace drstokes
