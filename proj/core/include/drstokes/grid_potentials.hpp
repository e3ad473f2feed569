#pragma once

#include <memory>
#include <mutex>

#include "drstokes/bump.hpp"
#include "drstokes/convolution.hpp"
#include "drstokes/grid.hpp"

namespace drstokes {

/// Layers of nodes at each face on which potential inputs must vanish.
inline constexpr int kSupportMargin = 2;
/// Residuals skip this many layers at each face: the support margin plus 4.
inline constexpr int kResidualMargin = kSupportMargin + 4;

struct KernelSettings {
  ConvolutionMethod method = ConvolutionMethod::Fft;
  int pad_factor = 2;
  double singular_tol = 1e-10;
};

/// Convolution plans for g and B on one grid. The B plan is built on first use.
class PotentialPlans {
 public:
  PotentialPlans(GridSpec grid, KernelSettings settings = {});

  const GridSpec& grid() const noexcept { return grid_; }
  const KernelSettings& settings() const noexcept { return settings_; }
  const ConvolutionPlan& newtonian() const { return *g_; }
  const ConvolutionPlan& biharmonic() const;

 private:
  GridSpec grid_;
  KernelSettings settings_;
  std::unique_ptr<ConvolutionPlan> g_;
  mutable std::once_flag b_once_;
  mutable std::unique_ptr<ConvolutionPlan> b_;
};

/// Phi u = -(g * u_I) dx_I. Throws SupportViolation unless u vanishes on the margin.
GridForm phi_apply(const PotentialPlans& plans, const GridForm& u);
/// Phi Phi u = (B * u_I) dx_I.
GridForm phi_sq_apply(const PotentialPlans& plans, const GridForm& u);

/// Phi ((1/a) d*d + (1/at) dd*) Phi u for positive scalars a, at. Realized as
/// the middle operator applied by central differences to B * u: Phi commutes
/// with d and d*, and differentiating only after both convolutions keeps
/// the grid-edge truncation away from the interior.
GridForm phi_mu_apply_scalar(const PotentialPlans& plans, double a, double at, const GridForm& u);

/// Compact second difference (u[k+1] - 2u[k] + u[k-1]) / h^2 along `axis`,
/// zero beyond the grid.
GridFunction second_difference(const GridFunction& f, int axis);

/// Discrete Hodge Laplacian: minus the compact componentwise Laplacian. The
/// composition of central-difference d and d* gives the same operator on a
/// stencil twice as wide, with four times the truncation error.
GridForm discrete_hodge_laplacian(const GridForm& u);

/// max_interior |Delta_h Phi u - u| / max |u| (zero for u = 0).
double inversion_residual(const PotentialPlans& plans, const GridForm& u);
/// max_interior |Phi Delta_h u - u| / max |u|.
double left_inversion_residual(const PotentialPlans& plans, const GridForm& u);

/// Max over the two identities d Phi = Phi d and d* Phi = Phi d* of the
/// interior max-norm of the difference, divided by max |u|. The grid side
/// differentiates Phi u by central differences; the other side convolves the
/// exact derivative of the bump form, so the value measures discretization
/// error rather than the (exact) discrete commutation.
struct CommutationResidual {
  double d = 0;
  double codiff = 0;
  double max() const { return d > codiff ? d : codiff; }
};
CommutationResidual commutation_residual(const PotentialPlans& plans, const BumpForm& u);

/// Same two differences with both derivatives taken on the grid. Interior
/// values agree to rounding because both sides are the same discrete sum.
CommutationResidual discrete_commutation_residual(const PotentialPlans& plans, const GridForm& u);

/// Observed convergence order log(e_coarse / e_fine) / log(h_coarse / h_fine).
double observed_order(double e_coarse, double e_fine, double h_coarse, double h_fine);

}  // namespace drstokes
