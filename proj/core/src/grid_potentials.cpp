#include "drstokes/grid_potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "drstokes/errors.hpp"
#include "drstokes/exterior.hpp"

namespace drstokes {

namespace {

GridForm convolve(const ConvolutionPlan& plan, const GridForm& u, double sign) {
  if (!(u[0].grid() == plan.grid())) throw DimensionMismatch("form grid does not match the potential plans");
  require_margin(u, kSupportMargin);
  std::vector<GridFunction> out(u.size());
  // Components are independent; each apply() owns its work arrays.
#pragma omp parallel for schedule(dynamic) if (u.size() > 1)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(u.size()); ++k) {
    if (is_zero(u[k]))
      out[k] = GridFunction(plan.grid());
    else
      out[k] = plan.apply(u[k]) * sign;
  }
  return GridForm(u.dim(), u.degree(), std::move(out));
}

double relative(double num, double den) { return den == 0 ? num : num / den; }

}  // namespace

PotentialPlans::PotentialPlans(GridSpec grid, KernelSettings settings)
    : grid_(std::move(grid)), settings_(settings) {
  g_ = std::make_unique<ConvolutionPlan>(grid_, KernelKind::Newtonian, settings_.method, settings_.pad_factor,
                                         settings_.singular_tol);
}

const ConvolutionPlan& PotentialPlans::biharmonic() const {
  std::call_once(b_once_, [this] {
    b_ = std::make_unique<ConvolutionPlan>(grid_, KernelKind::Biharmonic, settings_.method, settings_.pad_factor,
                                           settings_.singular_tol);
  });
  return *b_;
}

GridForm phi_apply(const PotentialPlans& plans, const GridForm& u) { return convolve(plans.newtonian(), u, -1.0); }

GridForm phi_sq_apply(const PotentialPlans& plans, const GridForm& u) { return convolve(plans.biharmonic(), u, 1.0); }

GridForm phi_mu_apply_scalar(const PotentialPlans& plans, double a, double at, const GridForm& u) {
  if (!(a > 0) || !(at > 0)) throw ParameterError("Lame scalars must be positive");
  const GridForm w = phi_sq_apply(plans, u);
  return lame_laplacian_scalar(Rational(1) / rational_from_double(a), Rational(1) / rational_from_double(at), w);
}

GridFunction second_difference(const GridFunction& f, int axis) {
  const GridSpec& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw DimensionMismatch("axis out of range");
  GridFunction out(g);
  const std::size_t s = g.stride(axis);
  const std::size_t n = static_cast<std::size_t>(g.counts[axis]);
  const double inv = 1.0 / (g.spacing[axis] * g.spacing[axis]);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const std::size_t i = (k / s) % n;
    const double lo = i > 0 ? f[k - s] : 0.0;
    const double hi = i + 1 < n ? f[k + s] : 0.0;
    out[k] = (hi - 2 * f[k] + lo) * inv;
  }
  return out;
}

GridForm discrete_hodge_laplacian(const GridForm& u) {
  std::vector<GridFunction> out;
  out.reserve(u.size());
  for (const auto& c : u.coefficients()) {
    GridFunction acc(c.grid());
    for (int a = 0; a < u.dim(); ++a) acc -= second_difference(c, a);
    out.push_back(std::move(acc));
  }
  return GridForm(u.dim(), u.degree(), std::move(out));
}

double inversion_residual(const PotentialPlans& plans, const GridForm& u) {
  const GridForm r = discrete_hodge_laplacian(phi_apply(plans, u)) - u;
  return relative(max_abs_interior(r, kResidualMargin), max_abs(u));
}

double left_inversion_residual(const PotentialPlans& plans, const GridForm& u) {
  const GridForm r = phi_apply(plans, discrete_hodge_laplacian(u)) - u;
  return relative(max_abs_interior(r, kResidualMargin), max_abs(u));
}

CommutationResidual commutation_residual(const PotentialPlans& plans, const BumpForm& u) {
  const GridSpec& grid = plans.grid();
  const GridForm uh = sample(u, grid);
  const double scale = max_abs(uh);
  CommutationResidual res;
  if (scale == 0) return res;
  const GridForm pu = phi_apply(plans, uh);
  if (u.degree() < u.dim()) {
    const GridForm r = exterior_derivative(pu) - phi_apply(plans, sample(exterior_derivative(u), grid));
    res.d = max_abs_interior(r, kResidualMargin) / scale;
  }
  if (u.degree() >= 1) {
    const GridForm r = codifferential(pu) - phi_apply(plans, sample(codifferential(u), grid));
    res.codiff = max_abs_interior(r, kResidualMargin) / scale;
  }
  return res;
}

CommutationResidual discrete_commutation_residual(const PotentialPlans& plans, const GridForm& u) {
  const double scale = max_abs(u);
  CommutationResidual res;
  if (scale == 0) return res;
  const GridForm pu = phi_apply(plans, u);
  if (u.degree() < u.dim()) {
    const GridForm r = exterior_derivative(pu) - phi_apply(plans, exterior_derivative(u));
    res.d = max_abs_interior(r, kResidualMargin) / scale;
  }
  if (u.degree() >= 1) {
    const GridForm r = codifferential(pu) - phi_apply(plans, codifferential(u));
    res.codiff = max_abs_interior(r, kResidualMargin) / scale;
  }
  return res;
}

double observed_order(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  if (e_fine <= 0 || e_coarse <= 0) return std::numeric_limits<double>::infinity();
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

}  // namespace drstokes
