#pragma once

#include <span>
#include <vector>

namespace drstokes {

enum class KernelKind { Newtonian, Biharmonic };

const char* to_string(KernelKind k);

/// Surface area of the unit sphere in R^n, 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

/// Fundamental solution of the Laplacian: ln|x| / (2 pi) for n = 2,
/// |x|^{2-n} / (sigma_n (2-n)) otherwise. Throws SingularityError at 0.
double eval_g(std::span<const double> x);

/// Kernel B with Laplacian(B) = g away from 0, so Phi Phi is convolution with
/// B. Only n = 2, 3.
double eval_biharmonic_b(std::span<const double> x);

double eval_kernel(KernelKind kind, std::span<const double> x);

/// Value and Cartesian derivatives of a kernel at x != 0, up to `order` <= 3.
/// grad[a], hess[a*n+b], third[(a*n+b)*n+c].
struct KernelJet {
  int n = 0;
  double value = 0;
  std::vector<double> grad;
  std::vector<double> hess;
  std::vector<double> third;
};

KernelJet kernel_jet(KernelKind kind, std::span<const double> x, int order);

/// Average of the kernel over the cube [-h/2, h/2]^n. The unit-cube integrals
/// are found by self-similar subdivision: the corner subcube holding the
/// singularity is a scaled copy of the whole, the rest is smooth and
/// integrated by refined Gauss-Legendre until successive estimates agree to
/// `tol`.
double singular_cell_average(KernelKind kind, int n, double h, double tol = 1e-10);

}  // namespace drstokes
