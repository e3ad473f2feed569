#pragma once

#include <string>
#include <vector>

namespace drstokes {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int count);

enum class DomainShape { Ball, Box };

const char* to_string(DomainShape s);
DomainShape parse_domain_shape(const std::string& s);

struct DomainSpec {
  DomainShape shape = DomainShape::Ball;
  int n = 2;
  /// Ball: center and radius.
  std::vector<double> center;
  double radius = 1.0;
  /// Box: lower and upper corners.
  std::vector<double> lo;
  std::vector<double> hi;

  static DomainSpec ball(int n, double radius);
  static DomainSpec ball(std::vector<double> center, double radius);
  static DomainSpec box(std::vector<double> lo, std::vector<double> hi);

  void validate() const;
  double diameter() const;
  bool contains(const std::vector<double>& x) const;
  /// Euclidean distance to the boundary, for points inside or outside.
  double distance_to_boundary(const std::vector<double>& x) const;
  double surface_area() const;
  double volume() const;
};

/// Nodes on the boundary, exact to the analytic parametrization, with
/// outward unit normals and surface weights.
struct BoundaryQuadrature {
  int n = 0;
  std::vector<std::vector<double>> nodes;
  std::vector<std::vector<double>> normals;
  std::vector<double> weights;
  /// Largest distance between neighbouring nodes.
  double max_spacing = 0;

  std::size_t size() const noexcept { return weights.size(); }
};

/// Ball, n = 2: 2m equally spaced nodes (trapezoid). Ball, n = 3: m
/// Gauss-Legendre nodes in cos(theta) times 2m trapezoid nodes in phi.
/// Box: m^{n-1} tensor Gauss-Legendre nodes on every face.
BoundaryQuadrature boundary_quadrature(const DomainSpec& d, int nodes_per_axis);

struct VolumeQuadrature {
  std::vector<std::vector<double>> points;
  std::vector<double> weights;
};

/// Ball: Gauss-Legendre in the radius times the boundary rule on spheres.
/// Box: tensor Gauss-Legendre. Exact for polynomials of degree < 2m - 1 or so.
VolumeQuadrature volume_quadrature(const DomainSpec& d, int nodes_per_axis);

/// Near-boundary collar: 4 times the boundary node spacing.
double boundary_collar(const BoundaryQuadrature& q);

/// Pairwise (cascade) summation for order-independent rounding behaviour.
double pairwise_sum(const std::vector<double>& v);

}  // namespace drstokes
