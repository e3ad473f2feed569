#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "drstokes/form.hpp"
#include "drstokes/rational.hpp"

namespace drstokes {

/// Uniform rectangular grid: node k along axis a sits at origin[a] + k*spacing[a].
struct GridSpec {
  std::vector<double> origin;
  std::vector<double> spacing;
  std::vector<int> counts;

  int dim() const noexcept { return static_cast<int>(counts.size()); }
  std::size_t node_count() const;
  /// Row-major stride of `axis` (last axis fastest).
  std::size_t stride(int axis) const;
  /// Product of spacings, the cell volume used by the discrete pairing.
  double cell_volume() const;
  double max_spacing() const;
  void node_coords(std::size_t flat, std::span<double> x) const;
  void unflatten(std::size_t flat, std::span<int> idx) const;

  /// Cube [-L, L]^n sampled with `nodes` points per axis (both ends included).
  static GridSpec cube(int n, double half_extent, int nodes);

  /// Throws DimensionMismatch unless every field is consistent.
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Real samples on a grid. Implements the form coefficient protocol with
/// second-order central differences; values beyond the grid count as zero.
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(GridSpec grid);
  GridFunction(GridSpec grid, std::vector<double> values);

  static GridFunction sample(const GridSpec& grid, const std::function<double(std::span<const double>)>& f);

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  double& operator[](std::size_t k) { return values_[k]; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }

  double max_abs() const;
  /// Max |value| restricted to nodes whose index is at least `margin` from every face.
  double max_abs_interior(int margin) const;

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(double c);
  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(GridFunction a, double c) { return a *= c; }
  friend GridFunction operator*(double c, GridFunction a) { return a *= c; }
  /// Pointwise product.
  friend GridFunction operator*(const GridFunction& a, const GridFunction& b);
  GridFunction operator-() const;

  /// Central difference along `axis`.
  GridFunction derivative(int axis) const;

  friend bool operator==(const GridFunction& a, const GridFunction& b) {
    return a.grid_ == b.grid_ && a.values_ == b.values_;
  }

 private:
  void check_same(const GridFunction& o) const;

  GridSpec grid_;
  std::vector<double> values_;
};

inline GridFunction zero_like(const GridFunction& f) { return GridFunction(f.grid()); }
GridFunction constant_like(const GridFunction& f, const Rational& c);
inline GridFunction partial(const GridFunction& f, int axis) { return f.derivative(axis); }
bool is_zero(const GridFunction& f);
inline GridFunction scaled(const GridFunction& f, const Rational& c) { return f * to_double(c); }

using GridForm = Form<GridFunction>;

GridForm zero_grid_form(const GridSpec& grid, int q);

/// Discrete L2 pairing sum_I sum_nodes u_I v_I * cell volume.
double inner_product(const GridForm& u, const GridForm& v);
double max_abs(const GridForm& u);
double max_abs_interior(const GridForm& u, int margin);

/// True iff every component vanishes on the outer `margin` layers of nodes.
bool vanishes_on_margin(const GridForm& u, int margin);
/// Throws SupportViolation unless vanishes_on_margin(u, margin).
void require_margin(const GridForm& u, int margin);

}  // namespace drstokes
