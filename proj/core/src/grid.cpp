#include "drstokes/grid.hpp"

#include <algorithm>
#include <cmath>

#include "drstokes/errors.hpp"

namespace drstokes {

std::size_t GridSpec::node_count() const {
  std::size_t total = 1;
  for (int c : counts) total *= static_cast<std::size_t>(c);
  return total;
}

std::size_t GridSpec::stride(int axis) const {
  std::size_t s = 1;
  for (int a = dim() - 1; a > axis; --a) s *= static_cast<std::size_t>(counts[a]);
  return s;
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (double h : spacing) v *= h;
  return v;
}

double GridSpec::max_spacing() const { return *std::max_element(spacing.begin(), spacing.end()); }

void GridSpec::unflatten(std::size_t flat, std::span<int> idx) const {
  for (int a = dim() - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % static_cast<std::size_t>(counts[a]));
    flat /= static_cast<std::size_t>(counts[a]);
  }
}

void GridSpec::node_coords(std::size_t flat, std::span<double> x) const {
  for (int a = dim() - 1; a >= 0; --a) {
    const auto k = flat % static_cast<std::size_t>(counts[a]);
    flat /= static_cast<std::size_t>(counts[a]);
    x[a] = origin[a] + static_cast<double>(k) * spacing[a];
  }
}

GridSpec GridSpec::cube(int n, double half_extent, int nodes) {
  if (n < 1 || nodes < 2 || !(half_extent > 0)) throw ParameterError("invalid cube grid parameters");
  GridSpec g;
  g.origin.assign(n, -half_extent);
  g.spacing.assign(n, 2.0 * half_extent / (nodes - 1));
  g.counts.assign(n, nodes);
  return g;
}

void GridSpec::validate() const {
  if (counts.empty() || origin.size() != counts.size() || spacing.size() != counts.size())
    throw DimensionMismatch("grid origin, spacing and counts must have the same length");
  for (std::size_t a = 0; a < counts.size(); ++a) {
    if (counts[a] < 1) throw DimensionMismatch("grid counts must be positive");
    if (!(spacing[a] > 0)) throw DimensionMismatch("grid spacing must be positive");
  }
}

GridFunction::GridFunction(GridSpec grid) : grid_(std::move(grid)) {
  grid_.validate();
  values_.assign(grid_.node_count(), 0.0);
}

GridFunction::GridFunction(GridSpec grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  grid_.validate();
  if (values_.size() != grid_.node_count()) throw DimensionMismatch("value count does not match grid");
}

GridFunction GridFunction::sample(const GridSpec& grid, const std::function<double(std::span<const double>)>& f) {
  GridFunction g(grid);
  std::vector<double> x(grid.dim());
  for (std::size_t k = 0; k < g.size(); ++k) {
    grid.node_coords(k, x);
    g.values_[k] = f(x);
  }
  return g;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::max_abs_interior(int margin) const {
  double m = 0.0;
  std::vector<int> idx(grid_.dim());
  for (std::size_t k = 0; k < values_.size(); ++k) {
    grid_.unflatten(k, idx);
    bool inside = true;
    for (int a = 0; a < grid_.dim() && inside; ++a)
      inside = idx[a] >= margin && idx[a] < grid_.counts[a] - margin;
    if (inside) m = std::max(m, std::abs(values_[k]));
  }
  return m;
}

void GridFunction::check_same(const GridFunction& o) const {
  if (!(grid_ == o.grid_)) throw DimensionMismatch("grid functions live on different grids");
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  check_same(o);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
  check_same(o);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
  return *this;
}

GridFunction& GridFunction::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
  a.check_same(b);
  GridFunction r(a);
  for (std::size_t k = 0; k < r.values_.size(); ++k) r.values_[k] *= b.values_[k];
  return r;
}

GridFunction GridFunction::operator-() const {
  GridFunction r(*this);
  for (double& v : r.values_) v = -v;
  return r;
}

GridFunction GridFunction::derivative(int axis) const {
  if (axis < 0 || axis >= grid_.dim()) throw DimensionMismatch("derivative axis out of range");
  GridFunction r(grid_);
  const std::size_t s = grid_.stride(axis);
  const std::size_t len = static_cast<std::size_t>(grid_.counts[axis]);
  const double inv = 0.5 / grid_.spacing[axis];
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const std::size_t pos = (k / s) % len;
    const double up = pos + 1 < len ? values_[k + s] : 0.0;
    const double down = pos > 0 ? values_[k - s] : 0.0;
    r.values_[k] = (up - down) * inv;
  }
  return r;
}

GridFunction constant_like(const GridFunction& f, const Rational& c) {
  GridFunction r(f.grid());
  std::fill(r.values().begin(), r.values().end(), to_double(c));
  return r;
}

bool is_zero(const GridFunction& f) {
  return std::all_of(f.values().begin(), f.values().end(), [](double v) { return v == 0.0; });
}

GridForm zero_grid_form(const GridSpec& grid, int q) { return GridForm(grid.dim(), q, GridFunction(grid)); }

double inner_product(const GridForm& u, const GridForm& v) {
  if (u.dim() != v.dim() || u.degree() != v.degree()) throw DegreeMismatch("pairing of forms of different shape");
  double s = 0.0;
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (!(u[a].grid() == v[a].grid())) throw DimensionMismatch("pairing of forms on different grids");
    const auto& x = u[a].values();
    const auto& y = v[a].values();
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  }
  return s * u[0].grid().cell_volume();
}

double max_abs(const GridForm& u) {
  double m = 0.0;
  for (const auto& c : u.coefficients()) m = std::max(m, c.max_abs());
  return m;
}

double max_abs_interior(const GridForm& u, int margin) {
  double m = 0.0;
  for (const auto& c : u.coefficients()) m = std::max(m, c.max_abs_interior(margin));
  return m;
}

bool vanishes_on_margin(const GridForm& u, int margin) {
  const GridSpec& g = u[0].grid();
  std::vector<int> idx(g.dim());
  for (const auto& c : u.coefficients()) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0.0) continue;
      g.unflatten(k, idx);
      for (int a = 0; a < g.dim(); ++a)
        if (idx[a] < margin || idx[a] >= g.counts[a] - margin) return false;
    }
  }
  return true;
}

void require_margin(const GridForm& u, int margin) {
  if (!vanishes_on_margin(u, margin))
    throw SupportViolation("form does not vanish on the " + std::to_string(margin) + "-node boundary margin");
}

}  // namespace drstokes
