#pragma once

#include <span>
#include <vector>

#include "drstokes/block_matrix.hpp"
#include "drstokes/form.hpp"
#include "drstokes/kernels.hpp"

namespace drstokes {

/// Value and first partial derivatives of a form at one point.
/// gradient[a] holds the a-th partial of every coefficient; it may be empty
/// when derivatives are not needed.
struct FormJet {
  Form<double> value;
  std::vector<Form<double>> gradient;

  bool has_gradient() const noexcept { return !gradient.empty(); }
};

/// Pointwise data of a tuple (u_q, ..., u_0).
using TupleJet = std::vector<FormJet>;

/// Linear combination of partial derivatives of g and B, as functions of
/// z = y - x. Used as a form coefficient so d and d* act exactly.
class KernelSum {
 public:
  struct Term {
    double coef;
    KernelKind kind;
    std::vector<int> orders;
  };

  KernelSum() = default;
  KernelSum(int n, KernelKind kind, double coef = 1.0);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  int max_order() const;
  /// Throws SingularityError at z = 0 and ParameterError past third derivatives.
  double operator()(std::span<const double> z) const;
  /// Same value from precomputed jets of g and B at one point (order >= max_order()).
  double from_jets(const KernelJet& g, const KernelJet& b) const;

  KernelSum derivative(int axis) const;
  KernelSum& operator+=(const KernelSum& o);
  KernelSum& operator-=(const KernelSum& o);
  KernelSum& operator*=(double c);
  friend KernelSum operator+(KernelSum a, const KernelSum& b) { return a += b; }
  friend KernelSum operator-(KernelSum a, const KernelSum& b) { return a -= b; }
  friend KernelSum operator*(double c, KernelSum a) { return a *= c; }
  KernelSum operator-() const { return -1.0 * *this; }

 private:
  std::vector<Term> terms_;
};

inline KernelSum zero_like(const KernelSum&) { return {}; }
KernelSum constant_like(const KernelSum&, const Rational& c);
inline KernelSum partial(const KernelSum& f, int axis) { return f.derivative(axis); }
inline bool is_zero(const KernelSum& f) { return f.terms().empty(); }
inline KernelSum scaled(const KernelSum& f, const Rational& c) { return to_double(c) * f; }

using KernelForm = Form<KernelSum>;

/// The tuple v(y) = Psi (delta_x e) for the unit vector e in tuple slot
/// `slot`, form component `component`. Since the bilateral Psi is formally
/// self-adjoint this is the row of the kernel Psi(x, y) used in the Green
/// representation. Words without a potential (delta terms) vanish for
/// y != x and are dropped.
class KernelColumn {
 public:
  /// `psi` must be a normalized block matrix whose words have the shape
  /// (d | d*)... Phi^k with k <= 2.
  KernelColumn(const BlockMatrix& psi, std::vector<double> x, int slot, std::size_t component);

  const std::vector<double>& pole() const noexcept { return x_; }
  int slot() const noexcept { return slot_; }
  std::size_t component() const noexcept { return component_; }
  const std::vector<KernelForm>& forms() const noexcept { return forms_; }

  /// Values (and first derivatives when requested) at y != x.
  TupleJet evaluate(const std::vector<double>& y, bool with_gradient) const;

 private:
  std::vector<double> x_;
  int slot_;
  std::size_t component_;
  std::vector<KernelForm> forms_;
  // gradients_[slot][coefficient][axis]
  std::vector<std::vector<std::vector<KernelSum>>> gradients_;
};

/// Pointwise value at a single point of a kernel form.
Form<double> evaluate(const KernelForm& f, std::span<const double> z);

}  // namespace drstokes
