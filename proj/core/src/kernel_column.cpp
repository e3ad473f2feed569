#include "drstokes/kernel_column.hpp"

#include <algorithm>
#include <numeric>

#include "drstokes/errors.hpp"
#include "drstokes/exterior.hpp"

namespace drstokes {

namespace {

double jet_entry(const KernelJet& j, const std::vector<int>& orders) {
  std::vector<int> axes;
  for (int a = 0; a < static_cast<int>(orders.size()); ++a)
    for (int k = 0; k < orders[a]; ++k) axes.push_back(a);
  const int n = j.n;
  switch (axes.size()) {
    case 0: return j.value;
    case 1: return j.grad[axes[0]];
    case 2: return j.hess[axes[0] * n + axes[1]];
    case 3: return j.third[(axes[0] * n + axes[1]) * n + axes[2]];
    default: throw ParameterError("kernel derivatives are available up to third order");
  }
}

int order_of(const std::vector<int>& o) { return std::accumulate(o.begin(), o.end(), 0); }

}  // namespace

KernelSum::KernelSum(int n, KernelKind kind, double coef) {
  if (coef != 0) terms_.push_back({coef, kind, std::vector<int>(n, 0)});
}

int KernelSum::max_order() const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, order_of(t.orders));
  return m;
}

double KernelSum::operator()(std::span<const double> z) const {
  if (terms_.empty()) return 0.0;
  const int order = max_order();
  if (order > 3) throw ParameterError("kernel derivatives are available up to third order");
  KernelJet jets[2];
  bool have[2] = {false, false};
  double total = 0;
  for (const auto& t : terms_) {
    const int k = t.kind == KernelKind::Newtonian ? 0 : 1;
    if (!have[k]) {
      jets[k] = kernel_jet(t.kind, z, order);
      have[k] = true;
    }
    total += t.coef * jet_entry(jets[k], t.orders);
  }
  return total;
}

double KernelSum::from_jets(const KernelJet& g, const KernelJet& b) const {
  double total = 0;
  for (const auto& t : terms_) total += t.coef * jet_entry(t.kind == KernelKind::Newtonian ? g : b, t.orders);
  return total;
}

KernelSum KernelSum::derivative(int axis) const {
  KernelSum r = *this;
  for (auto& t : r.terms_) {
    if (axis < 0 || axis >= static_cast<int>(t.orders.size())) throw DimensionMismatch("derivative axis out of range");
    ++t.orders[axis];
  }
  return r;
}

KernelSum& KernelSum::operator+=(const KernelSum& o) {
  for (const auto& t : o.terms_) {
    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const Term& s) { return s.kind == t.kind && s.orders == t.orders; });
    if (it == terms_.end()) {
      terms_.push_back(t);
    } else {
      it->coef += t.coef;
      if (it->coef == 0) terms_.erase(it);
    }
  }
  return *this;
}

KernelSum& KernelSum::operator-=(const KernelSum& o) { return *this += -1.0 * o; }

KernelSum& KernelSum::operator*=(double c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= c;
  return *this;
}

KernelSum constant_like(const KernelSum&, const Rational& c) {
  if (c != 0) throw UnsupportedConfiguration("kernel sums cannot represent nonzero constants");
  return {};
}

Form<double> evaluate(const KernelForm& f, std::span<const double> z) {
  std::vector<double> v(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) v[k] = f[k](z);
  return Form<double>(f.dim(), f.degree(), std::move(v));
}

KernelColumn::KernelColumn(const BlockMatrix& psi, std::vector<double> x, int slot, std::size_t component)
    : x_(std::move(x)), slot_(slot), component_(component) {
  const int n = psi.dim(), q = psi.degree();
  if (static_cast<int>(x_.size()) != n) throw DimensionMismatch("pole has the wrong dimension");
  if (slot < 0 || slot > q) throw DimensionMismatch("tuple slot out of range");
  if (component >= static_cast<std::size_t>(binomial(n, q - slot))) throw DimensionMismatch("form component out of range");
  for (int i = 0; i <= q; ++i) {
    KernelForm out(n, q - i, KernelSum{});
    for (const auto& [w, c] : psi(i, slot).terms()) {
      std::size_t k = 0;
      while (k < w.size() && w[w.size() - 1 - k].kind == GenKind::Phi) ++k;
      if (k == 0) continue;
      if (k > 2) throw UnsupportedConfiguration("no pointwise kernel for the word " + to_string(w));
      KernelForm v(n, q - slot, KernelSum{});
      v[component] = k == 1 ? KernelSum(n, KernelKind::Newtonian, -1.0) : KernelSum(n, KernelKind::Biharmonic, 1.0);
      for (std::size_t p = w.size() - k; p-- > 0;) {
        if (w[p].kind == GenKind::D)
          v = exterior_derivative(v);
        else if (w[p].kind == GenKind::DS)
          v = codifferential(v);
        else
          throw UnsupportedConfiguration("no pointwise kernel for the word " + to_string(w));
      }
      out += c * v;
    }
    std::vector<std::vector<KernelSum>> grads;
    for (std::size_t k = 0; k < out.size(); ++k) {
      std::vector<KernelSum> per_axis;
      for (int a = 0; a < n; ++a) per_axis.push_back(out[k].derivative(a));
      if (out[k].max_order() > 2) throw UnsupportedConfiguration("kernel column needs derivatives past third order");
      grads.push_back(std::move(per_axis));
    }
    gradients_.push_back(std::move(grads));
    forms_.push_back(std::move(out));
  }
}

TupleJet KernelColumn::evaluate(const std::vector<double>& y, bool with_gradient) const {
  const int n = static_cast<int>(x_.size());
  if (static_cast<int>(y.size()) != n) throw DimensionMismatch("point has the wrong dimension");
  std::vector<double> z(n);
  for (int a = 0; a < n; ++a) z[a] = y[a] - x_[a];
  // one jet of each kernel serves every coefficient and its gradient
  const KernelJet g = kernel_jet(KernelKind::Newtonian, z, 3);
  const KernelJet b = kernel_jet(KernelKind::Biharmonic, z, 3);
  TupleJet out;
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    const KernelForm& f = forms_[i];
    FormJet j{Form<double>(n, f.degree(), 0.0), {}};
    for (std::size_t k = 0; k < f.size(); ++k) j.value[k] = f[k].from_jets(g, b);
    if (with_gradient)
      for (int a = 0; a < n; ++a) {
        Form<double> da(n, f.degree(), 0.0);
        for (std::size_t k = 0; k < f.size(); ++k) da[k] = gradients_[i][k][a].from_jets(g, b);
        j.gradient.push_back(std::move(da));
      }
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace drstokes
