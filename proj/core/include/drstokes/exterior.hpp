#pragma once

#include <algorithm>

#include "drstokes/form.hpp"
#include "drstokes/matrix_coefficient.hpp"

namespace drstokes {

/// Exterior product. A result degree above n yields the zero n-form.
template <class C>
Form<C> wedge(const Form<C>& u, const Form<C>& v) {
  if (u.dim() != v.dim()) throw DimensionMismatch("wedge of forms in different dimensions");
  const int n = u.dim();
  const int p = u.degree(), q = v.degree();
  Form<C> out(n, std::min(p + q, n), u[0]);
  if (p + q > n) return out;
  const auto& Is = multi_indices(n, p);
  const auto& Js = multi_indices(n, q);
  for (std::size_t a = 0; a < Is.size(); ++a) {
    if (is_zero(u[a])) continue;
    for (std::size_t b = 0; b < Js.size(); ++b) {
      const int s = merge_sign(Is[a].indices(), Js[b].indices());
      if (s == 0 || is_zero(v[b])) continue;
      std::vector<int> k = Is[a].indices();
      k.insert(k.end(), Js[b].indices().begin(), Js[b].indices().end());
      std::sort(k.begin(), k.end());
      auto& slot = out[rank_of(MultiIndex(n, std::move(k)))];
      const C prod = u[a] * v[b];
      slot = s > 0 ? slot + prod : slot - prod;
    }
  }
  return out;
}

/// Euclidean Hodge star with orientation dx_1 ^ ... ^ dx_n:
/// *dx_I = sign(I, I^c) dx_{I^c}.
template <class C>
Form<C> hodge_star(const Form<C>& u) {
  const int n = u.dim();
  Form<C> out(n, n - u.degree(), u[0]);
  const auto& Is = multi_indices(n, u.degree());
  for (std::size_t a = 0; a < Is.size(); ++a) {
    const MultiIndex c = Is[a].complement();
    const int s = merge_sign(Is[a].indices(), c.indices());
    out[rank_of(c)] = s > 0 ? u[a] : -u[a];
  }
  return out;
}

/// d_q. Returns the zero form of degree n when q >= n.
template <class C>
Form<C> exterior_derivative(const Form<C>& u) {
  const int n = u.dim(), q = u.degree();
  if (q >= n) return Form<C>(n, n, u[0]);
  Form<C> out(n, q + 1, u[0]);
  const auto& Is = multi_indices(n, q);
  for (std::size_t a = 0; a < Is.size(); ++a) {
    if (is_zero(u[a])) continue;
    for (int j = 0; j < n; ++j) {
      if (Is[a].contains(j)) continue;
      const int s = merge_sign({j}, Is[a].indices());
      std::vector<int> k = Is[a].indices();
      k.insert(std::upper_bound(k.begin(), k.end(), j), j);
      auto& slot = out[rank_of(MultiIndex(n, std::move(k)))];
      const C dj = partial(u[a], j);
      slot = s > 0 ? slot + dj : slot - dj;
    }
  }
  return out;
}

/// d*_q v = (-1)^{nq+1} * d_{n-q-1} * v for a (q+1)-form v.
template <class C>
Form<C> codifferential(const Form<C>& v) {
  if (v.degree() == 0) throw DegreeMismatch("codifferential of a 0-form is undefined");
  const int n = v.dim(), q = v.degree() - 1;
  Form<C> r = hodge_star(exterior_derivative(hodge_star(v)));
  return ((n * q + 1) % 2) ? -r : r;
}

/// Hodge Laplacian d*d + dd*, with the terms that leave 0..n dropped.
template <class C>
Form<C> hodge_laplacian(const Form<C>& u) {
  const int n = u.dim(), q = u.degree();
  Form<C> out(n, q, u[0]);
  if (q < n) out += codifferential(exterior_derivative(u));
  if (q >= 1) out += exterior_derivative(codifferential(u));
  return out;
}

/// Sum over axes of the second derivative of every coefficient.
template <class C>
Form<C> componentwise_laplacian(const Form<C>& u) {
  Form<C> out(u.dim(), u.degree(), u[0]);
  for (std::size_t a = 0; a < u.size(); ++a)
    for (int j = 0; j < u.dim(); ++j) out[a] = out[a] + partial(partial(u[a], j), j);
  return out;
}

namespace detail {
inline void check_matrix(const MatrixCoefficient& M, int n, int q) {
  if (M.dim() != n) throw DimensionMismatch("matrix dimension does not match form");
  if (M.degree() != q) throw DegreeMismatch("matrix degree does not match form degree");
}
}  // namespace detail

/// M u = sum_I *(u ^ *M^{(I)}) dx_I, the matrix acting through wedge and star.
template <class C>
Form<C> matrix_action(const MatrixCoefficient& M, const Form<C>& u) {
  detail::check_matrix(M, u.dim(), u.degree());
  const int n = u.dim(), q = u.degree();
  Form<C> out(n, q, u[0]);
  const auto& Is = multi_indices(n, q);
  for (std::size_t i = 0; i < Is.size(); ++i) {
    Form<C> row(n, q, u[0]);
    for (std::size_t j = 0; j < Is.size(); ++j) row[j] = constant_like(u[0], M(i, j));
    const Form<C> top = wedge(u, hodge_star(row));
    out[i] = hodge_star(top)[0];
  }
  return out;
}

/// Plain matrix-vector product on the lexicographic coefficient vector.
template <class C>
Form<C> matrix_action_direct(const MatrixCoefficient& M, const Form<C>& u) {
  detail::check_matrix(M, u.dim(), u.degree());
  Form<C> out(u.dim(), u.degree(), u[0]);
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j)
      if (M(i, j) != 0) out[i] = out[i] + scaled(u[j], M(i, j));
  return out;
}

/// Lame-type operator d*_q M d_q + d_{q-1} Mt d*_{q-1}; M acts on (q+1)-forms,
/// Mt on (q-1)-forms. Terms whose degrees leave 0..n are dropped, and the
/// corresponding matrix may then be default-constructed.
template <class C>
Form<C> lame_laplacian(const MatrixCoefficient& M, const MatrixCoefficient& Mt, const Form<C>& u) {
  const int n = u.dim(), q = u.degree();
  Form<C> out(n, q, u[0]);
  if (q < n) {
    detail::check_matrix(M, n, q + 1);
    out += codifferential(matrix_action_direct(M, exterior_derivative(u)));
  }
  if (q >= 1) {
    detail::check_matrix(Mt, n, q - 1);
    out += exterior_derivative(matrix_action_direct(Mt, codifferential(u)));
  }
  return out;
}

/// a d*d u + at dd* u.
template <class C>
Form<C> lame_laplacian_scalar(const Rational& a, const Rational& at, const Form<C>& u) {
  const int n = u.dim(), q = u.degree();
  Form<C> out(n, q, u[0]);
  if (q < n) out += a * codifferential(exterior_derivative(u));
  if (q >= 1) out += at * exterior_derivative(codifferential(u));
  return out;
}

}  // namespace drstokes
