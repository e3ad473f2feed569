#include "drstokes/stokes_blocks.hpp"

#include "drstokes/errors.hpp"

namespace drstokes {
namespace {

bool in_range(const Word& w, int n) {
  for (const auto& g : w)
    if ((g.kind == GenKind::D || g.kind == GenKind::DS) && (g.level < 0 || g.level >= n)) return false;
  return true;
}

// Adds c*w unless the word contains a d or ds that does not exist in dimension n.
void put(Expression& e, const Word& w, const Rational& c = 1) {
  if (in_range(w, e.dim())) e.add(w, c);
}

Expression one_word(int n, int src, int tgt, const Word& w, const Rational& c = 1) {
  Expression e(n, src, tgt);
  put(e, w, c);
  return e;
}

Generator pmu(int q, CoefficientMode mode) { return mode == CoefficientMode::Abstract ? phi_mu(q) : phi(q); }

void check_range(int n, int q, int j0) {
  if (n < 1) throw DimensionMismatch("dimension must be positive");
  if (!(1 <= j0 && j0 <= q && q <= n)) throw DegreeMismatch("need 1 <= j0 <= q <= n");
}

// (i, j) block of the right solution before mutations.
BlockMatrix psi_right_plain(int n, int q, CoefficientMode mode) {
  const bool abs = mode == CoefficientMode::Abstract;
  BlockMatrix m(n, q);
  const int p = q - 1;
  {
    Expression e(n, q, q);
    if (abs)
      put(e, {ds(q), mat(q), d(q), phi_mu(q), phi_mu(q)});
    else
      put(e, {phi(q), ds(q), d(q), phi(q)});
    m.set(0, 0, e);
  }
  for (int i = 0; i < q; ++i) m.set(i, i + 1, one_word(n, q - i - 1, q - i, {d(q - i - 1), phi(q - i - 1)}));
  if (abs) {
    if (q >= 2) {
      m.set(1, 0, one_word(n, q, p, {ds(p), phi(q), d(p), mat_tilde(q), ds(p), phi_mu(q)}));
      m.set(1, 1, one_word(n, p, p, {ds(p), phi(q), d(p), mat_tilde(q), ds(p), phi(q), d(p)}, -1));
    } else {
      m.set(1, 0, one_word(n, 1, 0, {mat_tilde(1), ds(0), phi_mu(1)}));
      m.set(1, 1, one_word(n, 0, 0, {mat_tilde(1)}, -1));
    }
  } else {
    m.set(1, 0, one_word(n, q, p, {ds(p), phi(q)}));
    if (q >= 2)
      m.set(1, 1, one_word(n, p, p, {ds(p), phi(q), d(p)}, -1));
    else
      m.set(1, 1, -Expression::identity(n, 0));
  }
  for (int i = 1; i < q; ++i) m.set(i + 1, i, one_word(n, q - i, q - i - 1, {phi(q - i - 1), ds(q - i - 1)}));
  return m;
}

}  // namespace

const std::vector<PsiMutation>& all_mutations() {
  static const std::vector<PsiMutation> all{PsiMutation::Flip00, PsiMutation::Flip01, PsiMutation::Flip10,
                                            PsiMutation::Flip11, PsiMutation::Flip21};
  return all;
}

std::string to_string(PsiMutation m) {
  switch (m) {
    case PsiMutation::None: return "none";
    case PsiMutation::Flip00: return "flip(0,0)";
    case PsiMutation::Flip01: return "flip(0,1)";
    case PsiMutation::Flip10: return "flip(1,0)";
    case PsiMutation::Flip11: return "flip(1,1)";
    case PsiMutation::Flip21: return "flip(2,1)";
  }
  return "?";
}

std::string to_string(CoefficientMode m) { return m == CoefficientMode::Abstract ? "abstract" : "identity"; }

Expression lame_symbol(int n, int q, CoefficientMode mode) {
  Expression e(n, q, q);
  if (mode == CoefficientMode::Abstract) {
    if (q < n) put(e, {ds(q), mat(q), d(q)});
    if (q >= 1) put(e, {d(q - 1), mat_tilde(q), ds(q - 1)});
  } else {
    put(e, {ds(q), d(q)});
    put(e, {d(q - 1), ds(q - 1)});
  }
  return e;
}

Expression hodge_symbol(int n, int q) { return lame_symbol(n, q, CoefficientMode::Identity); }

BlockMatrix build_stokes(int n, int q, int j0, CoefficientMode mode) {
  check_range(n, q, j0);
  BlockMatrix s(n, q);
  for (int i = 0; i <= q; ++i)
    if (q - i >= j0) s.set(i, i, lame_symbol(n, q - i, mode));
  for (int i = 0; i < q; ++i) {
    s.set(i, i + 1, one_word(n, q - i - 1, q - i, {d(q - i - 1)}));
    s.set(i + 1, i, one_word(n, q - i, q - i - 1, {ds(q - i - 1)}));
  }
  return s;
}

BlockMatrix build_psi_right(int n, int q, int j0, CoefficientMode mode, PsiMutation mutation) {
  check_range(n, q, j0);
  if (j0 != q)
    throw UnsupportedConfiguration("the explicit fundamental solution needs every Lame block below degree q to vanish (j0 = q)");
  BlockMatrix m = psi_right_plain(n, q, mode);
  auto flip = [&](int i, int j) {
    if (i <= q && j <= q) m.set(i, j, -m(i, j));
  };
  switch (mutation) {
    case PsiMutation::None: break;
    case PsiMutation::Flip00: flip(0, 0); break;
    case PsiMutation::Flip01: flip(0, 1); break;
    case PsiMutation::Flip10: flip(1, 0); break;
    case PsiMutation::Flip11: flip(1, 1); break;
    case PsiMutation::Flip21: flip(2, 1); break;
  }
  return m;
}

BlockMatrix build_psi_left(int n, int q, int j0, CoefficientMode mode, PsiMutation mutation) {
  return build_psi_right(n, q, j0, mode, mutation).adjoint();
}

BlockMatrix build_defect(int n, int q, CoefficientMode mode, const RewriteOptions& opts) {
  const BlockMatrix prod = build_psi_right(n, q, q, mode) * build_stokes(n, q, q, mode);
  return BlockMatrix::identity(n, q) - prod.normalized(opts);
}

BlockMatrix closed_form_defect(int n, int q, CoefficientMode mode) {
  check_range(n, q, q);
  const bool abs = mode == CoefficientMode::Abstract;
  const int p = q - 1;
  BlockMatrix a(n, q);
  Expression a11(n, q, q), a12(n, p, q), a22(n, p, p);
  put(a11, {ds(q), d(q), phi(q)});
  put(a12, concat({ds(q)}, abs ? Word{mat(q)} : Word{}, {d(q), pmu(q, mode), pmu(q, mode), d(p)}), -1);
  put(a22, {ds(p), d(p), phi(p)});
  if (abs) {
    put(a11, {ds(q), mat(q), d(q), phi_mu(q)}, -1);
    if (q == 1)
      put(a22, {mat_tilde(1), ds(0), phi_mu(1), d(0)}, -1);
    else
      put(a22, {ds(p), phi(q), d(p), mat_tilde(q), ds(p), phi_mu(q), d(p)}, -1);
  } else {
    put(a11, {ds(q), d(q), phi(q)}, -1);
    put(a22, {ds(p), phi(q), d(p), ds(p), phi(q), d(p)}, -1);
  }
  a.set(0, 0, a11);
  a.set(0, 1, a12);
  a.set(1, 1, a22);
  return a;
}

BlockMatrix build_psi_bilateral(int n, int q, CoefficientMode mode) {
  const BlockMatrix r = build_psi_right(n, q, q, mode);
  return r + closed_form_defect(n, q, mode) * r.adjoint();
}

bool check_commute_condition(const std::vector<PolyForm>& mt_forms) {
  for (const auto& f : mt_forms)
    if (!exterior_derivative(f).is_zero()) return false;
  return true;
}

}  // namespace drstokes
