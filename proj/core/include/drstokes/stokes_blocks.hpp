#pragma once

#include <string>
#include <vector>

#include "drstokes/block_matrix.hpp"
#include "drstokes/poly_form.hpp"

namespace drstokes {

/// Abstract: M_q, Mt_q and PhiMu_q stay symbols.
/// Identity: M = Mt = I, so every PhiMu becomes Phi.
enum class CoefficientMode { Abstract, Identity };

/// Single sign flips used as negative controls. Block coordinates are 0-based.
enum class PsiMutation { None, Flip00, Flip01, Flip10, Flip11, Flip21 };

const std::vector<PsiMutation>& all_mutations();
std::string to_string(PsiMutation m);
std::string to_string(CoefficientMode m);

/// ds_q M_q d_q + d_{q-1} Mt_q ds_{q-1}, dropping whichever half leaves 0..n.
Expression lame_symbol(int n, int q, CoefficientMode mode);
/// Same with M = Mt = I.
Expression hodge_symbol(int n, int q);

/// Tridiagonal Stokes operator: Lame blocks on the diagonal for degrees >= j0,
/// d above and ds below the diagonal. Requires 1 <= j0 <= q <= n.
BlockMatrix build_stokes(int n, int q, int j0, CoefficientMode mode);

/// Right fundamental solution. Needs j0 == q (only the top Lame block is
/// nonzero); throws UnsupportedConfiguration otherwise.
BlockMatrix build_psi_right(int n, int q, int j0, CoefficientMode mode, PsiMutation mutation = PsiMutation::None);
/// Blockwise adjoint of the right solution.
BlockMatrix build_psi_left(int n, int q, int j0, CoefficientMode mode, PsiMutation mutation = PsiMutation::None);

/// A = I - normalize(Psi_r S).
BlockMatrix build_defect(int n, int q, CoefficientMode mode, const RewriteOptions& opts = {});
/// Closed-form blocks of A; zero outside the top-left 2x2.
BlockMatrix closed_form_defect(int n, int q, CoefficientMode mode);
/// Psi_r + A Psi_r*, with A from closed_form_defect.
BlockMatrix build_psi_bilateral(int n, int q, CoefficientMode mode);

/// True iff every form of the family is closed (its d vanishes).
bool check_commute_condition(const std::vector<PolyForm>& mt_forms);

}  // namespace drstokes
