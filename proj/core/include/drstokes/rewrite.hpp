#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "drstokes/expression.hpp"

namespace drstokes {

/// Order in which the terms of an expression are visited on each pass.
enum class TermOrder { Canonical, Reversed, Shuffled };

/// Which redex inside a word is tried first. Innermost (rightmost, i.e. the
/// operator applied first) is the default: with outermost selection two
/// disjoint redexes in one word can reduce to different normal forms and
/// left-sided identities get stuck.
enum class RedexOrder { Innermost, Outermost };

struct RewriteOptions {
  TermOrder terms = TermOrder::Canonical;
  RedexOrder redex = RedexOrder::Innermost;
  /// Seed for TermOrder::Shuffled.
  std::uint64_t seed = 0;
  std::size_t budget = 1'000'000;
  /// Negative control: Phi picks up a wrong sign when commuted past d / ds.
  bool corrupt = false;
};

struct RewriteStats {
  std::size_t steps = 0;
};

/// A set of pattern words, all q -> q, whose sum is the identity on q-forms.
struct CancellationRule {
  const char* name;
  int degree;
  std::vector<Word> patterns;
};

/// Every cancellation rule for dimension n: Hodge (d*d + dd*) Phi = I and the
/// Lame versions with PhiMu on either side. At the ends of the complex the
/// out-of-range pattern is dropped, so those rules have one term.
const std::vector<CancellationRule>& cancellation_rules(int n);

/// Word-level normal form: drops I, kills words containing 0, out-of-range
/// d / ds, d d or ds ds, and moves Phi to the right of d and ds.
/// Returns the sign picked up (always +1 unless `corrupt`) and the word, or
/// nothing when the word is zero.
std::optional<std::pair<int, Word>> basic_normal_form(const Word& w, int n, bool corrupt = false);

/// Applies basic_normal_form to every term.
Expression basic_normalize(const Expression& e, bool corrupt = false);

/// Rewrites to a fixed point of the oriented rule set. A cancellation step
/// X P_i Y -> X Y - sum_{j != i} X P_j Y is taken only when it strictly
/// lowers measure(); each accepted step counts against the budget.
/// Throws BudgetExceeded.
Expression normalize(const Expression& e, const RewriteOptions& opts = {}, RewriteStats* stats = nullptr);

}  // namespace drstokes
