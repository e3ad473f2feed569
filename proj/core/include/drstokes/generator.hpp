#pragma once

#include <compare>
#include <string>
#include <vector>

namespace drstokes {

enum class GenKind { D, DS, Phi, PhiMu, M, Mt, Id, Zero };

/// One typed operator symbol. `level` is the subscript:
///   d_q : q -> q+1      ds_q : q+1 -> q
///   Phi_q, PhiMu_q, I_q, 0_q : q -> q
///   M_q acts on (q+1)-forms, Mt_q on (q-1)-forms, so that
///   Lap_{q,mu} = ds_q M_q d_q + d_{q-1} Mt_q ds_{q-1}.
struct Generator {
  GenKind kind = GenKind::Id;
  int level = 0;

  int source_degree() const noexcept;
  int target_degree() const noexcept;
  /// Token spelling used by the parser, e.g. "ds1", "PhiMu2", "Mt1".
  std::string to_string() const;

  friend auto operator<=>(const Generator&, const Generator&) = default;
};

inline Generator d(int q) { return {GenKind::D, q}; }
inline Generator ds(int q) { return {GenKind::DS, q}; }
inline Generator phi(int q) { return {GenKind::Phi, q}; }
inline Generator phi_mu(int q) { return {GenKind::PhiMu, q}; }
inline Generator mat(int q) { return {GenKind::M, q}; }
inline Generator mat_tilde(int q) { return {GenKind::Mt, q}; }
inline Generator id(int q) { return {GenKind::Id, q}; }
inline Generator zero_gen(int q) { return {GenKind::Zero, q}; }

/// Composition in written order: front() is applied last.
using Word = std::vector<Generator>;

/// Throws DegreeMismatch if consecutive generators do not compose, or a
/// degree-preserving symbol sits at a degree outside 0..n.
void check_word(const Word& w, int n);
int word_source(const Word& w, int fallback);
int word_target(const Word& w, int fallback);

Word concat(const Word& a, const Word& b);
Word concat(const Word& a, const Word& b, const Word& c);
/// Reverse and swap d_q <-> ds_q.
Word adjoint(const Word& w);
std::string to_string(const Word& w);

}  // namespace drstokes
