#include "drstokes/generator.hpp"

#include <algorithm>

#include "drstokes/errors.hpp"

namespace drstokes {

int Generator::source_degree() const noexcept {
  switch (kind) {
    case GenKind::DS:
    case GenKind::M:
      return level + 1;
    case GenKind::Mt:
      return level - 1;
    default:
      return level;
  }
}

int Generator::target_degree() const noexcept {
  switch (kind) {
    case GenKind::D:
    case GenKind::M:
      return level + 1;
    case GenKind::Mt:
      return level - 1;
    default:
      return level;
  }
}

std::string Generator::to_string() const {
  const std::string l = std::to_string(level);
  switch (kind) {
    case GenKind::D: return "d" + l;
    case GenKind::DS: return "ds" + l;
    case GenKind::Phi: return "Phi" + l;
    case GenKind::PhiMu: return "PhiMu" + l;
    case GenKind::M: return "M" + l;
    case GenKind::Mt: return "Mt" + l;
    case GenKind::Id: return "I" + l;
    case GenKind::Zero: return "0";
  }
  return "?";
}

void check_word(const Word& w, int n) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    const Generator& g = w[k];
    const bool differential = g.kind == GenKind::D || g.kind == GenKind::DS;
    // d_q and ds_q outside 0..n-1 are legal zero operators; everything else
    // must act on an existing degree.
    if (!differential && (g.source_degree() < 0 || g.source_degree() > n || g.target_degree() < 0 ||
                          g.target_degree() > n))
      throw DegreeMismatch(g.to_string() + " acts outside degrees 0.." + std::to_string(n));
    if (k + 1 < w.size() && w[k].source_degree() != w[k + 1].target_degree())
      throw DegreeMismatch("cannot compose " + w[k].to_string() + " after " + w[k + 1].to_string());
  }
}

int word_source(const Word& w, int fallback) { return w.empty() ? fallback : w.back().source_degree(); }
int word_target(const Word& w, int fallback) { return w.empty() ? fallback : w.front().target_degree(); }

Word concat(const Word& a, const Word& b) {
  Word r;
  r.reserve(a.size() + b.size());
  r.insert(r.end(), a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Word concat(const Word& a, const Word& b, const Word& c) {
  Word r;
  r.reserve(a.size() + b.size() + c.size());
  r.insert(r.end(), a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  r.insert(r.end(), c.begin(), c.end());
  return r;
}

Word adjoint(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (auto& g : r) {
    if (g.kind == GenKind::D)
      g.kind = GenKind::DS;
    else if (g.kind == GenKind::DS)
      g.kind = GenKind::D;
  }
  return r;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "I";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ' ';
    s += w[k].to_string();
  }
  return s;
}

}  // namespace drstokes
