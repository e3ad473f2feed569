#include "drstokes/expression.hpp"

#include "drstokes/errors.hpp"

namespace drstokes {

Expression::Expression(int n, int source, int target) : n_(n), src_(source), tgt_(target) {
  if (n < 1) throw DimensionMismatch("dimension must be positive");
  if (source < 0 || source > n || target < 0 || target > n)
    throw DegreeMismatch("expression degrees must lie in 0..n");
}

Expression Expression::identity(int n, int q) {
  Expression e(n, q, q);
  e.terms_[Word{}] = 1;
  return e;
}

Expression Expression::word(int n, const Word& w, const Rational& c) {
  if (w.empty()) throw DegreeMismatch("an empty word needs an explicit degree; use identity()");
  check_word(w, n);
  Expression e(n, word_source(w, 0), word_target(w, 0));
  e.add(w, c);
  return e;
}

Rational Expression::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Expression::add(const Word& w, const Rational& c) {
  if (c == 0) return;
  check_word(w, n_);
  if (word_source(w, src_) != src_ || word_target(w, tgt_) != tgt_ || (w.empty() && src_ != tgt_))
    throw DegreeMismatch("word " + drstokes::to_string(w) + " does not map degree " + std::to_string(src_) +
                         " to " + std::to_string(tgt_));
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Expression::same_signature(const Expression& o) const {
  if (o.n_ != n_) throw DimensionMismatch("expressions in different dimensions");
  if (o.src_ != src_ || o.tgt_ != tgt_) throw DegreeMismatch("adding expressions of different degree signature");
}

Expression& Expression::operator+=(const Expression& o) {
  same_signature(o);
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

Expression& Expression::operator-=(const Expression& o) {
  same_signature(o);
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

Expression& Expression::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

Expression operator*(const Expression& a, const Expression& b) {
  if (a.n_ != b.n_) throw DimensionMismatch("composing expressions in different dimensions");
  if (a.src_ != b.tgt_)
    throw DegreeMismatch("cannot compose: left expects degree " + std::to_string(a.src_) + ", right yields " +
                         std::to_string(b.tgt_));
  Expression r(a.n_, b.src_, a.tgt_);
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) r.add(concat(wa, wb), ca * cb);
  return r;
}

Expression Expression::adjoint() const {
  Expression r(n_, tgt_, src_);
  for (const auto& [w, c] : terms_) r.add(drstokes::adjoint(w), c);
  return r;
}

std::string Expression::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first)
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    first = false;
    if (mag != 1) s += drstokes::to_string(mag) + " ";
    s += drstokes::to_string(w);
  }
  return s;
}

Rational measure(const Expression& e) {
  Rational m = 0;
  for (const auto& [w, c] : e.terms()) m += (c < 0 ? Rational(-c) : c) * static_cast<long>(w.size() + 1);
  return m;
}

}  // namespace drstokes
