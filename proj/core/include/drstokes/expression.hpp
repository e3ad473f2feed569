#pragma once

#include <map>
#include <string>

#include "drstokes/generator.hpp"
#include "drstokes/rational.hpp"

namespace drstokes {

/// Formal linear combination of typed operator words, all mapping degree
/// `source()` to degree `target()` in dimension `dim()`.
///
/// The abstract identities only ever produce integer coefficients; rational
/// ones appear when scalar Lame parameters are substituted for M and Mt.
class Expression {
 public:
  using Terms = std::map<Word, Rational>;

  Expression() = default;
  /// The zero operator from degree `source` to `target`.
  Expression(int n, int source, int target);

  static Expression identity(int n, int q);
  static Expression zero(int n, int source, int target) { return Expression(n, source, target); }
  /// Single word with coefficient c. Throws DegreeMismatch on ill-typed words.
  static Expression word(int n, const Word& w, const Rational& c = 1);
  static Expression generator(int n, Generator g) { return word(n, Word{g}); }

  int dim() const noexcept { return n_; }
  int source() const noexcept { return src_; }
  int target() const noexcept { return tgt_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(const Word& w) const;

  /// Adds c*w; the word must be typed and match source/target.
  void add(const Word& w, const Rational& c);

  Expression& operator+=(const Expression& o);
  Expression& operator-=(const Expression& o);
  Expression& operator*=(const Rational& c);
  friend Expression operator+(Expression a, const Expression& b) { return a += b; }
  friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
  friend Expression operator*(Expression a, const Rational& c) { return a *= c; }
  friend Expression operator*(const Rational& c, Expression a) { return a *= c; }
  Expression operator-() const { return *this * Rational(-1); }
  /// Composition: (a * b) applies b first.
  friend Expression operator*(const Expression& a, const Expression& b);

  /// Formal adjoint, word by word.
  Expression adjoint() const;

  /// e.g. "ds1 M1 d1 PhiMu1 - 2 d0 Phi0 + I".
  std::string to_string() const;

  friend bool operator==(const Expression& a, const Expression& b) {
    return a.n_ == b.n_ && a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.terms_ == b.terms_;
  }

 private:
  void same_signature(const Expression& o) const;

  int n_ = 0;
  int src_ = 0;
  int tgt_ = 0;
  Terms terms_;
};

/// Measure used by the rewrite engine: sum |c| (length + 1).
Rational measure(const Expression& e);

}  // namespace drstokes
