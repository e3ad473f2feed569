#include "drstokes/parser.hpp"

#include <cctype>
#include <map>

#include "drstokes/errors.hpp"

namespace drstokes {
namespace {

// Untyped sum of words; typing happens once the whole expression is known.
using RawSum = std::map<Word, Rational>;

RawSum compose(const RawSum& a, const RawSum& b) {
  RawSum r;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      auto& slot = r[concat(wa, wb)];
      slot += ca * cb;
    }
  return r;
}

void accumulate(RawSum& into, const RawSum& add, const Rational& s) {
  for (const auto& [w, c] : add) into[w] += s * c;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RawSum parse_expr() {
    skip();
    Rational sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = get() == '-' ? -1 : 1;
    }
    RawSum out;
    accumulate(out, parse_term(), sign);
    for (;;) {
      skip();
      if (peek() != '+' && peek() != '-') break;
      const Rational s = get() == '-' ? -1 : 1;
      accumulate(out, parse_term(), s);
    }
    return out;
  }

  std::size_t pos() const { return pos_; }
  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return text_[pos_++]; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

 private:
  static bool starts_factor(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '('; }

  long long parse_int() {
    const std::size_t start = pos_;
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (get() - '0');
      if (v > 1'000'000'000) throw ParseError("integer too large", start);
    }
    return v;
  }

  RawSum parse_term() {
    skip();
    const std::size_t start = pos_;
    Rational coef = 1;
    bool any = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coef = parse_int();
      any = true;
    }
    RawSum acc{{Word{}, coef}};
    for (;;) {
      skip();
      if (!starts_factor(peek())) break;
      acc = compose(acc, parse_factor());
      any = true;
    }
    if (!any) throw ParseError(peek() ? std::string("unexpected '") + peek() + "'" : "unexpected end of input", start);
    return acc;
  }

  RawSum parse_factor() {
    skip();
    if (peek() == '(') {
      ++pos_;
      RawSum inner = parse_expr();
      expect(')');
      return inner;
    }
    const std::size_t start = pos_;
    std::string name;
    while (std::isalpha(static_cast<unsigned char>(peek()))) name += get();
    bool braces = false;
    if (peek() == '{') {
      braces = true;
      ++pos_;
    } else if (peek() == '_') {
      ++pos_;
    }
    const bool has_digits = std::isdigit(static_cast<unsigned char>(peek()));
    const int level = has_digits ? static_cast<int>(parse_int()) : -1;
    if (braces) {
      if (peek() != '}') throw ParseError("expected '}'", pos_);
      ++pos_;
    }
    if (name == "I") {
      if (has_digits) return RawSum{{Word{id(level)}, 1}};
      return RawSum{{Word{}, 1}};
    }
    if (!has_digits) throw ParseError("generator '" + name + "' needs a degree subscript", start);
    GenKind kind;
    if (name == "d")
      kind = GenKind::D;
    else if (name == "ds")
      kind = GenKind::DS;
    else if (name == "Phi")
      kind = GenKind::Phi;
    else if (name == "PhiMu")
      kind = GenKind::PhiMu;
    else if (name == "M")
      kind = GenKind::M;
    else if (name == "Mt")
      kind = GenKind::Mt;
    else
      throw ParseError("unknown generator '" + name + "'", start);
    return RawSum{{Word{Generator{kind, level}}, 1}};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Expression type_sum(const RawSum& raw, int n, std::optional<int> hint, std::size_t where) {
  std::optional<int> src, tgt;
  for (const auto& [w, c] : raw) {
    if (c == 0 || w.empty()) continue;
    src = word_source(w, 0);
    tgt = word_target(w, 0);
    break;
  }
  if (!src) {
    if (!hint) throw ParseError("cannot infer operator degree", where);
    src = tgt = *hint;
  }
  Expression e(n, *src, *tgt);
  for (const auto& [w, c] : raw) {
    if (c == 0) continue;
    bool killed = false;
    Word clean;
    for (const auto& g : w) {
      if (g.kind == GenKind::Zero) killed = true;
      clean.push_back(g);
    }
    if (!killed) e.add(clean, c);
  }
  return e;
}

}  // namespace

Expression parse_expression(std::string_view text, int n, std::optional<int> degree_hint) {
  Parser p(text);
  RawSum raw = p.parse_expr();
  if (!p.at_end()) throw ParseError(std::string("unexpected '") + p.peek() + "'", p.pos());
  return type_sum(raw, n, degree_hint, 0);
}

BlockMatrix parse_block_matrix(std::string_view text, int n) {
  // Split on brackets and top-level commas first, then parse each entry.
  struct Cell {
    std::string_view text;
    std::size_t offset;
  };
  std::vector<std::vector<Cell>> rows;
  Parser p(text);
  p.expect('[');
  for (;;) {
    p.expect('[');
    std::vector<Cell> row;
    std::size_t start = p.pos();
    int depth = 0;
    for (;;) {
      if (p.pos() >= text.size()) throw ParseError("unterminated row", p.pos());
      const char c = p.peek();
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && (c == ',' || c == ']')) {
        row.push_back({text.substr(start, p.pos() - start), start});
        p.get();
        if (c == ']') break;
        start = p.pos();
        continue;
      }
      p.get();
    }
    rows.push_back(std::move(row));
    p.skip();
    if (p.peek() == ',') {
      p.get();
      continue;
    }
    p.expect(']');
    break;
  }
  if (!p.at_end()) throw ParseError("trailing input after block matrix", p.pos());
  const int q = static_cast<int>(rows.size()) - 1;
  if (q > n) throw ParseError("block matrix larger than the complex", 0);
  for (int i = 0; i <= q; ++i)
    if (static_cast<int>(rows[i].size()) != q + 1) throw ParseError("block matrix must be square", rows[i].front().offset);
  BlockMatrix m(n, q);
  for (int i = 0; i <= q; ++i) {
    for (int j = 0; j <= q; ++j) {
      const Cell& cell = rows[i][j];
      try {
        Parser cp(cell.text);
        RawSum raw = cp.parse_expr();
        if (!cp.at_end()) throw ParseError(std::string("unexpected '") + cp.peek() + "'", cp.pos());
        Expression e = type_sum(raw, n, q - j, 0);
        if (e.is_zero()) e = Expression(n, q - j, q - i);
        m.set(i, j, std::move(e));
      } catch (const ParseError& err) {
        throw ParseError("in block (" + std::to_string(i) + "," + std::to_string(j) + "): bad entry",
                         cell.offset + err.position());
      }
    }
  }
  return m;
}

}  // namespace drstokes
