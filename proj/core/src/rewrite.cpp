#include "drstokes/rewrite.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>

#include "drstokes/errors.hpp"

namespace drstokes {
namespace {

std::vector<CancellationRule> make_rules(int n) {
  std::vector<CancellationRule> rules;
  for (int q = 0; q <= n; ++q) {
    const bool up = q < n;     // d_q exists
    const bool down = q >= 1;  // d_{q-1} exists
    CancellationRule lap{"hodge", q, {}};
    CancellationRule right{"lame-right", q, {}};
    CancellationRule left{"lame-left", q, {}};
    if (up) {
      lap.patterns.push_back({ds(q), d(q), phi(q)});
      right.patterns.push_back({ds(q), mat(q), d(q), phi_mu(q)});
      left.patterns.push_back({phi_mu(q), ds(q), mat(q), d(q)});
    }
    if (down) {
      lap.patterns.push_back({d(q - 1), ds(q - 1), phi(q)});
      right.patterns.push_back({d(q - 1), mat_tilde(q), ds(q - 1), phi_mu(q)});
      left.patterns.push_back({phi_mu(q), d(q - 1), mat_tilde(q), ds(q - 1)});
    }
    rules.push_back(std::move(lap));
    rules.push_back(std::move(right));
    rules.push_back(std::move(left));
  }
  return rules;
}

struct PatternRef {
  std::size_t rule;
  std::size_t pattern;
};

struct RuleIndex {
  std::vector<CancellationRule> rules;
  std::map<Generator, std::vector<PatternRef>> by_head;
};

const RuleIndex& rule_index(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<RuleIndex>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<RuleIndex>();
    slot->rules = make_rules(n);
    for (std::size_t r = 0; r < slot->rules.size(); ++r)
      for (std::size_t p = 0; p < slot->rules[r].patterns.size(); ++p)
        slot->by_head[slot->rules[r].patterns[p].front()].push_back({r, p});
  }
  return *slot;
}

Rational abs_of(const Rational& x) { return x < 0 ? Rational(-x) : x; }

}  // namespace

const std::vector<CancellationRule>& cancellation_rules(int n) { return rule_index(n).rules; }

std::optional<std::pair<int, Word>> basic_normal_form(const Word& input, int n, bool corrupt) {
  Word w;
  w.reserve(input.size());
  for (const auto& g : input) {
    if (g.kind == GenKind::Zero) return std::nullopt;
    if ((g.kind == GenKind::D || g.kind == GenKind::DS) && (g.level < 0 || g.level >= n)) return std::nullopt;
    if (g.kind != GenKind::Id) w.push_back(g);
  }
  int sign = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      Generator& a = w[k];
      Generator& b = w[k + 1];
      if ((a.kind == GenKind::D && b.kind == GenKind::D) || (a.kind == GenKind::DS && b.kind == GenKind::DS))
        return std::nullopt;
      // Phi_{q+1} d_q = d_q Phi_q and Phi_q ds_q = ds_q Phi_{q+1}
      if (a.kind == GenKind::Phi && (b.kind == GenKind::D || b.kind == GenKind::DS)) {
        const Generator moved{GenKind::Phi, b.source_degree()};
        a = b;
        b = moved;
        if (corrupt) sign = -sign;
        changed = true;
      }
    }
  }
  return std::make_pair(sign, std::move(w));
}

Expression basic_normalize(const Expression& e, bool corrupt) {
  Expression r(e.dim(), e.source(), e.target());
  for (const auto& [w, c] : e.terms()) {
    auto nf = basic_normal_form(w, e.dim(), corrupt);
    if (nf) r.add(nf->second, c * nf->first);
  }
  return r;
}

namespace {

class Rewriter {
 public:
  Rewriter(Expression e, const RewriteOptions& opts)
      : n_(e.dim()), opts_(opts), index_(rule_index(e.dim())), rng_(opts.seed), expr_(std::move(e)) {}

  Expression run(RewriteStats* stats) {
    bool progress = true;
    while (progress) {
      progress = false;
      std::vector<Word> order;
      order.reserve(expr_.terms().size());
      for (const auto& [w, c] : expr_.terms()) order.push_back(w);
      if (opts_.terms == TermOrder::Reversed) std::reverse(order.begin(), order.end());
      if (opts_.terms == TermOrder::Shuffled) std::shuffle(order.begin(), order.end(), rng_);
      for (const Word& w : order) {
        if (expr_.coefficient(w) == 0) continue;
        if (try_rewrite(w)) {
          progress = true;
          if (++steps_ > opts_.budget) throw BudgetExceeded(steps_);
        }
      }
    }
    if (stats) stats->steps = steps_;
    return expr_;
  }

 private:
  using Changes = std::map<Word, Rational>;

  void add_change(Changes& ch, const Word& w, const Rational& c) {
    auto nf = basic_normal_form(w, n_, opts_.corrupt);
    if (!nf) return;
    ch[nf->second] += c * nf->first;
  }

  Rational delta(const Changes& ch) const {
    Rational dm = 0;
    for (const auto& [w, c] : ch) {
      if (c == 0) continue;
      const Rational old = expr_.coefficient(w);
      dm += (abs_of(old + c) - abs_of(old)) * static_cast<long>(w.size() + 1);
    }
    return dm;
  }

  bool try_rewrite(const Word& w) {
    const Rational c = expr_.coefficient(w);
    std::vector<std::size_t> positions(w.size());
    std::iota(positions.begin(), positions.end(), 0);
    if (opts_.redex == RedexOrder::Innermost) std::reverse(positions.begin(), positions.end());
    for (std::size_t p : positions) {
      auto it = index_.by_head.find(w[p]);
      if (it == index_.by_head.end()) continue;
      for (const PatternRef& ref : it->second) {
        const CancellationRule& rule = index_.rules[ref.rule];
        const Word& pat = rule.patterns[ref.pattern];
        if (p + pat.size() > w.size() || !std::equal(pat.begin(), pat.end(), w.begin() + static_cast<long>(p)))
          continue;
        const Word X(w.begin(), w.begin() + static_cast<long>(p));
        const Word Y(w.begin() + static_cast<long>(p + pat.size()), w.end());
        Changes ch;
        ch[w] -= c;
        add_change(ch, concat(X, Y), c);
        for (std::size_t j = 0; j < rule.patterns.size(); ++j)
          if (j != ref.pattern) add_change(ch, concat(X, rule.patterns[j], Y), -c);
        if (delta(ch) < 0) {
          for (const auto& [cw, cc] : ch) expr_.add(cw, cc);
          return true;
        }
      }
    }
    return false;
  }

  int n_;
  RewriteOptions opts_;
  const RuleIndex& index_;
  std::mt19937_64 rng_;
  Expression expr_;
  std::size_t steps_ = 0;
};

}  // namespace

Expression normalize(const Expression& e, const RewriteOptions& opts, RewriteStats* stats) {
  Rewriter rw(basic_normalize(e, opts.corrupt), opts);
  return rw.run(stats);
}

}  // namespace drstokes
