#include "drstokes/block_matrix.hpp"

#include "drstokes/errors.hpp"

namespace drstokes {

BlockMatrix::BlockMatrix(int n, int q) : n_(n), q_(q) {
  if (q < 0 || q > n) throw DegreeMismatch("block matrix degree must lie in 0..n");
  blocks_.reserve(static_cast<std::size_t>((q + 1) * (q + 1)));
  for (int i = 0; i <= q; ++i)
    for (int j = 0; j <= q; ++j) blocks_.emplace_back(n, q - j, q - i);
}

BlockMatrix BlockMatrix::identity(int n, int q) {
  BlockMatrix m(n, q);
  for (int i = 0; i <= q; ++i) m.set(i, i, Expression::identity(n, q - i));
  return m;
}

std::size_t BlockMatrix::index(int i, int j) const {
  if (i < 0 || j < 0 || i > q_ || j > q_) throw DimensionMismatch("block index out of range");
  return static_cast<std::size_t>(i * (q_ + 1) + j);
}

void BlockMatrix::set(int i, int j, Expression e) {
  auto& slot = blocks_[index(i, j)];
  if (e.dim() != n_ || e.source() != slot.source() || e.target() != slot.target())
    throw DegreeMismatch("block (" + std::to_string(i) + "," + std::to_string(j) + ") must map degree " +
                         std::to_string(slot.source()) + " to " + std::to_string(slot.target()));
  slot = std::move(e);
}

void BlockMatrix::add(int i, int j, const Expression& e) { blocks_[index(i, j)] += e; }

void BlockMatrix::check_compatible(const BlockMatrix& o) const {
  if (o.n_ != n_ || o.q_ != q_) throw DegreeMismatch("block matrices have different signatures");
}

BlockMatrix& BlockMatrix::operator+=(const BlockMatrix& o) {
  check_compatible(o);
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += o.blocks_[k];
  return *this;
}

BlockMatrix& BlockMatrix::operator-=(const BlockMatrix& o) {
  check_compatible(o);
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= o.blocks_[k];
  return *this;
}

BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b) {
  a.check_compatible(b);
  BlockMatrix r(a.n_, a.q_);
  for (int i = 0; i <= a.q_; ++i)
    for (int j = 0; j <= a.q_; ++j)
      for (int k = 0; k <= a.q_; ++k) {
        const Expression& x = a(i, k);
        const Expression& y = b(k, j);
        if (!x.is_zero() && !y.is_zero()) r.add(i, j, x * y);
      }
  return r;
}

BlockMatrix BlockMatrix::adjoint() const {
  BlockMatrix r(n_, q_);
  for (int i = 0; i <= q_; ++i)
    for (int j = 0; j <= q_; ++j) r.set(i, j, (*this)(j, i).adjoint());
  return r;
}

BlockMatrix BlockMatrix::normalized(const RewriteOptions& opts, RewriteStats* stats) const {
  BlockMatrix r(n_, q_);
  std::size_t steps = 0;
  for (int i = 0; i <= q_; ++i)
    for (int j = 0; j <= q_; ++j) {
      RewriteStats s;
      RewriteOptions o = opts;
      if (steps > o.budget) throw BudgetExceeded(steps);
      o.budget -= steps;
      r.set(i, j, normalize((*this)(i, j), o, &s));
      steps += s.steps;
    }
  if (stats) stats->steps = steps;
  return r;
}

bool BlockMatrix::is_zero() const {
  for (const auto& b : blocks_)
    if (!b.is_zero()) return false;
  return true;
}

std::string BlockMatrix::to_string() const {
  std::string s = "[";
  for (int i = 0; i <= q_; ++i) {
    s += i ? ", [" : "[";
    for (int j = 0; j <= q_; ++j) {
      if (j) s += ", ";
      s += (*this)(i, j).to_string();
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace drstokes
