#include <b0calc/sparse_mod.hpp>

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace b0calc {

SparseElimModP::SparseElimModP(std::uint64_t p, int L, int ncols)
    : p_(p), mod_(1), levels_(L) {
  for (int i = 0; i < L; ++i) {
    mod_ *= p;
    assert(mod_ < (std::uint64_t(1) << 31));
  }
  expr_.resize(ncols);
  clean_.assign(ncols, 0);
  acc_.assign(ncols, 0);
  acc2_.assign(ncols, 0);
}

std::uint64_t SparseElimModP::unit_inverse(std::uint64_t a) const {
  // extended Euclid; a must be a unit mod p^L
  long long t = 0, nt = 1;
  long long r = (long long)mod_, nr = (long long)(a % mod_);
  while (nr != 0) {
    long long q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  assert(r == 1);
  return (std::uint64_t)((t % (long long)mod_ + (long long)mod_) %
                         (long long)mod_);
}

void SparseElimModP::accumulate(int col, std::uint64_t coeff) {
  coeff %= mod_;
  if (coeff == 0) return;
  if (!expr_[col]) {
    if (acc_[col] == 0) touched_.push_back(col);
    acc_[col] = (acc_[col] + coeff) % mod_;
    return;
  }
  compress(col);
  for (const auto& [c, k] : *expr_[col]) {
    std::uint64_t v = (coeff * k) % mod_;
    if (v == 0) continue;
    if (acc_[c] == 0) touched_.push_back(c);
    acc_[c] = (acc_[c] + v) % mod_;
  }
}

SparseElimModP::Expr SparseElimModP::drain_scratch() {
  Expr out;
  for (int c : touched_) {
    if (acc_[c] != 0) out.emplace_back(c, acc_[c]);
    acc_[c] = 0;
  }
  touched_.clear();
  std::sort(out.begin(), out.end());
  return out;
}

void SparseElimModP::compress(int col) {
  if (clean_[col] == version_) return;
  // iterative post-order over the substitution chain
  std::vector<std::pair<int, size_t>> stack{{col, 0}};
  while (!stack.empty()) {
    auto& [c, pos] = stack.back();
    const Expr& e = *expr_[c];
    bool descended = false;
    while (pos < e.size()) {
      int dep = e[pos].first;
      ++pos;
      if (expr_[dep] && clean_[dep] != version_) {
        stack.push_back({dep, 0});
        descended = true;
        break;
      }
    }
    if (descended) continue;
    // all dependencies are clean or free: expand in one pass
    for (const auto& [dep, k] : e) {
      if (!expr_[dep]) {
        if (acc2_[dep] == 0) touched2_.push_back(dep);
        acc2_[dep] = (acc2_[dep] + k) % mod_;
      } else {
        for (const auto& [c2, k2] : *expr_[dep]) {
          std::uint64_t v = (k * k2) % mod_;
          if (v == 0) continue;
          if (acc2_[c2] == 0) touched2_.push_back(c2);
          acc2_[c2] = (acc2_[c2] + v) % mod_;
        }
      }
    }
    Expr out;
    for (int c2 : touched2_) {
      if (acc2_[c2] != 0) out.emplace_back(c2, acc2_[c2]);
      acc2_[c2] = 0;
    }
    touched2_.clear();
    std::sort(out.begin(), out.end());
    expr_[c] = std::move(out);
    clean_[c] = version_;
    stack.pop_back();
  }
}

void SparseElimModP::add_row(const Expr& row) {
  assert(!finished_);
  for (const auto& [c, k] : row) accumulate(c, k);
  Expr reduced = drain_scratch();
  if (reduced.empty()) return;
  // pick a unit pivot if one exists
  size_t pivot = reduced.size();
  for (size_t i = 0; i < reduced.size(); ++i)
    if (reduced[i].second % p_ != 0) {
      pivot = i;
      break;
    }
  if (pivot == reduced.size()) {
    if (levels_ == 1) return;  // all entries divisible by p, i.e. zero
    if (!next_)
      next_ = std::make_unique<SparseElimModP>(p_, levels_ - 1,
                                               (int)expr_.size());
    Expr down;
    down.reserve(reduced.size());
    for (const auto& [c, k] : reduced) down.emplace_back(c, k / p_);
    next_->add_row(down);
    return;
  }
  int pc = reduced[pivot].first;
  std::uint64_t inv = unit_inverse(mod_ - reduced[pivot].second % mod_);
  Expr e;
  for (size_t i = 0; i < reduced.size(); ++i) {
    if (i == pivot) continue;
    std::uint64_t v = (reduced[i].second * inv) % mod_;
    if (v != 0) e.emplace_back(reduced[i].first, v);
  }
  expr_[pc] = std::move(e);
  ++version_;
}

std::vector<SparseElimModP::Expr> SparseElimModP::pivot_rows() const {
  std::vector<Expr> rows;
  for (int c = 0; c < (int)expr_.size(); ++c) {
    if (!expr_[c]) continue;
    Expr row{{c, 1}};
    for (const auto& [c2, k] : *expr_[c])
      row.emplace_back(c2, mod_ - k);
    std::sort(row.begin(), row.end());
    rows.push_back(std::move(row));
  }
  return rows;
}

void SparseElimModP::finish() {
  if (finished_) return;
  finished_ = true;
  for (int c = 0; c < (int)expr_.size(); ++c)
    if (expr_[c])
      compress(c);
    else
      free_.push_back(c);
  if (!next_) return;
  next_->finish();
  // turn the child levels' pivot equations back into relation rows at
  // this modulus (scaled by p) and express them over our free columns
  std::vector<Expr> rows = next_->pivot_rows();
  for (Expr& row : rows)
    for (auto& [c, k] : row) k = (k * p_) % mod_;
  for (const Expr& sub : next_->residual_rows()) {
    Expr row;
    row.reserve(sub.size());
    for (const auto& [c, k] : sub) row.emplace_back(c, (k * p_) % mod_);
    rows.push_back(std::move(row));
  }
  for (const Expr& row : rows) {
    for (const auto& [c, k] : row) accumulate(c, k);
    Expr reduced = drain_scratch();
    if (!reduced.empty()) residual_.push_back(std::move(reduced));
  }
}

SparseElimModP::Expr SparseElimModP::resolve(int col) {
  assert(finished_);
  if (!expr_[col]) return {{col, 1}};
  compress(col);
  return *expr_[col];
}

}  // namespace b0calc
