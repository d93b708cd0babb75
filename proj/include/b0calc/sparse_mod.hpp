#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace b0calc {

// Incremental sparse elimination over Z/p^L.  Rows arrive one at a time;
// whenever a row has a unit coefficient the corresponding column is
// eliminated (expressed in the remaining columns).  A row with no unit
// coefficient has every entry divisible by p, so it is divided by p and
// handed to a child eliminator over Z/p^(L-1); at L = 1 such a row is
// identically zero.  This keeps the state bounded by L expressions per
// column no matter how many rows stream through.  After finish() the
// picture is: free columns, an expression over free columns for every
// eliminated column, and residual relation rows over free columns
// (the child levels' pivot equations scaled back up by powers of p).
class SparseElimModP {
 public:
  using Expr = std::vector<std::pair<int, std::uint64_t>>;  // sorted by col

  SparseElimModP(std::uint64_t p, int L, int ncols);

  std::uint64_t modulus() const { return mod_; }

  void add_row(const Expr& row);
  void finish();

  const std::vector<int>& free_cols() const { return free_; }
  // Expression of a column over the free columns (valid after finish()).
  Expr resolve(int col);
  const std::vector<Expr>& residual_rows() const { return residual_; }

 private:
  std::uint64_t p_, mod_;
  int levels_;
  std::vector<std::optional<Expr>> expr_;  // per eliminated column
  // memoization: an expression is known to be fully expanded only if its
  // stamp matches the current pivot version (new pivots invalidate all)
  std::vector<std::uint64_t> clean_;
  std::uint64_t version_ = 1;
  std::vector<Expr> residual_;
  std::vector<int> free_;
  std::unique_ptr<SparseElimModP> next_;  // handles rows divisible by p
  bool finished_ = false;

  // dense scratches with touched lists (one for row assembly, one for
  // expression compression, which can run in the middle of a row)
  std::vector<std::uint64_t> acc_, acc2_;
  std::vector<int> touched_, touched2_;

  void accumulate(int col, std::uint64_t coeff);
  Expr drain_scratch();
  void compress(int col);
  std::uint64_t unit_inverse(std::uint64_t a) const;
  // pivot equations as relation rows mod p^L (valid after finish())
  std::vector<Expr> pivot_rows() const;
};

}  // namespace b0calc
