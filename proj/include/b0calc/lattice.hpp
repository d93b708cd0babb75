#pragma once

#include <b0calc/basics.hpp>

#include <optional>
#include <string>
#include <vector>

namespace b0calc {

// Dense row-major matrix of arbitrary-precision integers.  Rows are
// relations (or lattice generators), columns index abelian-group
// generators throughout this module.
struct Mat {
  size_t r = 0, c = 0;
  std::vector<Int> a;

  Mat() = default;
  Mat(size_t rows, size_t cols) : r(rows), c(cols), a(rows * cols) {}

  Int& at(size_t i, size_t j) { return a[i * c + j]; }
  const Int& at(size_t i, size_t j) const { return a[i * c + j]; }

  static Mat identity(size_t n);
  static Mat from_rows(const std::vector<std::vector<Int>>& rows, size_t cols);

  void append_row(const std::vector<Int>& row);
  std::vector<Int> row(size_t i) const;
  bool operator==(const Mat&) const = default;
};

Mat mat_mul(const Mat& A, const Mat& B);
Mat stack(const Mat& A, const Mat& B);
Int det(const Mat& A);  // small square matrices only (transform checks)

// Row Hermite form: U*A = H with U unimodular, H in row-echelon form with
// positive pivots and entries above each pivot reduced.
struct HnfResult {
  Mat h, u;
  size_t rank = 0;
};
HnfResult hnf(const Mat& A);

// Smith form: U*A*V = D, D diagonal with d1 | d2 | ... ; diag holds the
// min(r,c) diagonal entries.
struct SnfResult {
  Mat u, v;
  std::vector<Int> diag;
  size_t rank = 0;  // number of nonzero diagonal entries
};
SnfResult snf(const Mat& A);

// Torsion coefficients (> 1) of the cokernel Z^cols / rowspace(A), plus
// the free rank.
struct CokernelInvariants {
  std::vector<Int> torsion;
  size_t free_rank = 0;
  bool trivial() const { return torsion.empty() && free_rank == 0; }
};
CokernelInvariants cokernel_invariants(const Mat& A);

// Finite variant: throws InfiniteGroup when the cokernel has free rank.
std::vector<Int> finite_invariants(const Mat& A);

// x with x*A = b, if b lies in the row lattice of A.
std::optional<std::vector<Int>> solve_left(const Mat& A,
                                           const std::vector<Int>& b);

// Basis of { v : v*A = 0 }.
Mat left_kernel(const Mat& A);

// Rows spanning { v : v*C in rowspace(L) }; C is n x t, L is r x t.
Mat preimage_lattice(const Mat& C, const Mat& L);

// Rows spanning rowspace(A) ∩ rowspace(B).
Mat lattice_intersection(const Mat& A, const Mat& B);

bool lattice_contains(const Mat& A, const std::vector<Int>& b);
bool same_lattice(const Mat& A, const Mat& B);

// Index [Z^cols : rowspace(A)]; throws InfiniteGroup if not full rank.
Int lattice_index(const Mat& A);

// Invariants of (<num> + <R>) / (<den> + <R>).  Throws NotASubgroup when a
// den row is outside <num>+<R>, InfiniteGroup when the quotient is not
// finite.
std::vector<Int> subgroup_quotient(const Mat& R, const Mat& num,
                                   const Mat& den);

// Hermite basis of a growing lattice; add() reports whether a row was
// outside the current span (and absorbs it if so).
class IncrementalLattice {
 public:
  explicit IncrementalLattice(size_t cols) : basis_(0, cols) {}
  explicit IncrementalLattice(const Mat& initial);

  // Reduces v against the basis; the remainder is zero iff v is in the
  // lattice.
  std::vector<Int> reduce(std::vector<Int> v) const;
  bool contains(const std::vector<Int>& v) const;
  bool add(const std::vector<Int>& row);

  const Mat& basis() const { return basis_; }

 private:
  Mat basis_;  // HNF, rank rows only
};

// Finitely generated abelian group with named generators.
struct AbelianPresentation {
  std::vector<std::string> labels;
  Mat rel;  // rows = relations over the labeled generators

  size_t ngens() const { return labels.size(); }
};

// Generators (in source coordinates) of the kernel of the induced map of
// presented groups.  f maps source generators to target coordinates; every
// source relation must be carried into the target relation lattice.
Mat kernel_of_map(const Mat& f, const AbelianPresentation& source,
                  const AbelianPresentation& target);

// Debug dump: one relation per line, "label: c1*g1 + c2*g2 + ...".
std::string dump_relations(const Mat& A, const std::vector<std::string>& gens,
                           const std::vector<std::string>& row_labels = {});

// Invariants of the direct sum of two groups given by torsion lists.
std::vector<Int> merge_invariants(const std::vector<Int>& x,
                                  const std::vector<Int>& y);

}  // namespace b0calc
