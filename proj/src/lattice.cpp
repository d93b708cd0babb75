#include <b0calc/lattice.hpp>

#include <algorithm>
#include <cassert>
#include <sstream>

namespace b0calc {

Mat Mat::identity(size_t n) {
  Mat m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Int>>& rows, size_t cols) {
  Mat m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    assert(rows[i].size() == cols);
    for (size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

void Mat::append_row(const std::vector<Int>& row) {
  assert(row.size() == c || (r == 0 && c == 0));
  if (r == 0 && c == 0) c = row.size();
  a.insert(a.end(), row.begin(), row.end());
  ++r;
}

std::vector<Int> Mat::row(size_t i) const {
  return std::vector<Int>(a.begin() + i * c, a.begin() + (i + 1) * c);
}

Mat mat_mul(const Mat& A, const Mat& B) {
  assert(A.c == B.r);
  Mat C(A.r, B.c);
  for (size_t i = 0; i < A.r; ++i)
    for (size_t k = 0; k < A.c; ++k) {
      const Int& aik = A.at(i, k);
      if (aik == 0) continue;
      for (size_t j = 0; j < B.c; ++j) C.at(i, j) += aik * B.at(k, j);
    }
  return C;
}

Mat stack(const Mat& A, const Mat& B) {
  assert(A.c == B.c || A.r == 0 || B.r == 0);
  size_t cols = A.r ? A.c : B.c;
  Mat C(A.r + B.r, cols);
  std::copy(A.a.begin(), A.a.end(), C.a.begin());
  std::copy(B.a.begin(), B.a.end(), C.a.begin() + A.a.size());
  return C;
}

Int det(const Mat& A) {
  assert(A.r == A.c);
  Mat M = A;
  size_t n = M.r;
  Int sign = 1;
  // fraction-free Gaussian elimination (Bareiss)
  Int prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (M.at(k, k) == 0) {
      size_t s = k + 1;
      while (s < n && M.at(s, k) == 0) ++s;
      if (s == n) return 0;
      for (size_t j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(s, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Int v = M.at(i, j) * M.at(k, k) - M.at(i, k) * M.at(k, j);
        M.at(i, j) = v / prev;
      }
    prev = M.at(k, k);
  }
  return n ? sign * M.at(n - 1, n - 1) : Int(1);
}

namespace {

void swap_rows(Mat& m, size_t i, size_t j) {
  if (i == j) return;
  for (size_t k = 0; k < m.c; ++k) std::swap(m.at(i, k), m.at(j, k));
}

// row[i] -= q * row[j]
void row_axpy(Mat& m, size_t i, size_t j, const Int& q) {
  if (q == 0) return;
  for (size_t k = 0; k < m.c; ++k) m.at(i, k) -= q * m.at(j, k);
}

}  // namespace

HnfResult hnf(const Mat& A) {
  HnfResult res;
  res.h = A;
  res.u = Mat::identity(A.r);
  Mat& H = res.h;
  Mat& U = res.u;
  size_t rank = 0;
  for (size_t col = 0; col < A.c && rank < A.r; ++col) {
    // Euclid on the entries of this column below `rank`
    while (true) {
      size_t best = A.r;
      for (size_t i = rank; i < A.r; ++i)
        if (H.at(i, col) != 0 &&
            (best == A.r || abs(H.at(i, col)) < abs(H.at(best, col))))
          best = i;
      if (best == A.r) break;  // column clear
      swap_rows(H, rank, best);
      swap_rows(U, rank, best);
      bool clear = true;
      for (size_t i = rank + 1; i < A.r; ++i) {
        if (H.at(i, col) == 0) continue;
        Int q = floordiv(H.at(i, col), H.at(rank, col));
        row_axpy(H, i, rank, q);
        row_axpy(U, i, rank, q);
        if (H.at(i, col) != 0) clear = false;
      }
      if (clear) break;
    }
    if (rank < A.r && H.at(rank, col) != 0) {
      if (H.at(rank, col) < 0) {
        for (size_t k = 0; k < A.c; ++k) H.at(rank, k) = -H.at(rank, k);
        for (size_t k = 0; k < A.r; ++k) U.at(rank, k) = -U.at(rank, k);
      }
      for (size_t i = 0; i < rank; ++i) {
        Int q = floordiv(H.at(i, col), H.at(rank, col));
        row_axpy(H, i, rank, q);
        row_axpy(U, i, rank, q);
      }
      ++rank;
    }
  }
  res.rank = rank;
  return res;
}

SnfResult snf(const Mat& A) {
  SnfResult res;
  Mat M = A;
  res.u = Mat::identity(A.r);
  res.v = Mat::identity(A.c);
  size_t n = std::min(A.r, A.c);
  size_t t = 0;
  auto col_axpy = [&](Mat& m, size_t i, size_t j, const Int& q) {
    if (q == 0) return;
    for (size_t k = 0; k < m.r; ++k) m.at(k, i) -= q * m.at(k, j);
  };
  auto swap_cols = [&](Mat& m, size_t i, size_t j) {
    if (i == j) return;
    for (size_t k = 0; k < m.r; ++k) std::swap(m.at(k, i), m.at(k, j));
  };
  for (; t < n; ++t) {
    bool done = false;
    while (!done) {
      // bring a pivot of minimal magnitude in the trailing block to (t, t);
      // every later iteration either finishes or shrinks this minimum
      size_t pi = A.r, pj = A.c;
      for (size_t i = t; i < A.r; ++i)
        for (size_t j = t; j < A.c; ++j)
          if (M.at(i, j) != 0 &&
              (pi == A.r || abs(M.at(i, j)) < abs(M.at(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == A.r) {
        res.rank = t;
        for (size_t i = 0; i < n; ++i)
          res.diag.push_back(i < t ? M.at(i, i) : 0);
        return res;
      }
      swap_rows(M, t, pi);
      swap_rows(res.u, t, pi);
      swap_cols(M, t, pj);
      swap_cols(res.v, t, pj);
      for (size_t i = t + 1; i < A.r; ++i) {
        Int q = floordiv(M.at(i, t), M.at(t, t));
        row_axpy(M, i, t, q);
        row_axpy(res.u, i, t, q);
      }
      for (size_t j = t + 1; j < A.c; ++j) {
        Int q = floordiv(M.at(t, j), M.at(t, t));
        col_axpy(M, j, t, q);
        col_axpy(res.v, j, t, q);
      }
      bool clear = true;
      for (size_t i = t + 1; i < A.r && clear; ++i)
        if (M.at(i, t) != 0) clear = false;
      for (size_t j = t + 1; j < A.c && clear; ++j)
        if (M.at(t, j) != 0) clear = false;
      if (!clear) continue;  // leftover remainders are smaller than the pivot
      // divisibility fix: fold a non-multiple into the pivot's row
      done = true;
      for (size_t i = t + 1; i < A.r && done; ++i)
        for (size_t j = t + 1; j < A.c && done; ++j)
          if (M.at(i, j) % M.at(t, t) != 0) {
            row_axpy(M, t, i, Int(-1));
            row_axpy(res.u, t, i, Int(-1));
            done = false;
          }
    }
    if (M.at(t, t) < 0) {
      for (size_t j = 0; j < A.c; ++j) M.at(t, j) = -M.at(t, j);
      for (size_t j = 0; j < A.r; ++j) res.u.at(t, j) = -res.u.at(t, j);
    }
  }
  res.rank = t;
  for (size_t i = 0; i < n; ++i) res.diag.push_back(i < t ? M.at(i, i) : 0);
  return res;
}

CokernelInvariants cokernel_invariants(const Mat& A) {
  CokernelInvariants inv;
  if (A.r == 0) {
    inv.free_rank = A.c;
    return inv;
  }
  SnfResult s = snf(A);
  for (size_t i = 0; i < s.rank; ++i)
    if (s.diag[i] > 1) inv.torsion.push_back(s.diag[i]);
  inv.free_rank = A.c - s.rank;
  return inv;
}

std::vector<Int> finite_invariants(const Mat& A) {
  CokernelInvariants inv = cokernel_invariants(A);
  if (inv.free_rank)
    throw InfiniteGroup("presented group has free rank " +
                        std::to_string(inv.free_rank));
  return inv.torsion;
}

std::optional<std::vector<Int>> solve_left(const Mat& A,
                                           const std::vector<Int>& b) {
  assert(b.size() == A.c);
  HnfResult h = hnf(A);
  std::vector<Int> rem = b;
  std::vector<Int> coef(A.r);
  for (size_t i = 0; i < h.rank; ++i) {
    size_t piv = 0;
    while (piv < A.c && h.h.at(i, piv) == 0) ++piv;
    if (rem[piv] == 0) continue;
    if (rem[piv] % h.h.at(i, piv) != 0) return std::nullopt;
    Int q = rem[piv] / h.h.at(i, piv);
    for (size_t k = 0; k < A.c; ++k) rem[k] -= q * h.h.at(i, k);
    for (size_t k = 0; k < A.r; ++k) coef[k] += q * h.u.at(i, k);
  }
  for (const Int& v : rem)
    if (v != 0) return std::nullopt;
  return coef;
}

Mat left_kernel(const Mat& A) {
  HnfResult h = hnf(A);
  Mat K(A.r - h.rank, A.r);
  for (size_t i = h.rank; i < A.r; ++i)
    for (size_t j = 0; j < A.r; ++j) K.at(i - h.rank, j) = h.u.at(i, j);
  return K;
}

Mat preimage_lattice(const Mat& C, const Mat& L) {
  assert(C.c == L.c || L.r == 0);
  Mat S = stack(C, L);
  Mat K = left_kernel(S);
  Mat P(K.r, C.r);
  for (size_t i = 0; i < K.r; ++i)
    for (size_t j = 0; j < C.r; ++j) P.at(i, j) = K.at(i, j);
  HnfResult h = hnf(P);
  Mat out(h.rank, C.r);
  for (size_t i = 0; i < h.rank; ++i)
    for (size_t j = 0; j < C.r; ++j) out.at(i, j) = h.h.at(i, j);
  return out;
}

Mat lattice_intersection(const Mat& A, const Mat& B) {
  Mat S = stack(A, B);
  Mat K = left_kernel(S);
  Mat out(0, A.c);
  for (size_t i = 0; i < K.r; ++i) {
    std::vector<Int> v(A.c);
    for (size_t j = 0; j < A.r; ++j)
      for (size_t k = 0; k < A.c; ++k) v[k] += K.at(i, j) * A.at(j, k);
    out.append_row(v);
  }
  HnfResult h = hnf(out);
  Mat res(h.rank, A.c);
  for (size_t i = 0; i < h.rank; ++i)
    for (size_t j = 0; j < A.c; ++j) res.at(i, j) = h.h.at(i, j);
  return res;
}

bool lattice_contains(const Mat& A, const std::vector<Int>& b) {
  return solve_left(A, b).has_value();
}

bool same_lattice(const Mat& A, const Mat& B) {
  for (size_t i = 0; i < B.r; ++i)
    if (!lattice_contains(A, B.row(i))) return false;
  for (size_t i = 0; i < A.r; ++i)
    if (!lattice_contains(B, A.row(i))) return false;
  return true;
}

Int lattice_index(const Mat& A) {
  HnfResult h = hnf(A);
  if (h.rank < A.c) throw InfiniteGroup("lattice is not of full rank");
  Int idx = 1;
  size_t col = 0;
  for (size_t i = 0; i < h.rank; ++i) {
    while (h.h.at(i, col) == 0) ++col;
    idx *= h.h.at(i, col);
  }
  return idx;
}

std::vector<Int> subgroup_quotient(const Mat& R, const Mat& num,
                                   const Mat& den) {
  size_t n = num.r ? num.c : R.c;
  Mat L1 = stack(num, R);
  HnfResult h1 = hnf(L1);
  Mat B(h1.rank, n);
  for (size_t i = 0; i < h1.rank; ++i)
    for (size_t j = 0; j < n; ++j) B.at(i, j) = h1.h.at(i, j);
  Mat L2 = stack(den, R);
  Mat X(0, h1.rank);
  for (size_t i = 0; i < L2.r; ++i) {
    auto x = solve_left(B, L2.row(i));
    if (!x) throw NotASubgroup("denominator generator outside numerator span");
    X.append_row(*x);
  }
  if (X.r == 0) X = Mat(0, h1.rank);
  return finite_invariants(X);
}

Mat kernel_of_map(const Mat& f, const AbelianPresentation& source,
                  const AbelianPresentation& target) {
  assert(f.r == source.ngens() && f.c == target.ngens());
  for (size_t i = 0; i < source.rel.r; ++i) {
    std::vector<Int> img(target.ngens());
    for (size_t j = 0; j < f.r; ++j)
      for (size_t k = 0; k < f.c; ++k) img[k] += source.rel.at(i, j) * f.at(j, k);
    if (!lattice_contains(target.rel, img))
      throw NotWellDefined("source relation does not map into target lattice");
  }
  return preimage_lattice(f, target.rel);
}

IncrementalLattice::IncrementalLattice(const Mat& initial)
    : basis_(0, initial.c) {
  HnfResult h = hnf(initial);
  for (size_t i = 0; i < h.rank; ++i) basis_.append_row(h.h.row(i));
}

std::vector<Int> IncrementalLattice::reduce(std::vector<Int> v) const {
  for (size_t i = 0; i < basis_.r; ++i) {
    size_t p = 0;
    while (p < basis_.c && basis_.at(i, p) == 0) ++p;
    if (p == basis_.c || v[p] == 0) continue;
    Int q = floordiv(v[p], basis_.at(i, p));
    if (q == 0) continue;
    for (size_t j = p; j < basis_.c; ++j) v[j] -= q * basis_.at(i, j);
  }
  return v;
}

bool IncrementalLattice::contains(const std::vector<Int>& v) const {
  for (const Int& c : reduce(v))
    if (c != 0) return false;
  return true;
}

bool IncrementalLattice::add(const std::vector<Int>& row) {
  if (contains(row)) return false;
  Mat m = basis_;
  m.append_row(row);
  HnfResult h = hnf(m);
  Mat b(0, basis_.c);
  for (size_t i = 0; i < h.rank; ++i) b.append_row(h.h.row(i));
  basis_ = std::move(b);
  return true;
}

std::string dump_relations(const Mat& A, const std::vector<std::string>& gens,
                           const std::vector<std::string>& row_labels) {
  std::ostringstream os;
  for (size_t i = 0; i < A.r; ++i) {
    os << (i < row_labels.size() ? row_labels[i] : "r" + std::to_string(i))
       << ":";
    bool any = false;
    for (size_t j = 0; j < A.c; ++j) {
      if (A.at(i, j) == 0) continue;
      os << (any ? " + " : " ") << A.at(i, j) << "*" << gens[j];
      any = true;
    }
    if (!any) os << " 0";
    os << "\n";
  }
  return os.str();
}

std::vector<Int> merge_invariants(const std::vector<Int>& x,
                                  const std::vector<Int>& y) {
  size_t n = x.size() + y.size();
  Mat D(n, n);
  for (size_t i = 0; i < x.size(); ++i) D.at(i, i) = x[i];
  for (size_t i = 0; i < y.size(); ++i)
    D.at(x.size() + i, x.size() + i) = y[i];
  return finite_invariants(D);
}

}  // namespace b0calc
