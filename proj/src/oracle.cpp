#include <b0calc/oracle.hpp>

#include <b0calc/lattice.hpp>
#include <b0calc/sparse_mod.hpp>

#include <cassert>

namespace b0calc {

namespace {

// Enumeration and lookup tables for all elements of a small group.
struct ElementTable {
  const PcPresentation& g;
  size_t n = 0;
  std::vector<Element> elems;
  std::vector<long long> stride;
  std::vector<int> prod, conj, inv;  // n*n, n*n, n

  explicit ElementTable(const PcPresentation& gr) : g(gr) {
    stride.resize(g.n());
    long long s = 1;
    for (size_t i = 0; i < g.n(); ++i) {
      stride[i] = s;
      s *= g.orders[i];
    }
    n = (size_t)s;
    elems.reserve(n);
    Element x = g.identity();
    for (size_t k = 0; k < n; ++k) {
      elems.push_back(x);
      for (size_t i = 0; i < g.n(); ++i) {
        if (++x.e[i] < g.orders[i]) break;
        x.e[i] = 0;
      }
    }
    prod.resize(n * n);
    conj.resize(n * n);
    inv.resize(n);
    for (size_t a = 0; a < n; ++a) inv[a] = index(g.inverse(elems[a]));
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        prod[a * n + b] = index(g.multiply(elems[a], elems[b]));
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        conj[a * n + b] = prod[(size_t)inv[b] * n + prod[a * n + b]];
  }

  int index(const Element& x) const {
    long long k = 0;
    for (size_t i = 0; i < g.n(); ++i) k += x.e[i] * stride[i];
    return (int)k;
  }
};

struct Run {
  std::vector<Int> m, b0;
  size_t free_cols = 0;

  bool operator==(const Run&) const = default;
};

Run run_once(const PcPresentation& g, const ElementTable& tab, int L) {
  size_t n = tab.n;
  SparseElimModP elim((std::uint64_t)g.prime, L, (int)(n * n));
  std::uint64_t m1 = elim.modulus() - 1;  // -1 mod p^L

  for (size_t x = 0; x < n; ++x)
    elim.add_row({{(int)(x * n + x), 1}});
  SparseElimModP::Expr row;
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      int xy = tab.prod[x * n + y];
      for (size_t z = 0; z < n; ++z) {
        // (xy)^z = (x^y ^ z^y)(y ^ z)
        int xc = tab.conj[x * n + y], zc = tab.conj[z * n + y];
        row = {{(int)((size_t)xy * n + z), 1},
               {(int)((size_t)xc * n + zc), m1},
               {(int)(y * n + z), m1}};
        elim.add_row(row);
        // x ^ (yz) = (x ^ z)(x^z ^ y^z) with the same (x, y, z) names
        int yz = tab.prod[y * n + z];
        int xz = tab.conj[x * n + z], yc = tab.conj[y * n + z];
        row = {{(int)(x * n + yz), 1},
               {(int)(x * n + z), m1},
               {(int)((size_t)xz * n + yc), m1}};
        elim.add_row(row);
      }
    }
  elim.finish();

  const auto& free = elim.free_cols();
  size_t nf = free.size();
  std::vector<int> pos(n * n, -1);
  for (size_t i = 0; i < nf; ++i) pos[free[i]] = (int)i;

  // relation lattice over the free columns: residual rows plus p^L
  Mat rf(0, nf);
  {
    Mat scale(nf, nf);
    for (size_t i = 0; i < nf; ++i) scale.at(i, i) = Int(elim.modulus());
    IncrementalLattice dedup(scale);
    rf = dedup.basis();
    for (const auto& r : elim.residual_rows()) {
      std::vector<Int> v(nf);
      for (const auto& [c, k] : r) v[pos[c]] = Int(k);
      if (dedup.add(v)) rf.append_row(v);
    }
  }

  // kernel of the commutator map
  size_t t = g.zsize();
  Mat cf(nf, t);
  for (size_t i = 0; i < nf; ++i) {
    size_t x = free[i] / n, y = free[i] % n;
    Element c = g.commutator(tab.elems[x], tab.elems[y]);
    for (size_t l = 0; l < t; ++l) cf.at(i, l) = c.e[g.noncentral + l];
  }
  Mat kernel = preimage_lattice(cf, g.z_lattice());

  Run res;
  res.free_cols = nf;
  res.m = subgroup_quotient(rf, kernel, Mat(0, nf));

  // commuting pairs generate M0
  Mat m0(0, nf);
  IncrementalLattice growth(rf);
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      if (tab.prod[x * n + y] != tab.prod[y * n + x]) continue;
      std::vector<Int> v(nf);
      for (const auto& [c, k] : elim.resolve((int)(x * n + y)))
        v[pos[c]] = Int(k);
      if (growth.add(v)) m0.append_row(v);
    }
  res.b0 = subgroup_quotient(rf, kernel, m0);
  return res;
}

int default_exponent(const PcPresentation& g) {
  int emax = 1;
  for (long long q : g.orders) {
    int e = 0;
    while (q > 1) {
      q /= g.prime;
      ++e;
    }
    emax = std::max(emax, e);
  }
  return 2 * emax + 1;
}

}  // namespace

OracleResult oracle_invariants(const PcPresentation& g, Int cap, int L) {
  g.validate_or_throw();
  if (g.group_order() > cap)
    throw CapExceeded("group order exceeds the oracle cap");
  ElementTable tab(g);
  int L0 = L > 0 ? L : default_exponent(g);
  Run r1 = run_once(g, tab, L0);
  Run r2 = run_once(g, tab, L0 + 1);
  if (r1.m != r2.m || r1.b0 != r2.b0) {
    Run r3 = run_once(g, tab, L0 + 2);
    if (r2.m != r3.m || r2.b0 != r3.b0)
      throw UnstableModulus("oracle invariants keep changing with the "
                            "working modulus");
    r2 = std::move(r3);
    L0 += 1;
  }
  OracleResult res;
  res.m = std::move(r2.m);
  res.b0 = std::move(r2.b0);
  res.modulus_exponent = L0;
  res.free_cols = r2.free_cols;
  return res;
}

std::vector<Int> b0_oracle(const PcPresentation& g, Int cap, int L) {
  return oracle_invariants(g, cap, L).b0;
}

std::vector<Int> m_oracle(const PcPresentation& g, Int cap, int L) {
  return oracle_invariants(g, cap, L).m;
}

bool stability_check(const PcPresentation& g, int L, Int cap) {
  g.validate_or_throw();
  if (g.group_order() > cap)
    throw CapExceeded("group order exceeds the oracle cap");
  ElementTable tab(g);
  Run r1 = run_once(g, tab, L);
  Run r2 = run_once(g, tab, L + 1);
  return r1.m == r2.m && r1.b0 == r2.b0;
}

}  // namespace b0calc
