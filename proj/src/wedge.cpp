#include <b0calc/wedge.hpp>

#include <sstream>

namespace b0calc {

namespace {

using Factors = std::vector<std::pair<int, long long>>;

Factors factors_of(const Element& x) {
  Factors f;
  for (size_t i = 0; i < x.e.size(); ++i)
    if (x.e[i] != 0) f.push_back({(int)i, x.e[i]});
  return f;
}

// Append the inverse of a z-block word (given as the z-vector of the
// relation value) to a factor list.
void append_z_inverse(Factors& f, const std::vector<long long>& zvec,
                      size_t noncentral) {
  for (size_t l = zvec.size(); l-- > 0;)
    if (zvec[l] != 0) f.push_back({(int)(noncentral + l), -zvec[l]});
}

}  // namespace

WedgeSystem::WedgeSystem(PcPresentation g) : g_(std::move(g)) {
  g_.validate_or_throw();
  size_t n = g_.n();
  nb_ = n * (n - 1) / 2;

  kappa_ = Mat(nb_, g_.zsize());
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      auto cv = g_.comm_vec(i, j);
      for (size_t l = 0; l < cv.size(); ++l)
        kappa_.at(basis_index(i, j), l) = cv[l];
    }

  // Relation rows: every defining relator of the group, wedged with every
  // generator on either side.
  rel_ = Mat(0, nb_);
  for (size_t i = 0; i < n; ++i) {
    Factors pw{{(int)i, g_.orders[i]}};
    append_z_inverse(pw, g_.power_z[i], g_.noncentral);
    add_relation_rows(pw);
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      Factors cw{{(int)j, -1}, {(int)i, -1}, {(int)j, 1}, {(int)i, 1}};
      append_z_inverse(cw, g_.comm_vec(j, i), g_.noncentral);
      add_relation_rows(cw);
    }
}

size_t WedgeSystem::basis_index(size_t i, size_t j) const {
  // pairs (i, j), i < j, ordered by i then j
  size_t n = g_.n();
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<size_t, size_t> WedgeSystem::basis_pair(size_t k) const {
  size_t n = g_.n();
  for (size_t i = 0; i < n; ++i) {
    size_t block = n - i - 1;
    if (k < block) return {i, i + 1 + k};
    k -= block;
  }
  throw BadIndex("wedge basis index out of range");
}

std::string WedgeSystem::basis_label(size_t k) const {
  auto [i, j] = basis_pair(k);
  return g_.gens[i] + "^" + g_.gens[j];
}

namespace {

// Signed accumulation into the i<j basis: w(j,i) = -w(i,j), w(i,i) = 0.
struct Accum {
  const WedgeSystem& w;
  std::vector<Int>& out;
  void add(size_t i, size_t j, const Int& c) {
    if (i == j || c == 0) return;
    if (i < j)
      out[w.basis_index(i, j)] += c;
    else
      out[w.basis_index(j, i)] -= c;
  }
};

}  // namespace

// Expansion of (prod_k g_{i_k}^{a_k}) ^ (prod_j g_{i_j}^{b_j}) over the
// basis, for arbitrary factor lists.  Derived from the standard class-3
// commutator identities for [x, y-bar] in the wrapping group:
//   x ^ y   =  sum a_k b_j w(k, j)                       (bilinear core)
//            + sum b_j C(a_k,2) T(k, j -> k)             (power, left)
//            + sum a_k C(b_j,2) T(k, j -> j)             (power, right)
//            + sum_{k<k'} b_j a_k a_{k'} T(k, j -> k')   (left cross)
//            + sum_{j<j'} a_k b_j b_{j'} T(k, j -> j')   (right cross)
// where T(i, j -> m) rewrites [[g_i, g_j], g_m-bar] over the basis via the
// z-block value of [g_i, g_j].
static std::vector<Int> expand_factors(const WedgeSystem& ws,
                                       const PcPresentation& g,
                                       const std::vector<std::pair<int, long long>>& xs,
                                       const std::vector<std::pair<int, long long>>& ys) {
  std::vector<Int> out(ws.basis_size());
  Accum acc{ws, out};
  auto addT = [&](size_t i, size_t j, size_t m, const Int& c) {
    if (c == 0) return;
    auto cv = g.comm_vec(i, j);
    for (size_t l = 0; l < cv.size(); ++l)
      if (cv[l] != 0) acc.add(g.noncentral + l, m, c * cv[l]);
  };

  for (size_t kx = 0; kx < xs.size(); ++kx) {
    auto [i, a] = xs[kx];
    for (size_t ky = 0; ky < ys.size(); ++ky) {
      auto [j, b] = ys[ky];
      acc.add(i, j, Int(a) * b);
      addT(i, j, i, Int(b) * binom2(a));
      addT(i, j, j, Int(a) * binom2(b));
      for (size_t ky2 = ky + 1; ky2 < ys.size(); ++ky2)
        addT(i, j, ys[ky2].first, Int(a) * b * ys[ky2].second);
      for (size_t kx2 = kx + 1; kx2 < xs.size(); ++kx2)
        addT(i, j, xs[kx2].first, Int(a) * xs[kx2].second * b);
    }
  }
  return out;
}

std::vector<Int> WedgeSystem::expand(const Element& x, const Element& y) const {
  return expand_factors(*this, g_, factors_of(x), factors_of(y));
}

void WedgeSystem::add_relation_rows(
    const std::vector<std::pair<int, long long>>& relator) {
  for (size_t k = 0; k < g_.n(); ++k) {
    Factors gk{{(int)k, 1}};
    rel_.append_row(expand_factors(*this, g_, relator, gk));
    rel_.append_row(expand_factors(*this, g_, gk, relator));
  }
}

const Mat& WedgeSystem::m_lattice() {
  if (!m_) m_ = preimage_lattice(kappa_, g_.z_lattice());
  return *m_;
}

std::vector<Int> WedgeSystem::m_invariants() {
  return subgroup_quotient(rel_, m_lattice(), Mat(0, nb_));
}

const WedgeSystem::CommutingPart& WedgeSystem::m0(Int cap) {
  if (m0_) return *m0_;
  CommutingPart part;
  part.lattice = rel_;

  // a pair is kept as a witness only when its expansion enlarges the
  // sublattice collected so far
  IncrementalLattice basis(rel_);
  try {
    g_.for_each_commuting_pair(
        [&](const Element& x, const Element& y) {
          auto v = expand(x, y);
          if (basis.add(v)) {
            part.lattice.append_row(v);
            part.witnesses.push_back({x, y});
          }
        },
        cap);
  } catch (const CapExceeded&) {
    part.complete = false;
  }
  m0_ = std::move(part);
  return *m0_;
}

std::vector<Int> WedgeSystem::bogomolov(Int cap) {
  const auto& part = m0(cap);
  Mat den(0, nb_);
  for (size_t i = 0; i < part.witnesses.size(); ++i)
    den.append_row(part.lattice.row(rel_.r + i));
  return subgroup_quotient(rel_, m_lattice(), den);
}

std::vector<Int> WedgeSystem::exterior_square_invariants() const {
  auto inv = cokernel_invariants(rel_);
  if (inv.free_rank != 0) throw InfiniteGroup("exterior square is not finite");
  return inv.torsion;
}

std::string WedgeSystem::describe_vector(const std::vector<Int>& v) const {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (v[k] != 1) os << v[k] << "*";
    os << "(" << basis_label(k) << ")";
  }
  if (first) os << "0";
  return os.str();
}

WedgeSystem::Certificate WedgeSystem::certificate(Int cap) {
  Certificate cert;
  cert.b0 = bogomolov(cap);
  HnfResult mh = hnf(m_lattice());
  for (size_t i = 0; i < mh.rank; ++i)
    cert.m_generators.push_back(describe_vector(mh.h.row(i)));
  const auto& part = *m0_;
  for (const auto& [x, y] : part.witnesses)
    cert.m0_witnesses.push_back(g_.show(x) + " ^ " + g_.show(y));

  std::ostringstream os;
  os << "B0 invariants: [";
  for (size_t i = 0; i < cert.b0.size(); ++i)
    os << (i ? ", " : "") << cert.b0[i];
  os << "]\n";
  if (!part.complete)
    os << "warning: commuting-pair sweep was capped; the quotient is an "
          "upper bound on the true multiplier\n";
  os << "kernel lattice (" << cert.m_generators.size() << " generators):\n";
  for (const auto& s : cert.m_generators) os << "  " << s << "\n";
  os << "commuting wedge generators (" << cert.m0_witnesses.size()
     << " independent):\n";
  for (const auto& s : cert.m0_witnesses) os << "  " << s << "\n";
  cert.text = os.str();
  return cert;
}

std::vector<Int> bogomolov_multiplier(const PcPresentation& g, Int cap) {
  WedgeSystem ws(g);
  return ws.bogomolov(cap);
}

std::vector<Int> m_star_invariants(const PcPresentation& g) {
  WedgeSystem ws(g);
  return ws.m_invariants();
}

}  // namespace b0calc
