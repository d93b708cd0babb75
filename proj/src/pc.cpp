#include <b0calc/pc.hpp>

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace b0calc {

GroupWord GroupWord::inverse() const {
  GroupWord w;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it)
    w.factors.emplace_back(it->first, -it->second);
  return w;
}

GroupWord& GroupWord::append(int gen, long long exp) {
  factors.emplace_back(gen, exp);
  return *this;
}

bool Element::is_identity() const {
  return std::all_of(e.begin(), e.end(), [](long long v) { return v == 0; });
}

PcPresentation::PcPresentation(long long p, std::vector<std::string> gen_labels,
                               size_t noncentral_count,
                               std::vector<long long> rel_orders)
    : prime(p),
      gens(std::move(gen_labels)),
      noncentral(noncentral_count),
      orders(std::move(rel_orders)) {
  assert(noncentral <= gens.size() && orders.size() == gens.size());
  power_z.assign(n(), std::vector<long long>(zsize(), 0));
  size_t pairs = noncentral < 2 ? 0 : noncentral * (noncentral - 1) / 2;
  comm.assign(pairs, std::vector<long long>(zsize(), 0));
}

size_t PcPresentation::pair_index(size_t i, size_t j) const {
  assert(i < j && j < noncentral);
  return j * (j - 1) / 2 + i;
}

namespace {

// Convert a word to a z-block exponent vector; every factor must be a
// z-generator.
std::vector<long long> word_to_zvec(const PcPresentation& p, const GroupWord& w,
                                    const char* what) {
  std::vector<long long> v(p.zsize(), 0);
  for (auto [g, e] : w.factors) {
    if (g < 0 || (size_t)g >= p.n()) throw BadIndex("generator index out of range");
    if ((size_t)g < p.noncentral)
      throw NotRefined(std::string(what) + " references noncentral generator " +
                       p.gens[g]);
    v[g - p.noncentral] += e;
  }
  return v;
}

bool is_prime_power(long long q, long long p) {
  if (q < p) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

}  // namespace

void PcPresentation::set_power(size_t i, const GroupWord& w) {
  std::vector<long long> v = word_to_zvec(*this, w, "power word");
  set_power_z(i, std::move(v));
}

void PcPresentation::set_power_z(size_t i, std::vector<long long> zvec) {
  assert(i < n() && zvec.size() == zsize());
  if (i >= noncentral) {
    // z power words must only reference later z-generators
    for (size_t l = 0; l + noncentral <= i && l < zsize(); ++l)
      if (zvec[l] != 0)
        throw NotRefined("power word of " + gens[i] +
                         " references an earlier central generator");
  }
  power_z[i] = std::move(zvec);
}

void PcPresentation::set_comm(size_t j, size_t i, const GroupWord& w) {
  std::vector<long long> v = word_to_zvec(*this, w, "commutator word");
  set_comm_z(j, i, std::move(v));
}

void PcPresentation::set_comm_z(size_t j, size_t i,
                                std::vector<long long> zvec) {
  if (j >= noncentral)
    throw ClassTooHigh("designated-central generator " + gens[j] +
                       " appears on the left of a commutator relation");
  if (i >= j) throw BadIndex("commutator pair must have j > i");
  comm[pair_index(i, j)] = std::move(zvec);
}

std::vector<long long> PcPresentation::comm_vec(size_t i, size_t j) const {
  std::vector<long long> v(zsize(), 0);
  if (i == j || i >= noncentral || j >= noncentral) return v;
  if (i < j) {
    const auto& w = comm[pair_index(i, j)];
    for (size_t l = 0; l < zsize(); ++l) v[l] = -w[l];
  } else {
    v = comm[pair_index(j, i)];
  }
  return v;
}

Int PcPresentation::group_order() const {
  Int o = 1;
  for (long long q : orders) o *= q;
  return o;
}

int PcPresentation::gen_index(const std::string& label) const {
  for (size_t i = 0; i < n(); ++i)
    if (gens[i] == label) return (int)i;
  return -1;
}

Element PcPresentation::identity() const {
  return Element{std::vector<long long>(n(), 0)};
}

Element PcPresentation::generator(size_t i) const {
  Element x = identity();
  x.e[i] = 1;
  return x;
}

Element PcPresentation::from_exponents(std::vector<Int> exps) const {
  assert(exps.size() == n());
  Element x = identity();
  for (size_t i = 0; i < n(); ++i) {
    Int k = floordiv(exps[i], Int(orders[i]));
    if (k != 0) {
      exps[i] -= k * orders[i];
      for (size_t l = 0; l < zsize(); ++l)
        if (power_z[i][l]) exps[noncentral + l] += k * power_z[i][l];
    }
    x.e[i] = (long long)exps[i];
  }
  return x;
}

Element PcPresentation::multiply(const Element& x, const Element& y) const {
  std::vector<Int> e(n());
  for (size_t i = 0; i < n(); ++i) e[i] = Int(x.e[i]) + y.e[i];
  // moving y's noncentral part left past x's introduces central corrections
  for (size_t j = 1; j < noncentral; ++j) {
    if (x.e[j] == 0) continue;
    for (size_t i = 0; i < j; ++i) {
      if (y.e[i] == 0) continue;
      const auto& w = comm[pair_index(i, j)];
      Int c = Int(x.e[j]) * y.e[i];
      for (size_t l = 0; l < zsize(); ++l)
        if (w[l]) e[noncentral + l] += c * w[l];
    }
  }
  return from_exponents(std::move(e));
}

Element PcPresentation::power(const Element& x, const Int& k) const {
  std::vector<Int> e(n());
  for (size_t i = 0; i < n(); ++i) e[i] = Int(x.e[i]) * k;
  Int b2 = binom2(k);
  if (b2 != 0) {
    for (size_t j = 1; j < noncentral; ++j) {
      if (x.e[j] == 0) continue;
      for (size_t i = 0; i < j; ++i) {
        if (x.e[i] == 0) continue;
        const auto& w = comm[pair_index(i, j)];
        Int c = b2 * x.e[j] * x.e[i];
        for (size_t l = 0; l < zsize(); ++l)
          if (w[l]) e[noncentral + l] += c * w[l];
      }
    }
  }
  return from_exponents(std::move(e));
}

Element PcPresentation::inverse(const Element& x) const {
  return power(x, Int(-1));
}

Element PcPresentation::commutator(const Element& x, const Element& y) const {
  std::vector<Int> e(n());
  for (size_t j = 1; j < noncentral; ++j)
    for (size_t i = 0; i < j; ++i) {
      Int c = Int(x.e[j]) * y.e[i] - Int(x.e[i]) * y.e[j];
      if (c == 0) continue;
      const auto& w = comm[pair_index(i, j)];
      for (size_t l = 0; l < zsize(); ++l)
        if (w[l]) e[noncentral + l] += c * w[l];
    }
  return from_exponents(std::move(e));
}

Element PcPresentation::conjugate(const Element& x, const Element& y) const {
  return multiply(x, commutator(x, y));
}

Element PcPresentation::collect(const GroupWord& w) const {
  Element acc = identity();
  for (auto [g, e] : w.factors) {
    if (g < 0 || (size_t)g >= n()) throw BadIndex("generator index out of range");
    acc = multiply(acc, power(generator(g), Int(e)));
  }
  return acc;
}

Int PcPresentation::element_order(const Element& x) const {
  Int ord = 1;
  Element y = x;
  while (!y.is_identity()) {
    y = power(y, Int(prime));
    ord *= prime;
  }
  return ord;
}

GroupWord PcPresentation::word_of(const Element& x) const {
  GroupWord w;
  for (size_t i = 0; i < n(); ++i)
    if (x.e[i]) w.append((int)i, x.e[i]);
  return w;
}

std::string PcPresentation::show(const Element& x) const {
  if (x.is_identity()) return "1";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < n(); ++i) {
    if (!x.e[i]) continue;
    if (!first) os << "*";
    os << gens[i];
    if (x.e[i] != 1) os << "^" << x.e[i];
    first = false;
  }
  return os.str();
}

std::vector<long long> PcPresentation::normalize_z(std::vector<Int> z) const {
  assert(z.size() == zsize());
  std::vector<long long> out(zsize());
  for (size_t l = 0; l < zsize(); ++l) {
    size_t i = noncentral + l;
    Int k = floordiv(z[l], Int(orders[i]));
    if (k != 0) {
      z[l] -= k * orders[i];
      for (size_t l2 = l + 1; l2 < zsize(); ++l2)
        if (power_z[i][l2]) z[l2] += k * power_z[i][l2];
    }
    out[l] = (long long)z[l];
  }
  return out;
}

bool PcPresentation::z_is_identity(const std::vector<Int>& z) const {
  std::vector<long long> nz = normalize_z(z);
  return std::all_of(nz.begin(), nz.end(), [](long long v) { return v == 0; });
}

Mat PcPresentation::z_lattice() const {
  Mat m(zsize(), zsize());
  for (size_t l = 0; l < zsize(); ++l) {
    m.at(l, l) = orders[noncentral + l];
    for (size_t l2 = 0; l2 < zsize(); ++l2)
      m.at(l, l2) -= power_z[noncentral + l][l2];
  }
  return m;
}

std::vector<std::vector<long long>> PcPresentation::derived_gens() const {
  std::vector<std::vector<long long>> out;
  for (const auto& w : comm)
    if (!std::all_of(w.begin(), w.end(), [](long long v) { return v == 0; }))
      out.push_back(w);
  return out;
}

Int PcPresentation::derived_order() const {
  Mat zl = z_lattice();
  Mat num(0, zsize());
  for (const auto& g : derived_gens()) {
    std::vector<Int> row(g.begin(), g.end());
    num.append_row(row);
  }
  Int sub = 1;
  for (const Int& d : subgroup_quotient(zl, num, Mat(0, zsize()))) sub *= d;
  return sub;
}

ConsistencyReport PcPresentation::validate() const {
  ConsistencyReport rep;
  rep.order = group_order();
  for (size_t i = 0; i < n(); ++i)
    if (!is_prime_power(orders[i], prime)) {
      rep.consistent = false;
      rep.detail = "relative order of " + gens[i] + " is not a power of " +
                   std::to_string(prime);
      return rep;
    }
  auto mismatch = [&](const Element& a, const Element& b, size_t i, size_t j,
                      const char* kind) {
    rep.consistent = false;
    std::ostringstream os;
    os << kind << " overlap fails on (" << gens[j] << ", " << gens[i]
       << "): " << show(a) << " != " << show(b);
    rep.detail = os.str();
  };
  // associativity overlaps g_k (g_j g_i) vs (g_k g_j) g_i
  for (size_t k = 0; k < n() && rep.consistent; ++k)
    for (size_t j = 0; j <= k && rep.consistent; ++j)
      for (size_t i = 0; i <= j && rep.consistent; ++i) {
        Element lhs = multiply(generator(k), multiply(generator(j), generator(i)));
        Element rhs = multiply(multiply(generator(k), generator(j)), generator(i));
        if (!(lhs == rhs)) mismatch(lhs, rhs, i, k, "triple");
      }
  // power overlaps, both orientations
  for (size_t j = 0; j < n() && rep.consistent; ++j) {
    Element pwj;
    {
      std::vector<Int> e(n(), 0);
      for (size_t l = 0; l < zsize(); ++l) e[noncentral + l] = power_z[j][l];
      pwj = from_exponents(std::move(e));
    }
    for (size_t i = 0; i <= j && rep.consistent; ++i) {
      Element pwi;
      {
        std::vector<Int> e(n(), 0);
        for (size_t l = 0; l < zsize(); ++l) e[noncentral + l] = power_z[i][l];
        pwi = from_exponents(std::move(e));
      }
      if (i == j) {
        Element a = multiply(generator(j), pwj);
        Element b = multiply(pwj, generator(j));
        if (!(a == b)) mismatch(a, b, i, j, "power");
        continue;
      }
      // g_j^{q_j} g_i collected two ways
      Element a = multiply(pwj, generator(i));
      Element b = multiply(power(generator(j), Int(orders[j] - 1)),
                           multiply(generator(j), generator(i)));
      if (!(a == b)) {
        mismatch(a, b, i, j, "power");
        continue;
      }
      // g_j g_i^{q_i} collected two ways
      Element c = multiply(generator(j), pwi);
      Element d = multiply(multiply(generator(j), generator(i)),
                           power(generator(i), Int(orders[i] - 1)));
      if (!(c == d)) mismatch(c, d, i, j, "power");
    }
  }
  return rep;
}

void PcPresentation::validate_or_throw() const {
  ConsistencyReport rep = validate();
  if (!rep.consistent) throw InconsistentPresentation(rep.detail);
  if (!rep.class_two) throw ClassTooHigh(rep.detail);
  if (!rep.refined) throw NotRefined(rep.detail);
}

void PcPresentation::for_each_element(
    const std::function<void(const Element&)>& fn, Int cap) const {
  if (group_order() > cap)
    throw CapExceeded("group order " + group_order().str() +
                      " exceeds enumeration cap");
  Element x = identity();
  while (true) {
    fn(x);
    size_t i = 0;
    while (i < n()) {
      if (++x.e[i] < orders[i]) break;
      x.e[i] = 0;
      ++i;
    }
    if (i == n()) break;
  }
}

namespace {

// Iterate all exponent vectors for a contiguous index range.
bool bump(std::vector<long long>& v, const std::vector<long long>& orders,
          size_t lo, size_t hi) {
  for (size_t i = lo; i < hi; ++i) {
    if (++v[i] < orders[i]) return true;
    v[i] = 0;
  }
  return false;
}

}  // namespace

Int PcPresentation::count_commuting_ordered(Int cap) const {
  Int total = group_order() * group_order();
  if (total > cap) throw CapExceeded("|G|^2 exceeds commuting-pair cap");
  Int zcount = 1;
  for (size_t l = 0; l < zsize(); ++l) zcount *= orders[noncentral + l];
  Int count = 0;
  std::vector<long long> u(n(), 0), v(n(), 0);
  std::vector<Int> zc(zsize());
  do {
    std::fill(v.begin(), v.end(), 0);
    do {
      std::fill(zc.begin(), zc.end(), Int(0));
      for (size_t j = 1; j < noncentral; ++j)
        for (size_t i = 0; i < j; ++i) {
          Int c = Int(u[j]) * v[i] - Int(u[i]) * v[j];
          if (c == 0) continue;
          const auto& w = comm[pair_index(i, j)];
          for (size_t l = 0; l < zsize(); ++l)
            if (w[l]) zc[l] += c * w[l];
        }
      if (z_is_identity(zc)) count += zcount * zcount;
    } while (bump(v, orders, 0, noncentral));
  } while (bump(u, orders, 0, noncentral));
  return count;
}

void PcPresentation::for_each_commuting_pair(
    const std::function<void(const Element&, const Element&)>& fn,
    Int cap) const {
  Int total = group_order() * group_order();
  if (total > cap) throw CapExceeded("|G|^2 exceeds commuting-pair cap");
  // whether x and y commute depends only on their noncentral exponents, so
  // commuting is tested once per noncentral profile pair
  std::vector<long long> u(n(), 0);
  std::vector<Int> zc(zsize());
  do {
    std::vector<long long> v = u;
    bool diagonal = true;
    do {
      std::fill(zc.begin(), zc.end(), Int(0));
      for (size_t j = 1; j < noncentral; ++j)
        for (size_t i = 0; i < j; ++i) {
          Int c = Int(u[j]) * v[i] - Int(u[i]) * v[j];
          if (c == 0) continue;
          const auto& w = comm[pair_index(i, j)];
          for (size_t l = 0; l < zsize(); ++l)
            if (w[l]) zc[l] += c * w[l];
        }
      if (z_is_identity(zc)) {
        Element x{u}, y{v};
        std::fill(x.e.begin() + noncentral, x.e.end(), 0);
        std::fill(y.e.begin() + noncentral, y.e.end(), 0);
        do {
          if (diagonal) {
            // same noncentral profile: emit unordered z pairs only
            std::copy(x.e.begin() + noncentral, x.e.end(),
                      y.e.begin() + noncentral);
          } else {
            std::fill(y.e.begin() + noncentral, y.e.end(), 0);
          }
          do {
            fn(x, y);
          } while (bump(y.e, orders, noncentral, n()));
        } while (bump(x.e, orders, noncentral, n()));
      }
      diagonal = false;
    } while (bump(v, orders, 0, noncentral));
  } while (bump(u, orders, 0, noncentral));
}

std::vector<Element> PcPresentation::center_elements(Int cap) const {
  std::vector<Element> out;
  for_each_element(
      [&](const Element& x) {
        for (size_t k = 0; k < noncentral; ++k)
          if (!commutator(x, generator(k)).is_identity()) return;
        out.push_back(x);
      },
      cap);
  return out;
}

QuotientResult quotient_by_central(
    const PcPresentation& p, const std::vector<std::vector<long long>>& ngens) {
  size_t t = p.zsize();
  Mat rel = p.z_lattice();
  for (const auto& g : ngens) {
    assert(g.size() == t);
    rel.append_row(std::vector<Int>(g.begin(), g.end()));
  }
  SnfResult s = snf(rel);
  assert(s.rank == t);  // z-block group is finite
  // columns of V with diagonal > 1 become the new z-generators
  std::vector<size_t> keep;
  std::vector<long long> new_orders;
  for (size_t j = 0; j < t; ++j)
    if (s.diag[j] > 1) {
      keep.push_back(j);
      new_orders.push_back((long long)s.diag[j]);
    }
  Mat zmap(t, keep.size());
  for (size_t i = 0; i < t; ++i)
    for (size_t k = 0; k < keep.size(); ++k) {
      Int v = s.v.at(i, keep[k]) % new_orders[k];
      if (v < 0) v += new_orders[k];
      zmap.at(i, k) = v;
    }
  std::vector<std::string> labels(p.gens.begin(), p.gens.begin() + p.noncentral);
  std::set<std::string> used(labels.begin(), labels.end());
  for (size_t k = 0; k < keep.size(); ++k) {
    std::string base = "z" + std::to_string(k + 1);
    while (used.count(base)) base += "q";
    used.insert(base);
    labels.push_back(base);
  }
  std::vector<long long> orders(p.orders.begin(), p.orders.begin() + p.noncentral);
  orders.insert(orders.end(), new_orders.begin(), new_orders.end());
  PcPresentation q(p.prime, labels, p.noncentral, orders);
  auto map_z = [&](const std::vector<long long>& v) {
    std::vector<long long> out(keep.size(), 0);
    std::vector<Int> acc(keep.size());
    for (size_t i = 0; i < t; ++i)
      if (v[i])
        for (size_t k = 0; k < keep.size(); ++k) acc[k] += Int(v[i]) * zmap.at(i, k);
    for (size_t k = 0; k < keep.size(); ++k) {
      Int r = acc[k] % new_orders[k];
      if (r < 0) r += new_orders[k];
      out[k] = (long long)r;
    }
    return out;
  };
  for (size_t i = 0; i < p.noncentral; ++i) q.set_power_z(i, map_z(p.power_z[i]));
  for (size_t j = 1; j < p.noncentral; ++j)
    for (size_t i = 0; i < j; ++i)
      q.set_comm_z(j, i, map_z(p.comm[p.pair_index(i, j)]));
  QuotientResult res{std::move(q), std::move(zmap)};
  res.q.validate_or_throw();
  return res;
}

Element QuotientResult::project(const PcPresentation& e, const Element& x) const {
  std::vector<Int> exps(q.n(), 0);
  for (size_t i = 0; i < e.noncentral; ++i) exps[i] = x.e[i];
  for (size_t l = 0; l < e.zsize(); ++l)
    if (x.e[e.noncentral + l])
      for (size_t k = 0; k < zmap.c; ++k)
        exps[q.noncentral + k] += Int(x.e[e.noncentral + l]) * zmap.at(l, k);
  return q.from_exponents(std::move(exps));
}

DirectProductResult direct_product(const PcPresentation& p,
                                   const PcPresentation& q) {
  if (p.prime != q.prime)
    throw PrimeMismatch("direct product requires a common prime");
  bool clash = false;
  for (const auto& g : q.gens)
    if (p.gen_index(g) >= 0) clash = true;
  auto label = [&](const PcPresentation& src, size_t i, const char* suffix) {
    return clash ? src.gens[i] + suffix : src.gens[i];
  };
  size_t m = p.noncentral + q.noncentral;
  std::vector<std::string> labels;
  std::vector<long long> orders;
  std::vector<size_t> lmap(p.n()), rmap(q.n());
  for (size_t i = 0; i < p.noncentral; ++i) {
    lmap[i] = labels.size();
    labels.push_back(label(p, i, "_1"));
    orders.push_back(p.orders[i]);
  }
  for (size_t i = 0; i < q.noncentral; ++i) {
    rmap[i] = labels.size();
    labels.push_back(label(q, i, "_2"));
    orders.push_back(q.orders[i]);
  }
  for (size_t l = 0; l < p.zsize(); ++l) {
    lmap[p.noncentral + l] = labels.size();
    labels.push_back(label(p, p.noncentral + l, "_1"));
    orders.push_back(p.orders[p.noncentral + l]);
  }
  for (size_t l = 0; l < q.zsize(); ++l) {
    rmap[q.noncentral + l] = labels.size();
    labels.push_back(label(q, q.noncentral + l, "_2"));
    orders.push_back(q.orders[q.noncentral + l]);
  }
  PcPresentation g(p.prime, labels, m, orders);
  auto embed_z = [&](const std::vector<long long>& v, size_t off) {
    std::vector<long long> out(g.zsize(), 0);
    for (size_t l = 0; l < v.size(); ++l) out[off + l] = v[l];
    return out;
  };
  for (size_t i = 0; i < p.n(); ++i)
    g.set_power_z(lmap[i], embed_z(p.power_z[i], 0));
  for (size_t i = 0; i < q.n(); ++i)
    g.set_power_z(rmap[i], embed_z(q.power_z[i], p.zsize()));
  for (size_t j = 1; j < p.noncentral; ++j)
    for (size_t i = 0; i < j; ++i)
      g.set_comm_z(lmap[j], lmap[i], embed_z(p.comm[p.pair_index(i, j)], 0));
  for (size_t j = 1; j < q.noncentral; ++j)
    for (size_t i = 0; i < j; ++i)
      g.set_comm_z(rmap[j], rmap[i],
                   embed_z(q.comm[q.pair_index(i, j)], p.zsize()));
  DirectProductResult res{std::move(g), std::move(lmap), std::move(rmap)};
  return res;
}

Element DirectProductResult::embed_left(const PcPresentation& p,
                                        const Element& x) const {
  Element out{std::vector<long long>(g.n(), 0)};
  for (size_t i = 0; i < p.n(); ++i) out.e[left_map[i]] = x.e[i];
  return out;
}

Element DirectProductResult::embed_right(const PcPresentation& q,
                                         const Element& y) const {
  Element out{std::vector<long long>(g.n(), 0)};
  for (size_t i = 0; i < q.n(); ++i) out.e[right_map[i]] = y.e[i];
  return out;
}

}  // namespace b0calc
