#include <b0calc/families.hpp>

#include <cassert>

namespace b0calc {

namespace {

long long pow_ll(long long p, int e) {
  long long q = 1;
  while (e-- > 0) q *= p;
  return q;
}

}  // namespace

Element GeneratorMap::apply(const PcPresentation& src, const Element& x) const {
  assert(source && target && images.size() == src.n());
  Element y = target->identity();
  for (size_t i = 0; i < src.n(); ++i)
    if (x.e[i] != 0) y = target->multiply(y, target->power(images[i], x.e[i]));
  return y;
}

HomCheck check_homomorphism(const GeneratorMap& theta) {
  HomCheck res;
  const PcPresentation& s = *theta.source;
  const PcPresentation& t = *theta.target;
  auto image_of_z = [&](const std::vector<long long>& zvec) {
    Element y = t.identity();
    for (size_t l = 0; l < s.zsize(); ++l)
      if (zvec[l] != 0)
        y = t.multiply(y, t.power(theta.images[s.noncentral + l], zvec[l]));
    return y;
  };
  // power relators g_i^{q_i} = pw_i
  for (size_t i = 0; i < s.n(); ++i) {
    Element lhs = t.power(theta.images[i], s.orders[i]);
    if (lhs != image_of_z(s.power_z[i])) {
      res.ok = false;
      res.failing_relator = s.gens[i] + "^" + std::to_string(s.orders[i]);
      return res;
    }
  }
  // commutator relators [g_j, g_i] = w_{ji}
  for (size_t j = 1; j < s.noncentral; ++j)
    for (size_t i = 0; i < j; ++i) {
      Element lhs = t.commutator(theta.images[j], theta.images[i]);
      if (lhs != image_of_z(s.comm[s.pair_index(i, j)])) {
        res.ok = false;
        res.failing_relator = "[" + s.gens[j] + "," + s.gens[i] + "]";
        return res;
      }
    }
  // commutator relators involving designated-central generators
  for (size_t j = 0; j < s.n(); ++j)
    for (size_t i = std::max(j + 1, s.noncentral); i < s.n(); ++i)
      if (!t.commutator(theta.images[j], theta.images[i]).is_identity()) {
        res.ok = false;
        res.failing_relator = "[" + s.gens[i] + "," + s.gens[j] + "]";
        return res;
      }
  return res;
}

PcPresentation series_g(int i, long long p, int r) {
  if (p == 2) throw EvenPrime("series is defined for odd primes only");
  if (i < 1 || i > 6) throw BadIndex("series index must be 1..6");
  if (r < 1) throw BadIndex("series parameter r must be >= 1");
  long long q = pow_ll(p, r);

  auto two_gamma = [&](long long b1_order) {
    return PcPresentation(p, {"a1", "a2", "b1", "b2", "g1", "g2"}, 4,
                          {q, q, b1_order, q, q, q});
  };
  switch (i) {
    case 1: {
      PcPresentation g = two_gamma(q);
      g.set_power_z(2, {0, 1});  // b1^q = g2
      g.set_power_z(3, {1, 0});  // b2^q = g1
      g.set_comm_z(2, 0, {1, 0});
      g.set_comm_z(3, 1, {0, 1});
      return g;
    }
    case 2: {
      // single gamma; b1 keeps full order p^{2r}
      PcPresentation g(p, {"a1", "a2", "b1", "b2", "g"}, 4,
                       {q, q, q * q, q, q});
      g.set_power_z(3, {1});  // b2^q = g
      g.set_comm_z(2, 0, {1});
      g.set_comm_z(3, 1, {1});
      return g;
    }
    case 3:
    case 6: {
      PcPresentation g = two_gamma(q);
      g.set_power_z(2, {1, 0});  // b1^q = g1
      g.set_power_z(3, {0, 1});  // b2^q = g2
      g.set_comm_z(2, 0, {1, 0});
      g.set_comm_z(3, 1, {0, 1});
      // [a1,a2] = g2 (case 3) or g1 (case 6), i.e. [a2,a1] is the inverse
      if (i == 3)
        g.set_comm_z(1, 0, {0, -1});
      else
        g.set_comm_z(1, 0, {-1, 0});
      return g;
    }
    case 4: {
      PcPresentation g = two_gamma(q);
      g.set_power_z(2, {-1, 1});  // b1^q = g2 g1^-1
      g.set_power_z(3, {1, 0});   // b2^q = g1
      g.set_comm_z(2, 0, {1, 0});
      g.set_comm_z(3, 1, {0, 1});
      return g;
    }
    case 5: {
      // g = b1^q b2^q needs the auxiliary central generator d = b1^q
      PcPresentation g(p, {"a1", "a2", "b1", "b2", "d", "g"}, 4,
                       {q, q, q, q, q, q});
      g.set_power_z(2, {1, 0});   // b1^q = d
      g.set_power_z(3, {-1, 1});  // b2^q = d^-1 g
      g.set_comm_z(2, 0, {0, 1});
      g.set_comm_z(3, 1, {0, 1});
      return g;
    }
  }
  throw BadIndex("unreachable");
}

PcPresentation heisenberg(long long p) {
  PcPresentation g(p, {"a", "b", "c"}, 2, {p, p, p});
  g.set_comm_z(1, 0, {1});
  return g;
}

PcPresentation metacyclic_split(long long p, int r, int b, int a) {
  if (b < 2 || r < 1 || r > b - 1 || a < 1)
    throw BadIndex("metacyclic parameters need b >= 2, 1 <= r <= b-1, a >= 1");
  if (2 * r < b)
    throw NotClassTwo("b^(p^r) is not central unless 2r >= b");
  PcPresentation g(p, {"a", "b", "c"}, 2,
                   {pow_ll(p, a), pow_ll(p, r), pow_ll(p, b - r)});
  g.set_power_z(1, {1});  // b^(p^r) = c
  g.set_comm_z(1, 0, {1});
  return g;
}

PcPresentation extraspecial(long long p, int n, ExtraspecialKind kind) {
  if (n < 1) throw BadIndex("extraspecial rank must be >= 1");
  PcPresentation cur = kind == ExtraspecialKind::exponent_p
                           ? heisenberg(p)
                           : metacyclic_split(p, 1, 2, 1);
  for (int k = 1; k < n; ++k) {
    PcPresentation h = heisenberg(p);
    // identify the centers: the last z-generator of the running product
    // with <c> of the fresh Heisenberg block
    GeneratorMap theta;
    theta.source = &cur;
    theta.target = &h;
    theta.images.assign(cur.n(), h.identity());
    theta.images[cur.n() - 1] = h.generator(2);
    std::vector<std::vector<long long>> k1{
        std::vector<long long>(cur.zsize(), 0)};
    k1[0][cur.zsize() - 1] = 1;
    cur = central_product(cur, k1, h, {{1}}, theta).g;
  }
  return cur;
}

CentralProductResult central_product(
    const PcPresentation& p1, const std::vector<std::vector<long long>>& k1,
    const PcPresentation& p2, const std::vector<std::vector<long long>>& k2,
    const GeneratorMap& theta) {
  if (p1.prime != p2.prime)
    throw PrimeMismatch("factors have different primes");
  if (theta.images.size() != p1.n())
    throw BadIndex("theta must assign an image to every generator");

  // theta restricted to K1 must land in the z-block of P2, inside <K2>,
  // and restrict to a bijection K1 -> K2
  Mat zl2 = p2.z_lattice();
  Mat k2lat = zl2;
  for (const auto& v : k2)
    k2lat.append_row(std::vector<Int>(v.begin(), v.end()));
  Mat image_lat = zl2;
  std::vector<std::vector<long long>> theta_k1;
  for (const auto& kv : k1) {
    Element k = p1.identity();
    assert(kv.size() == p1.zsize());
    std::copy(kv.begin(), kv.end(), k.e.begin() + p1.noncentral);
    Element img = theta.apply(p1, k);
    for (size_t i = 0; i < p2.noncentral; ++i)
      if (img.e[i] != 0)
        throw NotCentral("theta image of K1 leaves the z-block of the "
                         "second factor");
    std::vector<long long> iz(img.e.begin() + p2.noncentral, img.e.end());
    std::vector<Int> izv(iz.begin(), iz.end());
    if (!lattice_contains(k2lat, izv))
      throw NotIso("theta image of K1 is not inside K2");
    image_lat.append_row(izv);
    theta_k1.push_back(iz);
  }
  Int k1_order = 1, k2_order = 1;
  {
    Mat k1lat = p1.z_lattice();
    for (const auto& v : k1)
      k1lat.append_row(std::vector<Int>(v.begin(), v.end()));
    for (const Int& d : subgroup_quotient(p1.z_lattice(), k1lat, p1.z_lattice()))
      k1_order *= d;
    for (const Int& d : subgroup_quotient(zl2, k2lat, zl2)) k2_order *= d;
    Int image_order = 1;
    for (const Int& d : subgroup_quotient(zl2, image_lat, zl2))
      image_order *= d;
    if (k1_order != k2_order || image_order != k2_order)
      throw NotIso("theta does not restrict to a bijection K1 -> K2");
  }

  CentralProductResult res;
  DirectProductResult dp = direct_product(p1, p2);
  res.e = dp.g;
  res.left_map = dp.left_map;
  res.right_map = dp.right_map;
  // N = < k * theta(k)^-1 > inside the z-block of E = P1 x P2
  size_t t1 = p1.zsize(), t2 = p2.zsize();
  for (size_t idx = 0; idx < k1.size(); ++idx) {
    std::vector<long long> nv(t1 + t2, 0);
    for (size_t l = 0; l < t1; ++l) nv[l] = k1[idx][l];
    for (size_t l = 0; l < t2; ++l) nv[t1 + l] = -theta_k1[idx][l];
    res.n.push_back(std::move(nv));
  }
  // |N| = |K1| * |N meet P2|, so equality certifies that the generator
  // assignment is a well-defined map on K1
  {
    Mat ze = res.e.z_lattice();
    Mat nlat = ze;
    for (const auto& v : res.n)
      nlat.append_row(std::vector<Int>(v.begin(), v.end()));
    Int n_order = 1;
    for (const Int& d : subgroup_quotient(ze, nlat, ze)) n_order *= d;
    if (n_order != k1_order)
      throw NotIso("theta is not well defined on K1");
  }
  res.quotient = quotient_by_central(res.e, res.n);
  res.g = res.quotient.q;
  return res;
}

CentralProductResult corollary_c2(long long p, int r, int b, int a1, int a2) {
  PcPresentation g1 = metacyclic_split(p, r, b, a1);
  PcPresentation g2 = metacyclic_split(p, r, b, a2);
  GeneratorMap theta;
  theta.source = &g1;
  theta.target = &g2;
  theta.images = {g2.generator(0), g2.generator(1), g2.generator(2)};
  // K_i = <b_i^{p^{b-1}}> = <c_i^{p^{b-1-r}}>
  long long e = 1;
  for (int k = 0; k < b - 1 - r; ++k) e *= p;
  std::vector<std::vector<long long>> k1{{e}}, k2{{e}};
  return central_product(g1, k1, g2, k2, theta);
}

GeneratorMap CentralProductSpec::theta() const {
  GeneratorMap t;
  t.source = &p1;
  t.target = &p2;
  t.images = theta_images;
  return t;
}

CentralProductResult CentralProductSpec::build() const {
  return central_product(p1, k1, p2, k2, theta());
}

CentralProductSpec corollary_c2_spec(long long p, int r, int b, int a1,
                                     int a2) {
  CentralProductSpec s;
  s.p1 = metacyclic_split(p, r, b, a1);
  s.p2 = metacyclic_split(p, r, b, a2);
  s.theta_images = {s.p2.generator(0), s.p2.generator(1), s.p2.generator(2)};
  long long e = 1;
  for (int k = 0; k < b - 1 - r; ++k) e *= p;
  s.k1 = {{e}};
  s.k2 = {{e}};
  return s;
}

CentralProductSpec extraspecial_spec(long long p, int n,
                                     ExtraspecialKind kind) {
  if (n < 2)
    throw BadIndex("extraspecial central-product data needs rank >= 2");
  CentralProductSpec s;
  s.p1 = extraspecial(p, n - 1, kind);
  s.p2 = heisenberg(p);
  s.theta_images.assign(s.p1.n(), s.p2.identity());
  s.theta_images[s.p1.n() - 1] = s.p2.generator(2);
  s.k1 = {std::vector<long long>(s.p1.zsize(), 0)};
  s.k1[0][s.p1.zsize() - 1] = 1;
  s.k2 = {{1}};
  return s;
}

}  // namespace b0calc
