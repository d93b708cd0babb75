#pragma once

#include <b0calc/pc.hpp>

#include <optional>
#include <string>
#include <vector>

namespace b0calc {

// Generator-level map between presentations, theta(source gen i) =
// images[i] in the target.
struct GeneratorMap {
  const PcPresentation* source = nullptr;
  const PcPresentation* target = nullptr;
  std::vector<Element> images;

  Element apply(const PcPresentation& src, const Element& x) const;
};

struct HomCheck {
  bool ok = true;
  std::string failing_relator;
};

// Evaluates every defining relator of the source under the map.
HomCheck check_homomorphism(const GeneratorMap& theta);

// The six 4-generator series of order p^{6r}:
//   G1: [b1,a1] = g1 = b2^{p^r},  [b2,a2] = g2 = b1^{p^r}
//   G2: [b1,a1] = [b2,a2] = g = b2^{p^r}
//   G3: [b1,a1] = g1 = b1^{p^r}, [b2,a2] = g2 = b2^{p^r}, [a1,a2] = g2
//   G4: [b1,a1] = g1 = b2^{p^r},  [b2,a2] = g2 = b1^{p^r} b2^{p^r}
//   G5: [b1,a1] = [b2,a2] = g = b1^{p^r} b2^{p^r}
//   G6: like G3 but [a1,a2] = g1
// with a_i^{p^r} = b_i^{p^{2r}} = 1 throughout.
PcPresentation series_g(int i, long long p, int r);

PcPresentation heisenberg(long long p);

enum class ExtraspecialKind { exponent_p, exponent_p2 };

// Extraspecial group of order p^{2n+1}, built as an iterated central
// product of Heisenberg blocks (with one metacyclic block for the
// exponent-p^2 kind).
PcPresentation extraspecial(long long p, int n, ExtraspecialKind kind);

// Split metacyclic <b, a | [b,a] = b^{p^r}, a^{p^a} = b^{p^b} = 1>;
// requires 2r >= b so that b^{p^r} is central (class 2).
PcPresentation metacyclic_split(long long p, int r, int b, int a);

struct CentralProductResult {
  PcPresentation g;                      // E/N
  PcPresentation e;                      // P1 x P2
  std::vector<std::vector<long long>> n; // z-block generators of N in E
  QuotientResult quotient;               // projection E -> G
  std::vector<size_t> left_map, right_map;
};

// E = P1 x P2 modulo N = { k * theta(k)^-1 : k in K1 }, where K1 is a
// central subgroup of P1 inside the z-block and theta restricts to a
// bijection K1 -> K2.
CentralProductResult central_product(
    const PcPresentation& p1, const std::vector<std::vector<long long>>& k1,
    const PcPresentation& p2, const std::vector<std::vector<long long>>& k2,
    const GeneratorMap& theta);

// Central product of two metacyclic_split(p, r, b, a_i) factors over
// K_i = <b_i^{p^{b-1}}> with theta the natural generator identification.
CentralProductResult corollary_c2(long long p, int r, int b, int a1, int a2);

// The data needed to rerun a central-product construction generically.
struct CentralProductSpec {
  PcPresentation p1, p2;
  std::vector<std::vector<long long>> k1, k2;
  std::vector<Element> theta_images;  // one image in p2 per generator of p1

  GeneratorMap theta() const;
  CentralProductResult build() const;
};

CentralProductSpec corollary_c2_spec(long long p, int r, int b, int a1,
                                     int a2);

// The final central-product step of extraspecial(p, n, kind); n >= 2.
CentralProductSpec extraspecial_spec(long long p, int n, ExtraspecialKind kind);

}  // namespace b0calc
