#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <b0calc/families.hpp>
#include <b0calc/oracle.hpp>
#include <b0calc/wedge.hpp>

using namespace b0calc;

namespace {

PcPresentation c3c3() { return PcPresentation(3, {"x", "y"}, 0, {3, 3}); }
PcPresentation c9() { return PcPresentation(3, {"x"}, 0, {9}); }
PcPresentation c9c9() { return PcPresentation(3, {"x", "y"}, 0, {9, 9}); }

std::vector<Int> ints(std::initializer_list<long long> v) {
  return std::vector<Int>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("elementary abelian rank two") {
  auto res = oracle_invariants(c3c3());
  CHECK(res.m == ints({3}));
  CHECK(res.b0.empty());
  CHECK(res.free_cols == 1);
  CHECK(res.modulus_exponent == 3);
}

TEST_CASE("abelian groups have trivial multiplier quotient") {
  CHECK(b0_oracle(c9()).empty());
  CHECK(b0_oracle(c9c9()).empty());
  CHECK(m_oracle(c9c9()) == ints({9}));
  CHECK(m_oracle(c9()).empty());
  CHECK(m_oracle(PcPresentation(2, {"x", "y", "z"}, 0, {2, 2, 4})) ==
        ints({2, 2, 2}));
}

TEST_CASE("Heisenberg groups") {
  auto odd = oracle_invariants(heisenberg(3));
  CHECK(odd.m == ints({3, 3}));
  CHECK(odd.b0.empty());

  auto dihedral = oracle_invariants(heisenberg(2));
  CHECK(dihedral.m == ints({2}));
  CHECK(dihedral.b0.empty());
}

TEST_CASE("split metacyclic groups") {
  auto res = oracle_invariants(metacyclic_split(3, 1, 2, 1));
  CHECK(res.m.empty());
  CHECK(res.b0.empty());
  CHECK(m_oracle(metacyclic_split(3, 1, 2, 2)) == ints({3}));
}

TEST_CASE("default modulus exponent tracks the largest generator order") {
  CHECK(oracle_invariants(c9()).modulus_exponent == 5);
  CHECK(oracle_invariants(heisenberg(2)).modulus_exponent == 3);
}

TEST_CASE("stability of the modulus exponent") {
  // one level above the exponent already suffices for C9
  CHECK(stability_check(c9(), 2));
  // but a single level is too coarse for C9 x C9, whose multiplier is Z/9
  CHECK_FALSE(stability_check(c9c9(), 1));
  CHECK(stability_check(c9c9(), 2));
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(oracle_invariants(heisenberg(3), Int(10)), CapExceeded);
  CHECK_THROWS_AS(b0_oracle(c9c9(), Int(80)), CapExceeded);
}

TEST_CASE("invariance under relabeling the presentation") {
  // Heisenberg with the noncentral generators swapped and the commutator
  // value inverted describes an isomorphic group
  PcPresentation twisted(3, {"b", "a", "c"}, 2, {3, 3, 3});
  twisted.set_comm_z(1, 0, {2});
  auto a = oracle_invariants(heisenberg(3));
  auto b = oracle_invariants(twisted);
  CHECK(a.m == b.m);
  CHECK(a.b0 == b.b0);

  // same group, generator orders listed in the opposite order
  CHECK(m_oracle(PcPresentation(3, {"x", "y"}, 0, {9, 3})) ==
        m_oracle(PcPresentation(3, {"x", "y"}, 0, {3, 9})));
}

TEST_CASE("agreement with the symbolic engine") {
  std::vector<PcPresentation> gs;
  gs.push_back(PcPresentation(3, {"x", "y"}, 0, {9, 3}));
  gs.push_back(metacyclic_split(3, 1, 2, 2));
  gs.push_back(metacyclic_split(2, 1, 2, 1));
  gs.push_back(
      direct_product(heisenberg(3), PcPresentation(3, {"w"}, 0, {3})).g);
  for (const auto& g : gs) {
    auto res = oracle_invariants(g);
    CHECK(res.m == m_star_invariants(g));
    CHECK(res.b0 == bogomolov_multiplier(g));
  }
}
