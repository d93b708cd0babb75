#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <b0calc/families.hpp>

using namespace b0calc;

TEST_CASE("series constructors validate and have order p^6r") {
  for (int i = 1; i <= 6; ++i) {
    PcPresentation g = series_g(i, 3, 1);
    CHECK(g.validate().pass());
    CHECK(g.group_order() == 729);
    CHECK(g.derived_order() > 1);
  }
  CHECK(series_g(2, 3, 2).group_order() == Int(3) * 3 * 3 * 3 * 3 * 3 * 3 * 3 *
                                               3 * 3 * 3 * 3);
  CHECK(series_g(4, 5, 1).group_order() == 15625);
  CHECK(series_g(1, 3, 2).validate().pass());
}

TEST_CASE("series relations match the stated presentations") {
  // G1: [b1,a1] = b2^3, [b2,a2] = b1^3
  PcPresentation g1 = series_g(1, 3, 1);
  int a1 = g1.gen_index("a1"), a2 = g1.gen_index("a2"),
      b1 = g1.gen_index("b1"), b2 = g1.gen_index("b2");
  CHECK(g1.commutator(g1.generator(b1), g1.generator(a1)) ==
        g1.collect(GroupWord{{b2, 3}}));
  CHECK(g1.commutator(g1.generator(b2), g1.generator(a2)) ==
        g1.collect(GroupWord{{b1, 3}}));

  // G3: [a1,a2] = g2 = b2^3
  PcPresentation g3 = series_g(3, 3, 1);
  CHECK(g3.commutator(g3.generator(g3.gen_index("a1")),
                      g3.generator(g3.gen_index("a2"))) ==
        g3.collect(GroupWord{{g3.gen_index("b2"), 3}}));
  // G6: [a1,a2] = g1 = b1^3
  PcPresentation g6 = series_g(6, 3, 1);
  CHECK(g6.commutator(g6.generator(g6.gen_index("a1")),
                      g6.generator(g6.gen_index("a2"))) ==
        g6.collect(GroupWord{{g6.gen_index("b1"), 3}}));

  // G5: [b1,a1] = [b2,a2] = b1^3 b2^3
  PcPresentation g5 = series_g(5, 3, 1);
  Element gamma = g5.collect(
      GroupWord{{g5.gen_index("b1"), 3}, {g5.gen_index("b2"), 3}});
  CHECK(g5.commutator(g5.generator(g5.gen_index("b1")),
                      g5.generator(g5.gen_index("a1"))) == gamma);
  CHECK(g5.commutator(g5.generator(g5.gen_index("b2")),
                      g5.generator(g5.gen_index("a2"))) == gamma);

  // G4: [b2,a2] = g2 with g2 = b1^3 b2^3
  PcPresentation g4 = series_g(4, 3, 1);
  CHECK(g4.commutator(g4.generator(g4.gen_index("b2")),
                      g4.generator(g4.gen_index("a2"))) ==
        g4.collect(GroupWord{{g4.gen_index("b1"), 3},
                             {g4.gen_index("b2"), 3}}));
}

TEST_CASE("series parameter guards") {
  CHECK_THROWS_AS(series_g(1, 2, 1), EvenPrime);
  CHECK_THROWS_AS(series_g(0, 3, 1), BadIndex);
  CHECK_THROWS_AS(series_g(7, 3, 1), BadIndex);
  CHECK_THROWS_AS(series_g(1, 3, 0), BadIndex);
}

TEST_CASE("heisenberg and extraspecial") {
  CHECK(heisenberg(3).group_order() == 27);
  CHECK(heisenberg(3).validate().pass());

  PcPresentation e32 = extraspecial(3, 2, ExtraspecialKind::exponent_p);
  CHECK(e32.validate().pass());
  CHECK(e32.group_order() == 243);
  CHECK(e32.center_elements().size() == 3);
  CHECK(e32.derived_order() == 3);

  PcPresentation e32b = extraspecial(3, 2, ExtraspecialKind::exponent_p2);
  CHECK(e32b.group_order() == 243);
  CHECK(e32b.center_elements().size() == 3);

  PcPresentation q8ish = extraspecial(2, 1, ExtraspecialKind::exponent_p2);
  CHECK(q8ish.group_order() == 8);
  CHECK(q8ish.center_elements().size() == 2);

  PcPresentation e23 = extraspecial(2, 2, ExtraspecialKind::exponent_p);
  CHECK(e23.group_order() == 32);
  CHECK(e23.center_elements().size() == 2);
}

TEST_CASE("metacyclic split presentations") {
  PcPresentation m = metacyclic_split(3, 1, 2, 1);
  CHECK(m.validate().pass());
  CHECK(m.group_order() == 27);
  int a = m.gen_index("a"), b = m.gen_index("b");
  CHECK(m.commutator(m.generator(b), m.generator(a)) ==
        m.collect(GroupWord{{b, 3}}));
  CHECK(m.element_order(m.generator(b)) == 9);

  CHECK(metacyclic_split(3, 1, 2, 2).group_order() == 81);
  CHECK(metacyclic_split(3, 2, 3, 1).group_order() == 81);
  CHECK_THROWS_AS(metacyclic_split(3, 1, 3, 1), NotClassTwo);
  CHECK_THROWS_AS(metacyclic_split(3, 2, 2, 1), BadIndex);
}

TEST_CASE("check_homomorphism") {
  PcPresentation g1 = metacyclic_split(3, 1, 2, 1);
  PcPresentation g2 = metacyclic_split(3, 1, 2, 1);

  GeneratorMap good{&g1, &g2,
                    {g2.generator(0), g2.generator(1), g2.generator(2)}};
  CHECK(check_homomorphism(good).ok);

  GeneratorMap ident{&g1, &g1,
                     {g1.generator(0), g1.generator(1), g1.generator(2)}};
  CHECK(check_homomorphism(ident).ok);

  // sending b to the order-3 generator a while keeping c fixed breaks the
  // power relator b^3 = c
  GeneratorMap bad{&g1, &g2,
                   {g2.generator(0), g2.generator(0), g2.generator(2)}};
  auto res = check_homomorphism(bad);
  CHECK(!res.ok);
  CHECK(!res.failing_relator.empty());
}

TEST_CASE("central product of two Heisenberg groups") {
  PcPresentation h = heisenberg(3);
  PcPresentation h2 = heisenberg(3);
  GeneratorMap theta{&h, &h2, {h2.identity(), h2.identity(), h2.generator(2)}};
  auto cp = central_product(h, {{1}}, h2, {{1}}, theta);
  CHECK(cp.g.validate().pass());
  CHECK(cp.g.group_order() == 243);
  CHECK(cp.e.group_order() == 729);
  CHECK(cp.g.center_elements().size() == 3);
}

TEST_CASE("central product over the trivial subgroup is the direct product") {
  PcPresentation h = heisenberg(3);
  PcPresentation h2 = heisenberg(3);
  GeneratorMap theta{&h, &h2, {h2.identity(), h2.identity(), h2.generator(2)}};
  auto cp = central_product(h, {}, h2, {}, theta);
  CHECK(cp.g.group_order() == 729);
  CHECK(cp.g.derived_order() == 9);
}

TEST_CASE("central product validation errors") {
  PcPresentation h = heisenberg(3);
  PcPresentation h2 = heisenberg(3);
  // image of K1 must be K2, not a proper subgroup mismatch
  GeneratorMap to_id{&h, &h2, {h2.identity(), h2.identity(), h2.identity()}};
  CHECK_THROWS_AS(central_product(h, {{1}}, h2, {{1}}, to_id), NotIso);

  PcPresentation c5(5, {"g"}, 0, {5});
  GeneratorMap theta5{&h, &c5, {c5.identity(), c5.identity(), c5.identity()}};
  CHECK_THROWS_AS(central_product(h, {{1}}, c5, {{1}}, theta5), PrimeMismatch);
}

TEST_CASE("corollary_c2 instances") {
  auto cp = corollary_c2(3, 1, 2, 1, 1);
  CHECK(cp.g.validate().pass());
  CHECK(cp.g.group_order() == 243);  // 3^(a1+a2+2b-1)
  // the identified centers: b1^3 = b2^3 in the quotient
  CHECK(corollary_c2(3, 1, 2, 2, 1).g.group_order() == 729);
  CHECK(corollary_c2(3, 1, 2, 2, 2).g.group_order() == 2187);
  CHECK_THROWS_AS(corollary_c2(3, 1, 3, 1, 1), NotClassTwo);
}
