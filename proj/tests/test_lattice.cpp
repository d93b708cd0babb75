#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <b0calc/lattice.hpp>

#include <random>

using namespace b0calc;

namespace {

Mat rows(std::vector<std::vector<Int>> r, size_t cols) {
  return Mat::from_rows(r, cols);
}

std::vector<Int> inv_list(std::initializer_list<long long> v) {
  return std::vector<Int>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("snf of diag(2,3) is diag(1,6)") {
  Mat a = rows({{2, 0}, {0, 3}}, 2);
  SnfResult s = snf(a);
  CHECK(s.diag == inv_list({1, 6}));
  CHECK(mat_mul(mat_mul(s.u, a), s.v).at(1, 1) == 6);
}

TEST_CASE("snf of the zero matrix is zero") {
  Mat a(3, 3);
  SnfResult s = snf(a);
  CHECK(s.rank == 0);
  CHECK(s.diag == inv_list({0, 0, 0}));
}

TEST_CASE("snf of [[2,4],[6,8]]") {
  // hand oracle: d1 = gcd of entries = 2, d1*d2 = |det| = 8
  Mat a = rows({{2, 4}, {6, 8}}, 2);
  SnfResult s = snf(a);
  CHECK(s.diag == inv_list({2, 4}));
}

TEST_CASE("invariants") {
  CHECK(finite_invariants(rows({{3, 0}, {0, 3}}, 2)) == inv_list({3, 3}));
  CHECK(finite_invariants(rows({{1, 0}, {0, 1}}, 2)).empty());
  // C9's z-lattice quotient by <3>
  CHECK(finite_invariants(rows({{9}, {3}}, 1)) == inv_list({3}));
  CHECK_THROWS_AS(finite_invariants(rows({{2, 0}}, 2)), InfiniteGroup);
}

TEST_CASE("snf transforms are unimodular and exact on random matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 8), val(-9, 9);
  for (int iter = 0; iter < 1000; ++iter) {
    size_t r = dim(rng), c = dim(rng);
    Mat a(r, c);
    for (auto& x : a.a) x = val(rng);
    SnfResult s = snf(a);
    CHECK(abs(det(s.u)) == 1);
    CHECK(abs(det(s.v)) == 1);
    Mat d = mat_mul(mat_mul(s.u, a), s.v);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j)
        CHECK(d.at(i, j) == (i == j && i < s.diag.size() ? s.diag[i] : Int(0)));
    for (size_t i = 0; i + 1 < s.rank; ++i)
      CHECK(s.diag[i + 1] % s.diag[i] == 0);
  }
}

TEST_CASE("hnf reproduces the row lattice") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 7), val(-9, 9);
  for (int iter = 0; iter < 300; ++iter) {
    size_t r = dim(rng), c = dim(rng);
    Mat a(r, c);
    for (auto& x : a.a) x = val(rng);
    HnfResult h = hnf(a);
    CHECK(abs(det(h.u)) == 1);
    CHECK(mat_mul(h.u, a) == h.h);
    CHECK(same_lattice(a, h.h));
  }
}

TEST_CASE("invariants are stable under unimodular transformations") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> dim(1, 6), val(-6, 6), small(-2, 2);
  for (int iter = 0; iter < 200; ++iter) {
    size_t r = dim(rng), c = dim(rng);
    Mat a(r, c);
    for (auto& x : a.a) x = val(rng);
    // random unimodular row/column operations
    Mat b = a;
    for (int k = 0; k < 10; ++k) {
      size_t i = rng() % r, j = rng() % r;
      int m = small(rng);
      if (i != j)
        for (size_t l = 0; l < c; ++l) b.at(i, l) += m * b.at(j, l);
      size_t ci = rng() % c, cj = rng() % c;
      int mc = small(rng);
      if (ci != cj)
        for (size_t l = 0; l < r; ++l) b.at(l, ci) += mc * b.at(l, cj);
    }
    CHECK(snf(a).diag == snf(b).diag);
  }
}

TEST_CASE("solve_left membership") {
  Mat a = rows({{2, 0, 1}, {0, 3, 1}}, 3);
  auto x = solve_left(a, a.row(0));
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 0);
  auto z = solve_left(a, {0, 0, 0});
  REQUIRE(z.has_value());
  CHECK((*z) == std::vector<Int>({0, 0}));
  CHECK(!solve_left(a, {1, 0, 0}).has_value());
  // random combinations are always members
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> val(-8, 8);
  for (int iter = 0; iter < 200; ++iter) {
    Int c0 = val(rng), c1 = val(rng);
    std::vector<Int> b(3);
    for (size_t k = 0; k < 3; ++k) b[k] = c0 * a.at(0, k) + c1 * a.at(1, k);
    auto sol = solve_left(a, b);
    REQUIRE(sol.has_value());
    std::vector<Int> back(3);
    for (size_t i = 0; i < 2; ++i)
      for (size_t k = 0; k < 3; ++k) back[k] += (*sol)[i] * a.at(i, k);
    CHECK(back == b);
  }
}

TEST_CASE("kernel_of_map") {
  // identity on C3: trivial kernel
  AbelianPresentation c3{{"g"}, rows({{3}}, 1)};
  Mat id = rows({{1}}, 1);
  Mat k = kernel_of_map(id, c3, c3);
  CHECK(subgroup_quotient(c3.rel, k, Mat(0, 1)).empty());
  // reduction C9 -> C3: kernel <3>, invariants [3]
  AbelianPresentation c9{{"g"}, rows({{9}}, 1)};
  Mat k2 = kernel_of_map(id, c9, c3);
  CHECK(subgroup_quotient(c9.rel, k2, Mat(0, 1)) == inv_list({3}));
  // a map that does not carry relations is rejected
  CHECK_THROWS_AS(kernel_of_map(id, c3, c9), NotWellDefined);
}

TEST_CASE("subgroup_quotient") {
  Mat r9 = rows({{9, 0}, {0, 9}}, 2);
  CHECK(subgroup_quotient(r9, rows({{1, 0}}, 2), rows({{1, 0}}, 2)).empty());
  CHECK(subgroup_quotient(r9, rows({{1, 0}}, 2), rows({{3, 0}}, 2)) ==
        inv_list({3}));
  CHECK_THROWS_AS(
      subgroup_quotient(r9, rows({{3, 0}}, 2), rows({{1, 0}}, 2)),
      NotASubgroup);
  // Z^2 / <(3,0),(0,9)> -> [3,9]
  CHECK(subgroup_quotient(Mat(0, 2), Mat::identity(2),
                          rows({{3, 0}, {0, 9}}, 2)) == inv_list({3, 9}));
  // num = den for random lattices gives the trivial group
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> val(-5, 5);
  for (int iter = 0; iter < 100; ++iter) {
    Mat g(3, 3);
    for (auto& x : g.a) x = val(rng);
    CHECK(subgroup_quotient(rows({{7, 0, 0}, {0, 7, 0}, {0, 0, 7}}, 3), g, g)
              .empty());
  }
}

TEST_CASE("lattice intersection and index") {
  Mat a = rows({{2, 0}, {0, 1}}, 2);
  Mat b = rows({{1, 0}, {0, 3}}, 2);
  Mat i = lattice_intersection(a, b);
  CHECK(same_lattice(i, rows({{2, 0}, {0, 3}}, 2)));
  CHECK(lattice_index(i) == 6);
}

TEST_CASE("merge_invariants") {
  CHECK(merge_invariants(inv_list({3}), inv_list({3})) == inv_list({3, 3}));
  CHECK(merge_invariants(inv_list({2}), inv_list({3})) == inv_list({6}));
  CHECK(merge_invariants({}, inv_list({4})) == inv_list({4}));
  CHECK(merge_invariants({}, {}).empty());
}

TEST_CASE("dump_relations format") {
  Mat a = rows({{1, -2}, {0, 0}}, 2);
  std::string s = dump_relations(a, {"x", "y"}, {"r"});
  CHECK(s == "r: 1*x + -2*y\nr1: 0\n");
}
