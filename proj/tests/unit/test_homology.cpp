#include <doctest.h>

#include <random>

#include "orlab/bounds.hpp"
#include "orlab/error.hpp"
#include "orlab/homology.hpp"

using namespace orlab;

namespace {

// Independent rank oracle: fraction-free (Bareiss) elimination.
std::size_t bareiss_rank(IntegerMatrix a) {
  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t col = 0; col < a.cols && rank < a.rows; ++col) {
    std::size_t piv = rank;
    while (piv < a.rows && a(piv, col) == 0) ++piv;
    if (piv == a.rows) continue;
    for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(piv, j), a(rank, j));
    for (std::size_t i = rank + 1; i < a.rows; ++i) {
      for (std::size_t j = col + 1; j < a.cols; ++j) {
        a(i, j) = (a(rank, col) * a(i, j) - a(i, col) * a(rank, j)) / prev;
      }
      a(i, col) = 0;
    }
    prev = a(rank, col);
    ++rank;
  }
  return rank;
}

IntegerMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> dist(-3, 3);
  IntegerMatrix m(r, c);
  for (auto& x : m.entries) x = dist(rng);
  return m;
}

}  // namespace

TEST_CASE("small Smith forms") {
  CHECK(smith_normal_form(IntegerMatrix::identity(2)).divisors == std::vector<BigInt>{1, 1});
  IntegerMatrix m(2, 2);
  m(0, 0) = 2;
  CHECK(smith_normal_form(m).divisors == std::vector<BigInt>{2});
  IntegerMatrix n(2, 2);
  n(0, 0) = 2;
  n(1, 1) = 3;
  CHECK(smith_normal_form(n).divisors == std::vector<BigInt>{1, 6});
}

TEST_CASE("random Smith forms recompose and agree with the rank oracle") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + trial % 5;
    const std::size_t c = 1 + (trial / 5) % 5;
    const IntegerMatrix m = random_matrix(rng, r, c);
    const SmithForm s = smith_normal_form(m);
    CHECK(s.left * m * s.right == s.diagonal);
    CHECK(s.left_inverse * s.diagonal * s.right_inverse == m);
    CHECK(s.left * s.left_inverse == IntegerMatrix::identity(r));
    CHECK(s.right * s.right_inverse == IntegerMatrix::identity(c));
    CHECK(s.rank() == bareiss_rank(m));
    for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) {
      CHECK(s.divisors[i] > 0);
      CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
    }
  }
}

TEST_CASE("rank mod p") {
  IntegerMatrix m(1, 1);
  m(0, 0) = 2;
  CHECK(rank_mod_p(m, 2) == 0);
  CHECK(rank_mod_p(m, 3) == 1);
  CHECK_THROWS_AS(rank_mod_p(m, 4), Error);
}

TEST_CASE("boundary matrices compose to zero") {
  const TwoComplex k = presentation_complex(2, {parse_word("abAB"), parse_word("aab")});
  const BoundaryMatrices b = boundary_matrices(k);
  CHECK(b.d1 * b.d2 == IntegerMatrix(1, 2));
  const TwoComplex disc = presentation_complex(1, {parse_word("a")});
  CHECK(boundary_matrices(disc).d2(0, 0) == 1);
}

TEST_CASE("known Betti numbers") {
  const TwoComplex torus = presentation_complex(2, {parse_word("abAB")});
  const BettiVector t = betti_numbers(torus);
  CHECK(t.b0 == 1);
  CHECK(t.b1 == 2);
  CHECK(t.b2 == 1);
  CHECK(t.torsion.empty());
  CHECK(hat_beta(torus) == 0);

  const TwoComplex z3 =
      presentation_complex(3, {parse_word("abAB"), parse_word("acAC"), parse_word("bcBC")});
  const BettiVector z = betti_numbers(z3);
  CHECK(z.b1 == 3);
  CHECK(z.b2 == 3);
  CHECK(hat_beta(z3) == 1);

  const TwoComplex rp2 = presentation_complex(1, {parse_word("aa")});
  const BettiVector r = betti_numbers(rp2);
  CHECK(r.b1 == 0);
  CHECK(r.b2 == 0);
  CHECK(r.torsion == std::vector<BigInt>{2});
  const BettiVector r2 = betti_numbers(rp2, 2);
  CHECK(r2.b0 == 1);
  CHECK(r2.b1 == 1);
  CHECK(r2.b2 == 1);

  TwoComplex point;
  point.vertices = {0};
  CHECK(hat_beta(point) == 1);
}

TEST_CASE("bounding functions") {
  CHECK(zr_bounding_function(2)(5) == 0);
  CHECK(zr_bounding_function(3)(2) == 2);
  CHECK(zr_bounding_function(4)(1) == 3);
  CHECK(is_supra_linear(zr_bounding_function(5), 20));
  CHECK_THROWS_AS(zr_bounding_function(1), Error);
  CHECK_FALSE(is_supra_linear(tabulated_bounding_function({0, 2, 3}), 2));
}

TEST_CASE("Betti bound checks") {
  const TwoComplex z3 =
      presentation_complex(3, {parse_word("abAB"), parse_word("acAC"), parse_word("bcBC")});
  CHECK(check_betti_bound(z3, zr_bounding_function(3)).verdict == BoundVerdict::Pass);
  const TwoComplex torus = presentation_complex(2, {parse_word("abAB")});
  CHECK(check_betti_bound(torus, zr_bounding_function(2)).verdict == BoundVerdict::Pass);

  TwoComplex spheres;
  spheres.vertices = {0, 1};
  spheres.edges[0] = {0, 1};
  spheres.cells[0].edges = {{0, 1}, {0, -1}};
  spheres.cells[1].edges = {{0, 1}, {0, -1}};
  const BettiVector b = betti_numbers(spheres);
  CHECK(b.b0 == 1);
  CHECK(b.b1 == 0);
  CHECK(b.b2 == 2);
  const BoundReport rep = check_betti_bound(spheres, zr_bounding_function(2));
  CHECK(rep.verdict == BoundVerdict::Fail);
  CHECK(rep.lhs == 3);
}

TEST_CASE("treeoids") {
  TwoComplex z;
  z.vertices = {0, 1, 2, 3, 4};
  z.edges[0] = {0, 1};   // tree
  z.edges[1] = {2, 2};   // circle
  z.edges[2] = {3, 4};   // tree with a disc on a null path
  z.cells[0].edges = {{2, 1}, {2, -1}};
  const auto t = treeoids(z);
  REQUIRE(t.size() == 2);
  CHECK(t[0].vertices == std::set<Id>{0, 1});
  CHECK(t[1].cells.size() == 1);
}

TEST_CASE("power paths") {
  AttachingPath p;
  p.edges = {{0, 1}, {1, 1}, {0, 1}, {1, 1}};
  CHECK(is_power_path(p, 2));
  CHECK_FALSE(is_power_path(p, 3));
  CHECK(is_power_path(p, 1));
}
