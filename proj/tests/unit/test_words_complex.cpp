#include <doctest.h>

#include "orlab/complex.hpp"
#include "orlab/error.hpp"
#include "orlab/words.hpp"

using namespace orlab;

TEST_CASE("free and cyclic reduction") {
  CHECK(free_reduce(parse_word("aAb")) == parse_word("b"));
  CHECK(free_reduce(parse_word("abBA")).empty());
  CHECK(cyclic_reduce(parse_word("Aaba")) == parse_word("ba"));
  CHECK(cyclic_reduce(parse_word("bab")) == parse_word("bab"));
  CHECK(cyclic_reduce(parse_word("Bab")) == parse_word("a"));
  CHECK(format_word(parse_word("x0 x1^-1")) == format_word(parse_word("aB")));
  CHECK(parse_word("1").empty());
  CHECK_THROWS_AS(parse_word("a?"), Error);
}

TEST_CASE("proper powers") {
  CHECK(is_proper_power(parse_word("abab")));
  CHECK(is_proper_power(parse_word("aaa")));
  CHECK_FALSE(is_proper_power(parse_word("aab")));
  CHECK_FALSE(is_proper_power(parse_word("a")));
  // babA... is conjugate to a power only after cyclic reduction.
  CHECK(cyclic_period(parse_word("abab")) == 2);
  CHECK(cyclic_period(Word{}) == 0);
}

TEST_CASE("euler characteristic of standard complexes") {
  const TwoComplex torus = presentation_complex(2, {parse_word("abAB")});
  CHECK(euler_characteristic(torus) == 0);
  const TwoComplex rose = presentation_complex(3, {});
  CHECK(euler_characteristic(rose) == -2);
  const TwoComplex rp2 = presentation_complex(1, {parse_word("aa")});
  CHECK(euler_characteristic(rp2) == 1);
}

TEST_CASE("validation reports broken attaching paths") {
  TwoComplex k;
  k.vertices = {0, 1};
  k.edges[0] = {0, 1};
  k.cells[0].edges = {{0, 1}};
  CHECK_FALSE(validate(k).empty());
  CHECK_THROWS_AS(require_valid(k), Error);
  k.cells[0].edges = {{0, 1}, {0, -1}};
  CHECK(validate(k).empty());
  k.cells[0].rotation = 5;
  CHECK_FALSE(validate(k).empty());
}

TEST_CASE("components are ordered by least vertex") {
  TwoComplex k;
  k.vertices = {3, 1, 7};
  k.edges[5] = {7, 3};
  const auto parts = components(k);
  REQUIRE(parts.size() == 2);
  CHECK(*parts[0].vertices.begin() == 1);
  CHECK(parts[1].vertices == std::set<Id>{3, 7});
  CHECK(parts[1].edges.count(5));
}

TEST_CASE("subdividing an edge keeps paths closed and chi fixed") {
  const TwoComplex torus = presentation_complex(2, {parse_word("abAB")});
  const Subdivision sub = subdivide_edge(torus, 0);
  CHECK(validate(sub.complex).empty());
  CHECK(euler_characteristic(sub.complex) == 0);
  CHECK(sub.complex.cells.at(0).size() == 6);
  CHECK(sub.complex.edges.at(sub.halves[0]).source == sub.midpoint);
  CHECK(sub.complex.edges.at(sub.halves[1]).source == sub.midpoint);
}

TEST_CASE("presentation of the torus") {
  const TwoComplex torus = presentation_complex(2, {parse_word("abAB")});
  const Presentation p = fundamental_group_presentation(torus, 0);
  CHECK(p.generators == std::vector<Id>{0, 1});
  REQUIRE(p.relators.size() == 1);
  CHECK(p.relators[0] == parse_word("abAB"));
}

TEST_CASE("cyclic equality of paths and periods") {
  const std::vector<DirectedEdge> p{{0, 1}, {1, 1}, {0, -1}, {1, -1}};
  std::vector<DirectedEdge> q{{1, 1}, {0, -1}, {1, -1}, {0, 1}};
  CHECK(cyclically_equal(p, q));
  CHECK(cyclically_equal(p, inverse_path(q)));
  CHECK(path_period(p) == 4);
  const std::vector<DirectedEdge> sq{{0, 1}, {1, 1}, {0, 1}, {1, 1}};
  CHECK(path_period(sq) == 2);
}

TEST_CASE("free edges") {
  const TwoComplex disc = presentation_complex(2, {parse_word("ab")});
  CHECK(find_free_edge(disc).has_value());
  const TwoComplex torus = presentation_complex(2, {parse_word("abAB")});
  CHECK_FALSE(find_free_edge(torus).has_value());
}
