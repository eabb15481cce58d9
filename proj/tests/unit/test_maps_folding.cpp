#include <doctest.h>

#include "orlab/comb_map.hpp"
#include "orlab/error.hpp"
#include "orlab/folding.hpp"

using namespace orlab;

namespace {

TwoComplex torus() { return presentation_complex(2, {parse_word("abAB")}); }

// Two tori wedged at a point, mapping onto one torus. The second cell is
// attached along a rotated copy of the relator.
CombMap doubled_torus() {
  CombMap f;
  f.target = torus();
  f.source.vertices = {0};
  for (Id e = 0; e < 4; ++e) f.source.edges[e] = {0, 0};
  f.source.cells[0].edges = {{0, 1}, {1, 1}, {0, -1}, {1, -1}};
  f.source.cells[1].edges = {{3, 1}, {2, -1}, {3, -1}, {2, 1}};
  f.vertex_map[0] = 0;
  f.edge_map = {{0, {0, 1}}, {1, {1, 1}}, {2, {0, 1}}, {3, {1, 1}}};
  f.cell_map[0] = {0, 0, 1};
  f.cell_map[1] = {0, 1, 1};
  return f;
}

}  // namespace

TEST_CASE("identity map is an immersion and an isomorphism") {
  const CombMap id = identity_map(torus());
  CHECK(validate_map(id).empty());
  CHECK(is_immersion(id).ok);
  CHECK(is_isomorphism(id));
}

TEST_CASE("map validation rejects a wrong rotation") {
  CombMap f = doubled_torus();
  CHECK(validate_map(f).empty());
  f.cell_map[1].rotation = 0;
  CHECK_FALSE(validate_map(f).empty());
}

TEST_CASE("non-immersion witnesses") {
  const CombMap f = doubled_torus();
  const auto v = is_immersion(f);
  CHECK_FALSE(v.ok);
  REQUIRE(v.witness);
  CHECK(v.witness->kind == ImmersionWitness::Kind::Vertex);
}

TEST_CASE("a degree-two cover of a circle-with-disc is a branch map, not an immersion") {
  // Target: one loop a with cell a. Source: one loop x with cell x x of degree 2.
  CombMap f;
  f.target = presentation_complex(1, {parse_word("a")});
  f.source = presentation_complex(1, {parse_word("aa")});
  f.vertex_map[0] = 0;
  f.edge_map[0] = {0, 1};
  f.cell_map[0] = {0, 0, 2};
  CHECK(validate_map(f).empty());
  CHECK_FALSE(is_immersion(f).ok);
  CHECK(is_branch_map(f).ok);
}

TEST_CASE("folding the doubled torus") {
  const CombMap f = doubled_torus();
  const FoldResult r = fold_to_immersion(f);
  CHECK(is_immersion(r.immersion).ok);
  CHECK(is_isomorphism(r.immersion));
  CHECK(r.folded.cells.size() == 1);
  CHECK(r.folded.edges.size() == 2);
  // Two edge folds then one cell fold.
  REQUIRE(r.log.size() == 3);
  CHECK(r.log[0].kind == FoldStep::Kind::EdgeFold);
  CHECK(r.log[0].kept == 0);
  CHECK(r.log[0].absorbed == 2);
  CHECK(r.log[2].kind == FoldStep::Kind::CellFold);
  CHECK(r.log[2].shift == 1);
  CHECK(maps_equal(compose(r.immersion, r.surjection), f));
}

TEST_CASE("folding an immersion does nothing") {
  const FoldResult r = fold_to_immersion(identity_map(torus()));
  CHECK(r.log.empty());
  CHECK(r.folded == torus());
}

TEST_CASE("folding identifies vertices of a path mapping onto a loop") {
  // Path of two edges 0 -> 1 -> 2, the second traversed backwards over a.
  CombMap f;
  f.target = presentation_complex(1, {});
  f.source.vertices = {0, 1, 2};
  f.source.edges[0] = {0, 1};
  f.source.edges[1] = {2, 1};
  f.vertex_map = {{0, 0}, {1, 0}, {2, 0}};
  f.edge_map = {{0, {0, 1}}, {1, {0, 1}}};
  const FoldResult r = fold_to_immersion(f);
  CHECK(r.folded.vertices == std::set<Id>{0, 1});
  CHECK(r.folded.edges.size() == 1);
  CHECK(r.log.at(0).vertex_merges == std::vector<std::pair<Id, Id>>{{2, 0}});
  CHECK(maps_equal(compose(r.immersion, r.surjection), f));
}

TEST_CASE("compose rejects mismatched maps") {
  CHECK_NOTHROW(compose(identity_map(torus()), doubled_torus()));
  CHECK_THROWS_AS(compose(doubled_torus(), doubled_torus()), Error);
}
