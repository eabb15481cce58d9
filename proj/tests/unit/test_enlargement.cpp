#include <doctest.h>

#include "families.hpp"
#include "orlab/error.hpp"

using namespace orlab;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidInput;
}

std::vector<DirectedEdge> repeat(const std::vector<DirectedEdge>& p, int k) {
  std::vector<DirectedEdge> out;
  for (int i = 0; i < k; ++i) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

TEST_CASE("valid simple enlargements") {
  const SimpleEnlargement ab = ab_enlargement();
  CHECK(ab.joins_components);
  CHECK(ab.evidence.crossings == 2);
  CHECK(ab.evidence.minimal_crossings == 2);
  CHECK(ab.evidence.proper_power == false);
  CHECK(euler_characteristic(ab.complex) == 0);

  const SimpleEnlargement k = klein_enlargement();
  CHECK_FALSE(k.joins_components);
  CHECK(k.evidence.crossings == 2);
  CHECK(k.evidence.minimal_crossings == 2);
}

TEST_CASE("enlargement errors") {
  const NewEdge e{1, 0, 2};
  CHECK(code_of([&] { build_simple_enlargement(two_circles(), e, repeat(ab_relator(), 2)); }) ==
        ErrorCode::ProperPower);
  CHECK(code_of([&] { build_simple_enlargement(two_circles(), e, std::vector<DirectedEdge>{{0, 1}}); }) ==
        ErrorCode::NoE);
  CHECK(code_of([&] {
          build_simple_enlargement(two_circles(), e,
                                   std::vector<DirectedEdge>{{2, 1}, {0, 1}, {2, -1}, {2, 1}, {2, -1}, {1, 1}});
        }) == ErrorCode::NotMinimal);
  CHECK(code_of([&] { build_simple_enlargement(two_circles(), e, std::vector<DirectedEdge>{{2, 1}, {0, 1}}); }) ==
        ErrorCode::NotClosed);
  CHECK(code_of([&] {
          build_simple_enlargement(one_circle(), {0, 0, 1}, std::vector<DirectedEdge>{{0, 1}, {1, 1}, {1, -1}});
        }) == ErrorCode::NotMinimal);
  CHECK(code_of([&] {
          build_simple_enlargement(two_circles(), {0, 0, 2}, std::vector<DirectedEdge>{{2, 1}, {0, 1}});
        }) == ErrorCode::InvalidInput);
}

TEST_CASE("relator path syntax") {
  CHECK(parse_relator_path("e 0 -e 1", 2) == ab_relator());
  CHECK(parse_relator_path("-0,e", 5) == std::vector<DirectedEdge>{{0, -1}, {5, 1}});
  CHECK_THROWS_AS(parse_relator_path("x", 2), Error);
}

TEST_CASE("branched covers") {
  const SimpleEnlargement ab = ab_enlargement();
  const BranchedCover one = branched_cover(ab, 1);
  CHECK(one.complex == ab.complex);
  CHECK(is_isomorphism(one.projection));
  for (long n = 2; n <= 4; ++n) {
    const BranchedCover c = branched_cover(ab, n);
    CHECK(c.complex.cells.at(0).size() == 4 * static_cast<std::size_t>(n));
    CHECK(euler_characteristic(c.complex) == euler_characteristic(ab.complex));
    CHECK(is_branch_map(c.projection).ok);
    CHECK_FALSE(is_immersion(c.projection).ok);
    CHECK(is_branch_map(branched_cover(klein_enlargement(), n).projection).ok);
  }
  CHECK_THROWS_AS(branched_cover(ab, 0), Error);
}

TEST_CASE("split of R = ab picks the unique minimum of the 2x2 table") {
  const SimpleEnlargement ab = ab_enlargement();
  const MagnusOrder order;
  const RelatorSplit s = split_relator(ab, order);
  REQUIRE(s.prefixes.size() == 2);
  CHECK(s.prefixes[1].empty());
  // With g_2 = 1 the candidates are g_1, g_1^-1 and 1.
  const bool g1_positive = is_positive(s.prefixes[0]) == OrderVerdict::Greater;
  CHECK(s.i == (g1_positive ? 1u : 2u));
  CHECK(s.j == (g1_positive ? 2u : 1u));
  CHECK(s.low_position != s.high_position);
  CHECK(ab.complex.cells.at(0).edges[s.low_position].edge == 2);
  CHECK(ab.complex.cells.at(0).edges[s.high_position].edge == 2);
  CHECK(s.u_path.size() + s.v_path.size() == 6);
  // U^-1 = V modulo R; here both are single generators.
  CHECK(s.u_word.size() == 1);
  CHECK(s.v_word.size() == 1);
}

TEST_CASE("split is invariant under pre-rotation of R") {
  for (const auto& family : {ab_relator(), klein_relator()}) {
    const bool ab = family == ab_relator();
    RelatorSplit first;
    for (std::size_t r = 0; r < family.size(); ++r) {
      std::vector<DirectedEdge> rotated(family.begin() + static_cast<long>(r), family.end());
      rotated.insert(rotated.end(), family.begin(), family.begin() + static_cast<long>(r));
      const SimpleEnlargement y = ab ? build_simple_enlargement(two_circles(), {1, 0, 2}, rotated, 0)
                                     : build_simple_enlargement(one_circle(), {0, 0, 1}, rotated, 0);
      const RelatorSplit s = split_relator(y, MagnusOrder());
      auto uv = s.u_path;
      uv.insert(uv.end(), s.v_path.begin(), s.v_path.end());
      if (r == 0) {
        first = s;
        continue;
      }
      auto uv0 = first.u_path;
      uv0.insert(uv0.end(), first.v_path.begin(), first.v_path.end());
      CHECK(uv == uv0);
      CHECK(s.u_path.size() == first.u_path.size());
    }
  }
}

TEST_CASE("proper initial segments of UV are positive") {
  for (const auto& y : {ab_enlargement(), klein_enlargement()}) {
    const RelatorSplit s = split_relator(y, MagnusOrder());
    const std::size_t L = s.prefixes.size();
    for (std::size_t k = 1; k <= L; ++k) {
      if (k == s.j) continue;
      const Word seg = free_reduce(concat(inverse(s.prefixes[s.j - 1]), s.prefixes[k - 1]));
      CHECK(is_positive(seg) == OrderVerdict::Greater);
    }
  }
}

TEST_CASE("classification on the branched cover") {
  const SimpleEnlargement ab = ab_enlargement();
  const RelatorSplit s = split_relator(ab, MagnusOrder());
  for (long n = 1; n <= 3; ++n) {
    const BranchedCover c = branched_cover(ab, n);
    const EdgeClassification cls = classify_edges(c.projection, s);
    REQUIRE(cls.cells.size() == 1);
    const CellClassification& cell = cls.cells.at(0);
    CHECK(cell.low.size() == static_cast<std::size_t>(n));
    CHECK(cell.high.size() == static_cast<std::size_t>(n));
    for (long k = 0; k < n; ++k) {
      CHECK(cell.low[static_cast<std::size_t>(k)].first == s.low_position + 4 * static_cast<std::size_t>(k));
    }
    CHECK(cell.associated == 2);
    CHECK(cell.distinguished_rotation == s.low_position);
  }
}

TEST_CASE("two cells sharing a low edge are rejected") {
  const SimpleEnlargement ab = ab_enlargement();
  const RelatorSplit s = split_relator(ab, MagnusOrder());
  CombMap f = identity_map(ab.complex);
  f.source.cells[1] = f.source.cells.at(0);
  f.cell_map[1] = {0, 0, 1};
  CHECK(validate_map(f).empty());
  CHECK_THROWS_AS(classify_edges(f, s), Error);
}
