#include <doctest.h>

#include "families.hpp"
#include "orlab/pictures.hpp"

using namespace orlab;

namespace {

// R^2 and its mirror image joined slot to slot: a cancelling pair on the sphere.
Picture cancelling_pair() {
  Picture p;
  p.surface = {0, 0};
  std::vector<DirectedEdge> u;
  for (int k = 0; k < 2; ++k) u.insert(u.end(), {{2, 1}, {0, 1}, {2, -1}, {1, 1}});
  p.vertices = {u, inverse_path(u)};
  for (std::size_t k = 0; k < 4; ++k) {
    const std::size_t i = (5 - k) % 4;
    p.arcs.push_back({2, {ArcEnd{0, 2 * k, -1, 0}, ArcEnd{1, 2 * i + 1, -1, 0}}});
  }
  return p;
}

}  // namespace

TEST_CASE("dh bound values") {
  CHECK(dh_bound(2, 1, disk()) == 2);
  CHECK(dh_bound(3, 2, annulus()) == 6);
  CHECK(dh_bound(2, 1, torus()) == 0);
  CHECK(disk().euler() == 1);
  CHECK(annulus().euler() == 0);
  CHECK(torus().euler() == 0);
}

TEST_CASE("cancelling pair is valid and not reduced") {
  const auto y = ab_enlargement();
  const Picture p = cancelling_pair();
  CHECK(validate_picture(p, y, 2).empty());
  const ReducedVerdict r = is_reduced(p, y);
  CHECK_FALSE(r.reduced);
  REQUIRE(r.pair);
  CHECK(*r.pair == std::pair<int, int>{0, 1});
  CHECK(check_dh(p, y, 2).verdict == BoundVerdict::NotApplicable);
}

TEST_CASE("picture validation catches bad input") {
  const auto y = ab_enlargement();
  Picture p = cancelling_pair();
  CHECK_FALSE(validate_picture(p, y, 3).empty());  // wrong power

  Picture same_sign = p;
  same_sign.arcs[0].ends[1].slot = 1;  // e at both ends, slot 1 twice
  CHECK_FALSE(validate_picture(same_sign, y, 2).empty());

  Picture non_e = p;
  non_e.arcs[0].ends[0].slot = 1;
  CHECK_FALSE(validate_picture(non_e, y, 2).empty());

  Picture missing = p;
  missing.arcs.pop_back();
  CHECK_FALSE(validate_picture(missing, y, 2).empty());

  // One vertex with every slot on the boundary of a disk.
  Picture lone;
  lone.surface = disk();
  lone.vertices = {p.vertices[0]};
  for (std::size_t k = 0; k < 4; ++k) {
    ArcEnd b;
    b.boundary = 0;
    b.index = -static_cast<long>(k);
    lone.arcs.push_back({2, {ArcEnd{0, 2 * k, -1, 0}, b}});
  }
  CHECK(validate_picture(lone, y, 2).empty());
  const DhReport r = check_dh(lone, y, 2);
  CHECK(r.verdict == BoundVerdict::Pass);
  CHECK(r.count == 4);
  CHECK(r.bound == 2);
  lone.surface = torus();
  CHECK_FALSE(validate_picture(lone, y, 2).empty());
}

TEST_CASE("loop arc around a nontrivial corner is rejected") {
  const auto y = ab_enlargement();
  Picture p = cancelling_pair();
  Picture loop;
  loop.surface = disk();
  loop.vertices = {p.vertices[0]};
  // slots 0 (+) and 2 (-) joined: the enclosed corner reads a.
  loop.arcs.push_back({2, {ArcEnd{0, 0, -1, 0}, ArcEnd{0, 2, -1, 0}}});
  ArcEnd b0, b1;
  b0.boundary = b1.boundary = 0;
  b1.index = 1;
  loop.arcs.push_back({2, {ArcEnd{0, 4, -1, 0}, b0}});
  loop.arcs.push_back({2, {ArcEnd{0, 6, -1, 0}, b1}});
  CHECK_FALSE(validate_picture(loop, y, 2).empty());
}

TEST_CASE("enumerated pictures agree with the checkers") {
  for (const auto& y : {ab_enlargement(), klein_enlargement()}) {
    long visited = 0;
    const DhSuite suite = dh_suite(y, 2, 2, {disk(), annulus(), torus()}, [&](const Picture& p, const DhReport& r) {
      ++visited;
      const auto bad = validate_picture(p, y, 2);
      CHECK_MESSAGE(bad.empty(), (bad.empty() ? "" : bad.front().message));
      if (!bad.empty()) return;
      const DhReport c = check_dh(p, y, 2);
      CHECK(c.verdict == r.verdict);
      CHECK(c.count == r.count);
      CHECK(c.bound == r.bound);
    });
    CHECK(visited > 0);
    CHECK(suite.failures.empty());
    for (const DhCell& c : suite.cells) {
      CHECK(c.fails == 0);
      if (c.vertices == 1 && c.surface == disk()) {
        CHECK(c.bound == 2);
        REQUIRE(c.min_count);
        CHECK(*c.min_count >= 2);
      }
    }
  }
}
