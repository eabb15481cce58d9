#include <doctest.h>

#include "families.hpp"
#include "orlab/bounds.hpp"
#include "orlab/collapse.hpp"
#include "orlab/error.hpp"

using namespace orlab;

namespace {

struct Setup {
  CombMap f;
  RelatorSplit split;
  EdgeClassification cls;
  TwoComplex z;
};

Setup setup(int degree) {
  Setup s;
  s.f = square_disc(degree);
  s.split = split_relator(ab_enlargement(), MagnusOrder());
  s.cls = classify_edges(s.f, s.split);
  s.z = remove_associated(s.f.source, s.cls);
  return s;
}

}  // namespace

TEST_CASE("Z' removes one edge and one cell per cell over alpha") {
  const Setup s = setup(1);
  CHECK(s.z.cells.empty());
  CHECK(s.z.edges.size() == 3);
  CHECK(euler_characteristic(s.z) == euler_characteristic(s.f.source));
  const BranchedCover c = branched_cover(ab_enlargement(), 3);
  const EdgeClassification cls = classify_edges(c.projection, s.split);
  const TwoComplex z = remove_associated(c.complex, cls);
  CHECK(z.cells.empty());
  CHECK(z.edges.size() == 2);
  CHECK(euler_characteristic(z) == euler_characteristic(c.complex));
}

TEST_CASE("trivial-image components") {
  const Setup s = setup(1);
  const auto cert = trivial_image_component(s.z, s.f);
  REQUIRE(cert);
  CHECK(cert->generator_images.empty());

  // A circle over the loop a has no certificate.
  CombMap circle;
  circle.target = ab_enlargement().complex;
  circle.source.vertices = {0};
  circle.source.edges[0] = {0, 0};
  circle.vertex_map[0] = 0;
  circle.edge_map[0] = {0, 1};
  CHECK_FALSE(trivial_image_component(circle.source, circle));

  // A circle reading a a^-1 is certified.
  CombMap back;
  back.target = circle.target;
  back.source.vertices = {0, 1};
  back.source.edges[0] = {0, 1};
  back.source.edges[1] = {0, 1};
  back.vertex_map = {{0, 0}, {1, 0}};
  back.edge_map = {{0, {0, 1}}, {1, {0, 1}}};
  const auto c2 = trivial_image_component(back.source, back);
  REQUIRE(c2);
  REQUIRE(c2->generator_images.size() == 1);
  CHECK(c2->generator_images[0].second.empty());
}

TEST_CASE("successor swaps the two halves of a lone associated edge") {
  const Setup s = setup(1);
  CollapseState state;
  state.vertices = s.z.vertices;
  for (const auto& [id, e] : s.z.edges) state.edges.insert(id);
  const auto frontier = frontier_half_edges(s.f.source, s.cls, state);
  REQUIRE(frontier.size() == 2);
  const HalfEdge next = successor(s.f.source, s.cls, state, frontier[0]);
  CHECK(next == frontier[1]);
  CHECK(successor(s.f.source, s.cls, state, frontier[1]) == frontier[0]);
  CHECK_THROWS_AS(successor(s.f.source, s.cls, state, HalfEdge{1, 0}), Error);
}

TEST_CASE("a disc collapses to its tree in one step") {
  const Setup s = setup(1);
  const CollapseOutcome out = almost_collapse_sequence(s.f, s.cls, s.z, true);
  REQUIRE(out.certificate);
  REQUIRE(out.certificate->steps.size() == 1);
  CHECK(out.certificate->steps[0].k == 1);
  CHECK(replay_certificate(s.f.source, *out.certificate) == s.z);
  CHECK(homology_bookkeeping_holds(s.f.source, *out.certificate));
}

TEST_CASE("a cell on S^2 gives one almost-collapse with k = 2") {
  const Setup s = setup(2);
  CHECK(is_branch_map(s.f).ok);
  const CollapseOutcome out = almost_collapse_sequence(s.f, s.cls, s.z, false);
  REQUIRE(out.certificate);
  REQUIRE(out.certificate->steps.size() == 1);
  CHECK(out.certificate->steps[0].k == 2);
  CHECK(betti_numbers(s.f.source).torsion == std::vector<BigInt>{2});
  CHECK(homology_bookkeeping_holds(s.f.source, *out.certificate));
  CHECK_THROWS_AS(almost_collapse_sequence(s.f, s.cls, s.z, true), Error);
}

TEST_CASE("Y' equal to T needs no steps; tampered certificates fail replay") {
  const Setup s = setup(1);
  const EdgeClassification none;
  const CollapseOutcome out = almost_collapse_sequence(identity_map(s.z), none, s.z, true);
  REQUIRE(out.certificate);
  CHECK(out.certificate->steps.empty());

  CollapseCertificate bad = *almost_collapse_sequence(s.f, s.cls, s.z, true).certificate;
  bad.steps[0].k = 3;
  CHECK_THROWS_AS(replay_certificate(s.f.source, bad), Error);
}

TEST_CASE("contractibility") {
  TwoComplex point;
  point.vertices = {0};
  CHECK(contractibility_report(point).verdict == Contractibility::Contractible);
  const TwoComplex circle = presentation_complex(1, {});
  CHECK(contractibility_report(circle).verdict == Contractibility::NotContractible);
  const TwoComplex disc = presentation_complex(1, {parse_word("a")});
  const ContractibilityReport d = contractibility_report(disc);
  CHECK(d.verdict == Contractibility::Contractible);
  CHECK(d.collapses.size() == 1);
  CHECK(contractibility_report(square_disc(1).source).verdict == Contractibility::Contractible);
  CHECK(contractibility_report(square_disc(2).source).verdict == Contractibility::NotContractible);
  // Dunce hat: one edge, one cell a a a^-1. Contractible but not collapsible.
  const TwoComplex dunce = presentation_complex(1, {parse_word("aaA")});
  CHECK(contractibility_report(dunce).verdict == Contractibility::Unknown);
}

TEST_CASE("non-positive immersions audit") {
  CombMap circle;
  circle.target = ab_enlargement().complex;
  circle.source.vertices = {0};
  circle.source.edges[0] = {0, 0};
  circle.vertex_map[0] = 0;
  circle.edge_map[0] = {0, 1};
  const auto rep = nonpositive_immersions_audit({circle, square_disc(1)});
  REQUIRE(rep.size() == 2);
  CHECK(rep[0].verdict == BoundVerdict::Pass);
  CHECK(rep[1].verdict == BoundVerdict::Pass);
  CHECK(rep[1].contractibility == Contractibility::Contractible);
}
