#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "families.hpp"
#include "orlab/error.hpp"
#include "orlab/harness.hpp"
#include "orlab/bounds.hpp"
#include "orlab/homology.hpp"

using namespace orlab;

namespace {

SuiteOptions small(std::set<Check> checks) {
  SuiteOptions o;
  o.budget = EnumerationBudget{4, 6, 2, 2, 0, true};
  o.checks = std::move(checks);
  o.picture_vertices = 2;
  return o;
}

// X u e with the identity into Y: vertices 0, 1; loops a, b; e from 1 to 0.
CombMap skeleton_stage() {
  const SimpleEnlargement y = ab_family();
  CombMap f = identity_map(y.complex);
  f.source.cells.clear();
  f.cell_map.clear();
  return f;
}

}  // namespace

TEST_CASE("families match the test fixtures") {
  CHECK(ab_family().complex == ab_enlargement().complex);
  CHECK(klein_family().complex == klein_enlargement().complex);
}

TEST_CASE("check names round trip") {
  for (Check c : all_checks()) CHECK(parse_check(check_name(c)) == c);
  CHECK_THROWS_AS(parse_check("6beta"), Error);
}

TEST_CASE("empty budget gives an empty report") {
  SuiteOptions o = small({Check::PPower, Check::FiveBeta, Check::ElevenK, Check::Nonpos, Check::Collapse});
  o.budget = EnumerationBudget{0, 0, 0, 1, 0, true};
  const SuiteReport r = run_suite(ab_family(), "ab", o);
  CHECK(r.fails() == 0);
  for (const auto& c : r.checks) CHECK(c.instances == 0);
}

TEST_CASE("small suites have no Fail and are deterministic") {
  for (const auto& y : {ab_family(), klein_family()}) {
    const SuiteOptions o = small(all_checks());
    const SuiteReport a = run_suite(y, "y", o);
    CHECK(a.fails() == 0);
    CHECK(!a.checks.empty());
    long collapse_certified = 0;
    for (const auto& c : a.checks) {
      CHECK(c.instances == c.pass + c.fail + c.not_applicable + c.inconclusive);
      if (c.check == Check::Collapse) collapse_certified = c.tallies.at("certified");
    }
    CHECK(collapse_certified > 0);
    const SuiteReport b = run_suite(y, "y", o);
    CHECK(dump_canonical(a.to_json()) == dump_canonical(b.to_json()));
  }
}

TEST_CASE("DH fails at n = 2 with three vertices; witnesses replay") {
  const auto dir = std::filesystem::temp_directory_path() / "orlab_witness_test";
  std::filesystem::remove_all(dir);
  SuiteOptions o = small({Check::Dh});
  o.covers = {2};
  o.picture_vertices = 3;
  o.surfaces = {disk()};
  o.witness_dir = dir.string();
  const SuiteReport r = run_suite(ab_family(), "ab", o);
  REQUIRE(r.fails() > 0);
  REQUIRE(!r.witness_files.empty());
  for (const auto& path : r.witness_files) {
    const ReplayResult rr = replay_witness(read_json_file(path));
    CHECK(rr.check == "dh");
    CHECK(rr.verdict == BoundVerdict::Fail);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("a tampered witness no longer reproduces") {
  Json bundle{{"check", "euler"}, {"complex", complex_to_json(ab_family().complex)}, {"verdict", "Fail"}};
  CHECK(replay_witness(bundle).verdict == BoundVerdict::Pass);
  CHECK_THROWS_AS(replay_witness(Json{{"check", "nothing"}}), Error);
}

TEST_CASE("coherence step: a disc along R kills one loop") {
  const CombMap stage = skeleton_stage();
  const CoherenceStep s = demo_coherence_step(stage, ab_relator(), 0);
  CHECK(betti_numbers(stage.source).b1 == 2);
  CHECK(betti_numbers(s.next).b1 == 1);
  CHECK(is_immersion(s.immersion));
  CHECK(maps_equal(compose(s.immersion, s.inclusion), stage));
}

TEST_CASE("coherence step: a word already trivial changes nothing") {
  const SimpleEnlargement y = ab_family();
  const CombMap stage = identity_map(y.complex);
  const CoherenceStep s = demo_coherence_step(stage, ab_relator(), 0);
  CHECK(s.next.cell_count() == y.complex.cell_count());
  CHECK(is_isomorphism(s.immersion));
}

TEST_CASE("coherence step: two iterations compose") {
  const CoherenceStep first = demo_coherence_step(skeleton_stage(), ab_relator(), 0);
  CombMap stage2 = first.immersion;
  // The second disc reads R from its second letter.
  std::vector<DirectedEdge> rotated{{0, 1}, {2, -1}, {1, 1}, {2, 1}};
  const CoherenceStep second = demo_coherence_step(stage2, rotated, 0, 1);
  CHECK(is_immersion(second.immersion));
  const CombMap both = compose(second.inclusion, first.inclusion);
  CHECK(maps_equal(compose(second.immersion, both), skeleton_stage()));
  CHECK(betti_numbers(second.next).b1 == 1);
}

TEST_CASE("coherence step rejects a boundary off the cell") {
  std::vector<DirectedEdge> wrong{{2, 1}, {1, 1}, {2, -1}, {0, 1}};
  CHECK_THROWS_AS(demo_coherence_step(skeleton_stage(), wrong, 0), Error);
  CHECK_THROWS_AS(demo_coherence_step(skeleton_stage(), {{0, 1}}, 0), Error);
}

TEST_CASE("two discs over alpha_2 glued by a half turn break the 5beta bound") {
  // Lift R^2 to a circle of 2|R| distinct vertices and cap it twice, the
  // second cap read from position |R|.
  for (const auto& y : {ab_family(), klein_family()}) {
    const BranchedCover bc = branched_cover(y, 2);
    const auto& word = bc.complex.cells.at(bc.alpha).edges;
    const Id len = static_cast<Id>(word.size());
    CombMap f;
    f.target = bc.complex;
    std::vector<DirectedEdge> path;
    for (Id i = 0; i < len; ++i) {
      f.source.vertices.insert(i);
      const Id next = (i + 1) % len;
      const DirectedEdge d = word[i];
      f.source.edges[i] = d.sign > 0 ? Edge{i, next} : Edge{next, i};
      f.edge_map[i] = {d.edge, 1};
      f.vertex_map[i] = d.sign > 0 ? bc.complex.edges.at(d.edge).source : bc.complex.edges.at(d.edge).target;
      path.push_back({i, d.sign});
    }
    f.source.cells[0].edges = path;
    std::rotate(path.begin(), path.begin() + len / 2, path.end());
    f.source.cells[1].edges = path;
    f.cell_map[0] = {bc.alpha, 0, 1};
    f.cell_map[1] = {bc.alpha, 0, 1};
    CHECK(validate_map(f).empty());
    CHECK(is_immersion(f));
    CHECK(euler_characteristic(f.source) == 2);
    CHECK(betti_numbers(f.source).b1 == 0);
    CHECK(!find_free_edge(f.source));
    const BoundReport r = check_5beta(f, bc.alpha, 2);
    CHECK(r.verdict == BoundVerdict::Fail);
    CHECK(r.lhs == 2);
    CHECK(r.rhs == 0);
    CHECK(check_11k(f, bc.alpha, 2).verdict == BoundVerdict::Pass);
  }
}

TEST_CASE("explicit instances are routed by target") {
  const SimpleEnlargement y = ab_family();
  SuiteOptions o = small({Check::PPower, Check::FiveBeta, Check::ElevenK});
  o.instances = std::vector<CombMap>{identity_map(y.complex), identity_map(branched_cover(y, 3).complex)};
  const SuiteReport r = run_suite(y, "ab", o);
  std::map<std::string, long> seen;
  for (const auto& c : r.checks) seen[std::string(check_name(c.check)) + c.params] = c.instances;
  CHECK(seen["p-powerp=2"] == 1);
  CHECK(seen["11kn=3"] == 1);
  CHECK(seen.count("11kn=2") == 0);
  o.instances->push_back(identity_map(klein_family().complex));
  CHECK_THROWS_AS(run_suite(y, "ab", o), Error);
}
