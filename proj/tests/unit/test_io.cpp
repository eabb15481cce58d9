#include <doctest.h>

#include "families.hpp"
#include "orlab/enumerate.hpp"
#include "orlab/error.hpp"
#include "orlab/io.hpp"

using namespace orlab;

TEST_CASE("complex round trip is byte-stable") {
  const std::string text =
      R"({"cells":[[0,[[2,1],[0,1],[2,-1],[1,1]]]],"edges":[[0,0,0],[1,1,1],[2,1,0]],"vertices":[0,1]})"
      "\n";
  const TwoComplex k = complex_from_json(parse_json(text));
  CHECK(k == ab_enlargement().complex);
  CHECK(dump_canonical(complex_to_json(k)) == text);
}

TEST_CASE("unordered input serialises in id order") {
  const auto j = parse_json(R"({"vertices":[3,1],"edges":[[7,3,1],[2,1,1]],"cells":[]})");
  CHECK(dump_canonical(complex_to_json(complex_from_json(j))) ==
        "{\"cells\":[],\"edges\":[[2,1,1],[7,3,1]],\"vertices\":[1,3]}\n");
}

TEST_CASE("malformed complexes are input errors") {
  for (const char* text : {R"({"vertices":[0,0],"edges":[],"cells":[]})", R"({"vertices":[0],"edges":[[0,0]],"cells":[]})",
                           R"({"vertices":[0],"edges":[[0,0,0]],"cells":[[0,[[0,2]]]]})", R"({"vertices":[0.5]})", "[1,"}) {
    CHECK_THROWS_AS(complex_from_json(parse_json(text)), Error);
  }
}

TEST_CASE("maps and enumerated instances round trip") {
  EnumerationBudget b;
  b.vertices = 4;
  b.edges = 5;
  b.cells = 2;
  b.max_degree = 2;
  long seen = 0;
  enumerate_immersions(klein_enlargement().complex, b, [&](const CombMap& f) {
    const std::string text = dump_canonical(map_to_json(f));
    const CombMap g = map_from_json(parse_json(text));
    CHECK(g == f);
    CHECK(dump_canonical(map_to_json(g)) == text);
    ++seen;
  });
  CHECK(seen > 10);
  const CombMap sq = square_disc(2);
  CHECK(map_from_json(map_to_json(sq)) == sq);
}

TEST_CASE("pictures and certificates round trip") {
  Picture p;
  p.surface = annulus();
  p.vertices = {{{0, 1}, {2, -1}}};
  p.arcs.push_back(Arc{2, {ArcEnd{0, 1, -1, 0}, ArcEnd{-1, 0, 1, 3}}});
  p.circles = {0};
  const std::string text = dump_canonical(picture_to_json(p));
  const Picture q = picture_from_json(parse_json(text));
  CHECK(q.surface == p.surface);
  CHECK(q.vertices == p.vertices);
  CHECK(q.arcs[0].ends[1].boundary == 1);
  CHECK(q.arcs[0].ends[1].index == 3);
  CHECK(dump_canonical(picture_to_json(q)) == text);

  CollapseCertificate c;
  c.target = two_circles();
  c.steps = {{0, 2, 1}, {4, 5, 3}};
  const CollapseCertificate d = certificate_from_json(parse_json(dump_canonical(certificate_to_json(c))));
  CHECK(d.target == c.target);
  CHECK(d.steps.size() == 2);
  CHECK(d.steps[1].k == 3);
}

TEST_CASE("enlargement files carry e and alpha") {
  const SimpleEnlargement y = ab_enlargement();
  const SimpleEnlargement z = enlargement_from_json(enlargement_to_json(y));
  CHECK(z.complex == y.complex);
  CHECK(z.e == 2);
  CHECK(z.alpha == y.alpha);
  CHECK_THROWS_AS(enlargement_from_json(complex_to_json(y.complex)), Error);
  CHECK(enlargement_from_json(complex_to_json(y.complex), 2).alpha == y.alpha);
}
