#include "orlab/io.hpp"

#include <fstream>
#include <sstream>

#include "orlab/error.hpp"

namespace orlab {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad("expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

const Json& array(const Json& j, const char* what, std::size_t size = 0) {
  if (!j.is_array() || (size && j.size() != size)) {
    bad(std::string(what) + ": expected an array" + (size ? " of " + std::to_string(size) : ""));
  }
  return j;
}

std::int64_t integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + ": expected an integer");
  return j.get<std::int64_t>();
}

int sign_of(const Json& j) {
  const auto s = integer(j, "sign");
  if (s != 1 && s != -1) bad("sign must be 1 or -1");
  return static_cast<int>(s);
}

template <class M>
void insert_unique(M& m, Id id, typename M::mapped_type v, const char* what) {
  if (!m.emplace(id, std::move(v)).second) bad(std::string("duplicate ") + what + " id " + std::to_string(id));
}

Json end_to_json(const ArcEnd& e) {
  if (e.on_boundary()) return Json{{"boundary", e.boundary}, {"index", e.index}};
  return Json{{"slot", e.slot}, {"vertex", e.vertex}};
}

ArcEnd end_from_json(const Json& j) {
  ArcEnd e;
  if (j.is_object() && j.contains("boundary")) {
    e.boundary = static_cast<int>(integer(j["boundary"], "boundary"));
    e.index = integer(field(j, "index"), "index");
    if (e.boundary < 0) bad("boundary component must be non-negative");
    return e;
  }
  e.vertex = static_cast<int>(integer(field(j, "vertex"), "vertex"));
  const auto slot = integer(field(j, "slot"), "slot");
  if (e.vertex < 0 || slot < 0) bad("arc end must name a vertex slot or a boundary point");
  e.slot = static_cast<std::size_t>(slot);
  return e;
}

Json half_to_json(const HalfEdge& h) { return Json::array({h.edge, h.end}); }

Json ids_to_json(const std::set<Id>& s) { return Json(std::vector<Id>(s.begin(), s.end())); }

}  // namespace

std::string dump_canonical(const Json& j) { return j.dump() + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path);
  out << text;
}

Json path_to_json(const std::vector<DirectedEdge>& path) {
  Json out = Json::array();
  for (const auto& d : path) out.push_back(Json::array({d.edge, d.sign}));
  return out;
}

std::vector<DirectedEdge> path_from_json(const Json& j) {
  std::vector<DirectedEdge> out;
  for (const auto& d : array(j, "path")) {
    array(d, "path entry", 2);
    out.push_back({integer(d[0], "edge"), sign_of(d[1])});
  }
  return out;
}

Json complex_to_json(const TwoComplex& k) {
  Json cells = Json::array();
  for (const auto& [id, p] : k.cells) {
    Json c = Json::array({id, path_to_json(p.edges)});
    if (p.rotation != 0) c.push_back(p.rotation);
    cells.push_back(std::move(c));
  }
  Json edges = Json::array();
  for (const auto& [id, e] : k.edges) edges.push_back(Json::array({id, e.source, e.target}));
  return Json{{"cells", std::move(cells)}, {"edges", std::move(edges)}, {"vertices", ids_to_json(k.vertices)}};
}

TwoComplex complex_from_json(const Json& j) {
  TwoComplex k;
  for (const auto& v : array(field(j, "vertices"), "vertices")) {
    if (!k.vertices.insert(integer(v, "vertex")).second) bad("duplicate vertex id");
  }
  for (const auto& e : array(field(j, "edges"), "edges")) {
    array(e, "edge", 3);
    insert_unique(k.edges, integer(e[0], "edge id"), Edge{integer(e[1], "source"), integer(e[2], "target")}, "edge");
  }
  for (const auto& c : array(field(j, "cells"), "cells")) {
    if (!c.is_array() || c.size() < 2 || c.size() > 3) bad("cell: expected [id, path] or [id, path, basepoint]");
    AttachingPath p;
    p.edges = path_from_json(c[1]);
    if (c.size() == 3) p.rotation = static_cast<std::size_t>(integer(c[2], "basepoint"));
    insert_unique(k.cells, integer(c[0], "cell id"), std::move(p), "cell");
  }
  return k;
}

Json map_to_json(const CombMap& f) {
  Json vm = Json::array(), em = Json::array(), cm = Json::array();
  for (const auto& [id, v] : f.vertex_map) vm.push_back(Json::array({id, v}));
  for (const auto& [id, e] : f.edge_map) em.push_back(Json::array({id, e.edge, e.sign}));
  for (const auto& [id, c] : f.cell_map) cm.push_back(Json::array({id, c.cell, c.rotation, c.degree}));
  return Json{{"cell_map", std::move(cm)},
              {"edge_map", std::move(em)},
              {"source", complex_to_json(f.source)},
              {"target", complex_to_json(f.target)},
              {"vertex_map", std::move(vm)}};
}

CombMap map_from_json(const Json& j) {
  CombMap f;
  f.source = complex_from_json(field(j, "source"));
  f.target = complex_from_json(field(j, "target"));
  for (const auto& v : array(field(j, "vertex_map"), "vertex_map")) {
    array(v, "vertex_map entry", 2);
    insert_unique(f.vertex_map, integer(v[0], "vertex"), integer(v[1], "image"), "vertex_map");
  }
  for (const auto& e : array(field(j, "edge_map"), "edge_map")) {
    array(e, "edge_map entry", 3);
    insert_unique(f.edge_map, integer(e[0], "edge"), EdgeImage{integer(e[1], "image"), sign_of(e[2])}, "edge_map");
  }
  for (const auto& c : array(field(j, "cell_map"), "cell_map")) {
    array(c, "cell_map entry", 4);
    const auto rot = integer(c[2], "rotation");
    const auto deg = integer(c[3], "degree");
    if (rot < 0 || deg < 1) bad("cell_map: rotation must be >= 0 and degree >= 1");
    insert_unique(f.cell_map, integer(c[0], "cell"),
                  CellImage{integer(c[1], "image"), static_cast<std::size_t>(rot), static_cast<int>(deg)}, "cell_map");
  }
  return f;
}

Json enlargement_to_json(const SimpleEnlargement& y) {
  Json j = complex_to_json(y.complex);
  j["e"] = y.e;
  if (y.alpha) j["alpha"] = *y.alpha;
  return j;
}

SimpleEnlargement enlargement_from_json(const Json& j, std::optional<Id> e, std::optional<Id> alpha) {
  const TwoComplex k = complex_from_json(j);
  if (j.contains("e")) e = integer(j["e"], "e");
  if (j.contains("alpha")) alpha = integer(j["alpha"], "alpha");
  if (!e) bad("no edge e given");
  if (!alpha && k.cells.size() == 1) alpha = k.cells.begin()->first;
  return recognise_enlargement(k, *e, alpha);
}

Json picture_to_json(const Picture& p) {
  Json vertices = Json::array();
  for (const auto& w : p.vertices) vertices.push_back(path_to_json(w));
  Json arcs = Json::array();
  for (const Arc& a : p.arcs) arcs.push_back(Json::array({a.label, end_to_json(a.ends[0]), end_to_json(a.ends[1])}));
  return Json{{"arcs", std::move(arcs)},
              {"circles", p.circles},
              {"surface", {{"boundary", p.surface.boundary}, {"genus", p.surface.genus}}},
              {"vertices", std::move(vertices)}};
}

Picture picture_from_json(const Json& j) {
  Picture p;
  const Json& s = field(j, "surface");
  p.surface.genus = static_cast<int>(integer(field(s, "genus"), "genus"));
  p.surface.boundary = static_cast<int>(integer(field(s, "boundary"), "boundary"));
  if (p.surface.genus < 0 || p.surface.boundary < 0) bad("surface: genus and boundary must be non-negative");
  for (const auto& w : array(field(j, "vertices"), "vertices")) p.vertices.push_back(path_from_json(w));
  for (const auto& a : array(field(j, "arcs"), "arcs")) {
    array(a, "arc", 3);
    p.arcs.push_back(Arc{integer(a[0], "label"), {end_from_json(a[1]), end_from_json(a[2])}});
  }
  if (j.contains("circles")) {
    for (const auto& c : array(j["circles"], "circles")) p.circles.push_back(integer(c, "circle"));
  }
  return p;
}

Json word_to_json(const Word& w) { return format_word(w); }

Json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

Json betti_to_json(const BettiVector& b) {
  Json torsion = Json::array();
  for (const auto& t : b.torsion) torsion.push_back(bigint_to_json(t));
  return Json{{"betti", {b.b0, b.b1, b.b2}}, {"torsion", std::move(torsion)}};
}

Json violations_to_json(const ValidationReport& r) {
  Json out = Json::array();
  for (const auto& v : r) out.push_back(Json{{"id", v.id}, {"kind", v.kind}, {"message", v.message}});
  return out;
}

Json fold_to_json(const FoldResult& r) {
  Json log = Json::array();
  for (const auto& s : r.log) {
    Json merges = Json::array();
    for (const auto& [a, b] : s.vertex_merges) merges.push_back(Json::array({a, b}));
    Json step{{"kind", s.kind == FoldStep::Kind::EdgeFold ? "edge" : "cell"},
              {"kept", s.kept},
              {"absorbed", s.absorbed},
              {"vertex_merges", std::move(merges)}};
    if (s.kind == FoldStep::Kind::EdgeFold) {
      step["relation"] = s.relation;
    } else {
      step["shift"] = s.shift;
    }
    log.push_back(std::move(step));
  }
  return Json{{"folded", complex_to_json(r.folded)},
              {"surjection", map_to_json(r.surjection)},
              {"immersion", map_to_json(r.immersion)},
              {"log", std::move(log)}};
}

Json certificate_to_json(const CollapseCertificate& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps) steps.push_back(Json::array({s.cell, s.edge, s.k}));
  return Json{{"steps", std::move(steps)}, {"target", complex_to_json(c.target)}};
}

CollapseCertificate certificate_from_json(const Json& j) {
  CollapseCertificate c;
  c.target = complex_from_json(field(j, "target"));
  for (const auto& s : array(field(j, "steps"), "steps")) {
    array(s, "step", 3);
    c.steps.push_back({integer(s[0], "cell"), integer(s[1], "edge"), integer(s[2], "k")});
  }
  return c;
}

Json stuck_to_json(const StuckWitness& s) {
  Json succ = Json::array();
  for (const auto& [h, next] : s.successors) {
    succ.push_back(Json::array({half_to_json(h), next ? half_to_json(*next) : Json(nullptr)}));
  }
  return Json{{"reason", s.reason},
              {"state",
               {{"cells", ids_to_json(s.state.cells)},
                {"edges", ids_to_json(s.state.edges)},
                {"vertices", ids_to_json(s.state.vertices)}}},
              {"successors", std::move(succ)}};
}

Json split_to_json(const RelatorSplit& s) {
  Json prefixes = Json::array();
  for (const auto& w : s.prefixes) prefixes.push_back(word_to_json(w));
  return Json{{"alpha", s.alpha},
              {"e", s.e},
              {"relator_length", s.relator_length},
              {"low_position", s.low_position},
              {"high_position", s.high_position},
              {"crossings", s.crossings},
              {"minimising_pair", {s.i, s.j}},
              {"prefixes", std::move(prefixes)},
              {"generators", s.generators},
              {"u", word_to_json(s.u_word)},
              {"v", word_to_json(s.v_word)},
              {"u_path", path_to_json(s.u_path)},
              {"v_path", path_to_json(s.v_path)}};
}

Json classification_to_json(const EdgeClassification& c) {
  Json cells = Json::array();
  for (const auto& [id, cc] : c.cells) {
    Json low = Json::array(), high = Json::array();
    for (const auto& [pos, e] : cc.low) low.push_back(Json::array({pos, e}));
    for (const auto& [pos, e] : cc.high) high.push_back(Json::array({pos, e}));
    cells.push_back(Json{{"cell", id},
                         {"degree", cc.degree},
                         {"low", std::move(low)},
                         {"high", std::move(high)},
                         {"associated", cc.associated},
                         {"distinguished_rotation", cc.distinguished_rotation}});
  }
  return Json{{"cells", std::move(cells)}};
}

}  // namespace orlab
