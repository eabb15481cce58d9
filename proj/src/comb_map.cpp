#include "orlab/comb_map.hpp"

#include <set>
#include <tuple>

#include "orlab/error.hpp"

namespace orlab {

DirectedEdge CombMap::image(const DirectedEdge& d) const {
  const EdgeImage& im = edge_map.at(d.edge);
  return {im.edge, d.sign * im.sign};
}

bool CombMap::has_branching() const {
  for (const auto& [id, im] : cell_map) {
    if (im.degree != 1) return true;
  }
  return false;
}

CombMap identity_map(const TwoComplex& k) { return inclusion_map(k, k); }

CombMap inclusion_map(const TwoComplex& sub, const TwoComplex& k) {
  CombMap f;
  f.source = sub;
  f.target = k;
  for (Id v : sub.vertices) f.vertex_map[v] = v;
  for (const auto& [id, e] : sub.edges) f.edge_map[id] = {id, 1};
  for (const auto& [id, p] : sub.cells) f.cell_map[id] = {id, 0, 1};
  return f;
}

ValidationReport validate_map(const CombMap& f) {
  ValidationReport report;
  for (const auto& v : validate(f.source)) report.push_back({"source-" + v.kind, v.id, v.message});
  for (const auto& v : validate(f.target)) report.push_back({"target-" + v.kind, v.id, v.message});
  if (!report.empty()) return report;

  for (Id v : f.source.vertices) {
    auto it = f.vertex_map.find(v);
    if (it == f.vertex_map.end()) {
      report.push_back({"vertex", v, "no image"});
    } else if (!f.target.vertices.count(it->second)) {
      report.push_back({"vertex", v, "image vertex absent from target"});
    }
  }
  for (const auto& [v, w] : f.vertex_map) {
    if (!f.source.vertices.count(v)) report.push_back({"vertex", v, "mapped vertex not in source"});
  }
  for (const auto& [id, e] : f.source.edges) {
    auto it = f.edge_map.find(id);
    if (it == f.edge_map.end()) {
      report.push_back({"edge", id, "no image"});
      continue;
    }
    const EdgeImage& im = it->second;
    auto te = f.target.edges.find(im.edge);
    if (te == f.target.edges.end() || (im.sign != 1 && im.sign != -1)) {
      report.push_back({"edge", id, "image edge absent or bad sign"});
      continue;
    }
    const Id want_src = im.sign > 0 ? te->second.source : te->second.target;
    const Id want_dst = im.sign > 0 ? te->second.target : te->second.source;
    auto vs = f.vertex_map.find(e.source);
    auto vt = f.vertex_map.find(e.target);
    if (vs == f.vertex_map.end() || vt == f.vertex_map.end() || vs->second != want_src ||
        vt->second != want_dst) {
      report.push_back({"edge", id, "endpoints disagree with vertex assignment"});
    }
  }
  for (const auto& [id, im] : f.edge_map) {
    if (!f.source.edges.count(id)) report.push_back({"edge", id, "mapped edge not in source"});
  }
  for (const auto& [id, path] : f.source.cells) {
    auto it = f.cell_map.find(id);
    if (it == f.cell_map.end()) {
      report.push_back({"cell", id, "no image"});
      continue;
    }
    const CellImage& im = it->second;
    auto tc = f.target.cells.find(im.cell);
    if (tc == f.target.cells.end()) {
      report.push_back({"cell", id, "image cell absent"});
      continue;
    }
    if (im.degree < 1) {
      report.push_back({"cell", id, "degree must be >= 1"});
      continue;
    }
    const std::size_t L = tc->second.size();
    if (path.size() != static_cast<std::size_t>(im.degree) * L) {
      report.push_back({"cell", id,
                        "attaching path length " + std::to_string(path.size()) +
                            " is not degree x image length " +
                            std::to_string(static_cast<std::size_t>(im.degree) * L)});
      continue;
    }
    if (im.rotation >= path.size()) {
      report.push_back({"cell", id, "rotation out of range"});
      continue;
    }
    bool edges_known = true;
    for (const auto& d : path.edges) edges_known = edges_known && f.edge_map.count(d.edge);
    if (!edges_known) {
      report.push_back({"cell", id, "attaching path uses unmapped edge"});
      continue;
    }
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (f.image(path.edges[i]) != tc->second.edges[(im.rotation + i) % L]) {
        report.push_back({"cell", id,
                          "attaching path position " + std::to_string(i) +
                              " does not map onto the image path"});
        break;
      }
    }
  }
  for (const auto& [id, im] : f.cell_map) {
    if (!f.source.cells.count(id)) report.push_back({"cell", id, "mapped cell not in source"});
  }
  return report;
}

void require_valid_map(const CombMap& f) {
  const auto report = validate_map(f);
  if (!report.empty()) {
    throw Error(ErrorCode::InvalidMap, report.front().kind + " " +
                                           std::to_string(report.front().id) + ": " +
                                           report.front().message);
  }
}

std::string ImmersionWitness::describe() const {
  switch (kind) {
    case Kind::Vertex:
      return "vertex " + std::to_string(where) + ": edge-ends (" + std::to_string(first.first) +
             "," + std::to_string(first.second) + ") and (" + std::to_string(second.first) + "," +
             std::to_string(second.second) + ") have the same image";
    case Kind::Edge:
      return "edge " + std::to_string(where) + ": sides (cell " + std::to_string(first.first) +
             ", pos " + std::to_string(first.second) + ") and (cell " +
             std::to_string(second.first) + ", pos " + std::to_string(second.second) +
             ") have the same image";
    case Kind::Degree:
      return "cell " + std::to_string(where) + " has degree > 1";
  }
  return {};
}

namespace {

ImmersionVerdict local_injectivity(const CombMap& f, bool allow_sheets) {
  // (V) edge-ends at each vertex.
  std::map<Id, std::vector<std::pair<Id, int>>> ends;
  for (const auto& [id, e] : f.source.edges) {
    ends[e.source].push_back({id, 0});
    ends[e.target].push_back({id, 1});
  }
  for (const auto& [v, list] : ends) {
    std::map<std::pair<Id, int>, std::pair<Id, int>> seen;
    for (const auto& end : list) {
      const EdgeImage& im = f.edge_map.at(end.first);
      const std::pair<Id, int> key{im.edge, im.sign > 0 ? end.second : 1 - end.second};
      auto [it, inserted] = seen.emplace(key, end);
      if (!inserted) {
        ImmersionWitness w;
        w.kind = ImmersionWitness::Kind::Vertex;
        w.where = v;
        w.first = {it->second.first, it->second.second};
        w.second = {end.first, end.second};
        return {false, w};
      }
    }
  }

  // (E) 2-cell sides along each edge.
  struct Side {
    Id cell;
    long pos;
    std::size_t sheet;
  };
  std::map<Id, std::map<std::pair<Id, std::size_t>, std::vector<Side>>> sides;
  for (const auto& [id, path] : f.source.cells) {
    const CellImage& im = f.cell_map.at(id);
    const std::size_t L = f.target.cells.at(im.cell).size();
    const std::size_t total = path.size();
    for (std::size_t i = 0; i < total; ++i) {
      const std::size_t unrolled = (im.rotation + i) % total;
      sides[path.edges[i].edge][{im.cell, unrolled % L}].push_back(
          {id, static_cast<long>(i), unrolled / L});
    }
  }
  for (const auto& [edge, by_image] : sides) {
    for (const auto& [key, list] : by_image) {
      for (std::size_t a = 0; a < list.size(); ++a) {
        for (std::size_t b = a + 1; b < list.size(); ++b) {
          const bool excused =
              allow_sheets && list[a].cell == list[b].cell && list[a].sheet != list[b].sheet;
          if (excused) continue;
          ImmersionWitness w;
          w.kind = ImmersionWitness::Kind::Edge;
          w.where = edge;
          w.first = {list[a].cell, list[a].pos};
          w.second = {list[b].cell, list[b].pos};
          return {false, w};
        }
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace

ImmersionVerdict is_immersion(const CombMap& f) {
  require_valid_map(f);
  for (const auto& [id, im] : f.cell_map) {
    if (im.degree != 1) {
      ImmersionWitness w;
      w.kind = ImmersionWitness::Kind::Degree;
      w.where = id;
      return {false, w};
    }
  }
  return local_injectivity(f, false);
}

ImmersionVerdict is_branch_map(const CombMap& f) {
  require_valid_map(f);
  return local_injectivity(f, true);
}

CombMap compose(const CombMap& g, const CombMap& f) {
  if (!(f.target == g.source)) {
    throw Error(ErrorCode::Mismatch, "compose: target of f differs from source of g");
  }
  CombMap h;
  h.source = f.source;
  h.target = g.target;
  for (const auto& [v, w] : f.vertex_map) h.vertex_map[v] = g.vertex_map.at(w);
  for (const auto& [id, im] : f.edge_map) {
    const EdgeImage& im2 = g.edge_map.at(im.edge);
    h.edge_map[id] = {im2.edge, im.sign * im2.sign};
  }
  for (const auto& [id, im] : f.cell_map) {
    const CellImage& im2 = g.cell_map.at(im.cell);
    const int degree = im.degree * im2.degree;
    const std::size_t len =
        static_cast<std::size_t>(degree) * g.target.cells.at(im2.cell).size();
    h.cell_map[id] = {im2.cell, (im.rotation + im2.rotation) % len, degree};
  }
  return h;
}

bool is_isomorphism(const CombMap& f) {
  if (f.source.vertices.size() != f.target.vertices.size() ||
      f.source.edges.size() != f.target.edges.size() ||
      f.source.cells.size() != f.target.cells.size()) {
    return false;
  }
  std::set<Id> vs;
  for (const auto& [v, w] : f.vertex_map) vs.insert(w);
  std::set<Id> es;
  for (const auto& [id, im] : f.edge_map) es.insert(im.edge);
  std::set<Id> cs;
  for (const auto& [id, im] : f.cell_map) {
    if (im.degree != 1) return false;
    cs.insert(im.cell);
  }
  return vs.size() == f.target.vertices.size() && es.size() == f.target.edges.size() &&
         cs.size() == f.target.cells.size();
}

bool maps_equal(const CombMap& a, const CombMap& b) {
  return a.target == b.target && a.vertex_map == b.vertex_map && a.edge_map == b.edge_map &&
         a.cell_map == b.cell_map;
}

}  // namespace orlab
