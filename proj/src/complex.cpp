#include "orlab/complex.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "orlab/error.hpp"

namespace orlab {

std::vector<DirectedEdge> AttachingPath::based() const {
  std::vector<DirectedEdge> out;
  out.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) out.push_back(edges[(rotation + i) % edges.size()]);
  return out;
}

Id TwoComplex::tail(const DirectedEdge& d) const {
  const Edge& e = edges.at(d.edge);
  return d.sign > 0 ? e.source : e.target;
}

Id TwoComplex::head(const DirectedEdge& d) const {
  const Edge& e = edges.at(d.edge);
  return d.sign > 0 ? e.target : e.source;
}

Id TwoComplex::next_vertex_id() const { return vertices.empty() ? 0 : *vertices.rbegin() + 1; }
Id TwoComplex::next_edge_id() const { return edges.empty() ? 0 : edges.rbegin()->first + 1; }
Id TwoComplex::next_cell_id() const { return cells.empty() ? 0 : cells.rbegin()->first + 1; }

bool is_closed_path(const TwoComplex& k, const std::vector<DirectedEdge>& path) {
  if (path.empty()) return false;
  for (const auto& d : path) {
    if (!k.edges.count(d.edge) || (d.sign != 1 && d.sign != -1)) return false;
  }
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (k.head(path[i]) != k.tail(path[(i + 1) % path.size()])) return false;
  }
  return true;
}

ValidationReport validate(const TwoComplex& k) {
  ValidationReport report;
  for (Id v : k.vertices) {
    if (v < 0) report.push_back({"vertex", v, "negative vertex id"});
  }
  for (const auto& [id, e] : k.edges) {
    if (id < 0) report.push_back({"edge", id, "negative edge id"});
    if (!k.vertices.count(e.source)) {
      report.push_back({"edge", id, "source vertex " + std::to_string(e.source) + " absent"});
    }
    if (!k.vertices.count(e.target)) {
      report.push_back({"edge", id, "target vertex " + std::to_string(e.target) + " absent"});
    }
  }
  for (const auto& [id, path] : k.cells) {
    if (id < 0) report.push_back({"cell", id, "negative cell id"});
    if (path.edges.empty()) {
      report.push_back({"cell", id, "empty attaching path"});
      continue;
    }
    if (path.rotation >= path.edges.size()) {
      report.push_back({"cell", id, "rotation index out of range"});
    }
    bool refs_ok = true;
    for (const auto& d : path.edges) {
      if (!k.edges.count(d.edge)) {
        report.push_back({"cell", id, "attaching path uses absent edge " + std::to_string(d.edge)});
        refs_ok = false;
      } else if (d.sign != 1 && d.sign != -1) {
        report.push_back({"cell", id, "edge sign must be +1 or -1"});
        refs_ok = false;
      }
    }
    if (!refs_ok) continue;
    const auto& ev = k.edges;
    bool endpoints_ok = true;
    for (const auto& d : path.edges) {
      const Edge& e = ev.at(d.edge);
      if (!k.vertices.count(e.source) || !k.vertices.count(e.target)) endpoints_ok = false;
    }
    if (endpoints_ok && !is_closed_path(k, path.edges)) {
      report.push_back({"cell", id, "attaching path is not closed"});
    }
  }
  return report;
}

void require_valid(const TwoComplex& k) {
  const auto report = validate(k);
  if (!report.empty()) {
    throw Error(ErrorCode::InvalidComplex,
                report.front().kind + " " + std::to_string(report.front().id) + ": " +
                    report.front().message);
  }
}

long euler_characteristic(const TwoComplex& k) {
  require_valid(k);
  return static_cast<long>(k.vertices.size()) - static_cast<long>(k.edges.size()) +
         static_cast<long>(k.cells.size());
}

namespace {

struct UnionFind {
  std::map<Id, Id> parent;

  Id find(Id x) {
    Id root = x;
    while (parent.at(root) != root) root = parent.at(root);
    while (parent.at(x) != root) {
      Id next = parent.at(x);
      parent[x] = root;
      x = next;
    }
    return root;
  }

  void unite(Id a, Id b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

UnionFind vertex_classes(const TwoComplex& k) {
  UnionFind uf;
  for (Id v : k.vertices) uf.parent[v] = v;
  for (const auto& [id, e] : k.edges) uf.unite(e.source, e.target);
  return uf;
}

}  // namespace

std::vector<TwoComplex> components(const TwoComplex& k) {
  require_valid(k);
  UnionFind uf = vertex_classes(k);
  std::map<Id, TwoComplex> parts;
  for (Id v : k.vertices) parts[uf.find(v)].vertices.insert(v);
  for (const auto& [id, e] : k.edges) parts[uf.find(e.source)].edges.emplace(id, e);
  for (const auto& [id, path] : k.cells) {
    parts[uf.find(k.tail(path.edges.front()))].cells.emplace(id, path);
  }
  std::vector<TwoComplex> out;
  out.reserve(parts.size());
  for (auto& [root, part] : parts) out.push_back(std::move(part));
  return out;
}

TwoComplex component_of(const TwoComplex& k, Id v) {
  if (!k.vertices.count(v)) {
    throw Error(ErrorCode::UnknownId, "vertex " + std::to_string(v) + " absent");
  }
  for (auto& part : components(k)) {
    if (part.vertices.count(v)) return part;
  }
  throw Error(ErrorCode::MalformedState, "vertex not found in any component");
}

TwoComplex subcomplex(const TwoComplex& k, const std::set<Id>& vertices,
                      const std::set<Id>& edges, const std::set<Id>& cells) {
  TwoComplex out;
  for (Id v : vertices) {
    if (!k.vertices.count(v)) throw Error(ErrorCode::UnknownId, "vertex " + std::to_string(v));
    out.vertices.insert(v);
  }
  for (Id e : edges) out.edges.emplace(e, k.edges.at(e));
  for (Id c : cells) out.cells.emplace(c, k.cells.at(c));
  require_valid(out);
  return out;
}

Subdivision subdivide_edge(const TwoComplex& k, Id edge) {
  auto it = k.edges.find(edge);
  if (it == k.edges.end()) {
    throw Error(ErrorCode::UnknownId, "edge " + std::to_string(edge) + " absent");
  }
  Subdivision sub;
  sub.complex = k;
  const Edge old = it->second;
  sub.midpoint = k.next_vertex_id();
  sub.halves[0] = edge;
  sub.halves[1] = k.next_edge_id();
  sub.complex.vertices.insert(sub.midpoint);
  sub.complex.edges[sub.halves[0]] = Edge{sub.midpoint, old.source};
  sub.complex.edges[sub.halves[1]] = Edge{sub.midpoint, old.target};
  for (auto& [id, path] : sub.complex.cells) {
    std::size_t new_rotation = 0;
    std::vector<DirectedEdge> rewritten;
    for (std::size_t i = 0; i < path.edges.size(); ++i) {
      if (i == path.rotation) new_rotation = rewritten.size();
      const auto piece = rewrite_through_halves({path.edges[i]}, sub, edge);
      rewritten.insert(rewritten.end(), piece.begin(), piece.end());
    }
    path.edges = std::move(rewritten);
    path.rotation = new_rotation;
  }
  return sub;
}

std::vector<DirectedEdge> rewrite_through_halves(const std::vector<DirectedEdge>& path,
                                                 const Subdivision& sub, Id old_edge) {
  std::vector<DirectedEdge> out;
  for (const auto& d : path) {
    if (d.edge != old_edge) {
      out.push_back(d);
    } else if (d.sign > 0) {
      out.push_back({sub.halves[0], -1});
      out.push_back({sub.halves[1], 1});
    } else {
      out.push_back({sub.halves[1], -1});
      out.push_back({sub.halves[0], 1});
    }
  }
  return out;
}

SpanningTree spanning_tree(const TwoComplex& k, Id root, const std::set<Id>& deferred) {
  if (!k.vertices.count(root)) {
    throw Error(ErrorCode::UnknownId, "basepoint " + std::to_string(root) + " absent");
  }
  std::map<Id, std::vector<Id>> incident;
  for (const auto& [id, e] : k.edges) {
    incident[e.source].push_back(id);
    if (e.target != e.source) incident[e.target].push_back(id);
  }
  SpanningTree tree;
  tree.root = root;
  tree.vertices.insert(root);
  tree.path_from_root[root] = {};
  auto attach = [&](Id v, Id eid, std::deque<Id>& queue) {
    const Edge& e = k.edges.at(eid);
    const DirectedEdge out = e.source == v ? DirectedEdge{eid, 1} : DirectedEdge{eid, -1};
    const Id w = k.head(out);
    if (tree.vertices.count(w)) return;
    tree.vertices.insert(w);
    tree.tree_edges.insert(eid);
    auto p = tree.path_from_root[v];
    p.push_back(out);
    tree.path_from_root[w] = std::move(p);
    queue.push_back(w);
  };
  std::deque<Id> queue{root};
  for (;;) {
    while (!queue.empty()) {
      const Id v = queue.front();
      queue.pop_front();
      for (Id eid : incident[v]) {
        if (!deferred.count(eid)) attach(v, eid, queue);
      }
    }
    for (Id eid : deferred) {
      auto it = k.edges.find(eid);
      if (it == k.edges.end() || !queue.empty()) continue;
      if (tree.vertices.count(it->second.source)) attach(it->second.source, eid, queue);
      if (queue.empty() && tree.vertices.count(it->second.target)) attach(it->second.target, eid, queue);
    }
    if (queue.empty()) break;
  }
  return tree;
}

Word path_word(const SpanningTree& tree, const std::vector<Id>& generators,
               const std::vector<DirectedEdge>& path) {
  Word w;
  for (const auto& d : path) {
    if (tree.tree_edges.count(d.edge)) continue;
    auto it = std::lower_bound(generators.begin(), generators.end(), d.edge);
    if (it == generators.end() || *it != d.edge) {
      throw Error(ErrorCode::MalformedState, "edge " + std::to_string(d.edge) + " not a generator");
    }
    w.push_back({static_cast<int>(it - generators.begin()), d.sign});
  }
  return w;
}

Presentation fundamental_group_presentation(const TwoComplex& k, Id basepoint) {
  require_valid(k);
  const TwoComplex comp = component_of(k, basepoint);
  const SpanningTree tree = spanning_tree(comp, basepoint);
  Presentation pres;
  for (const auto& [id, e] : comp.edges) {
    if (!tree.tree_edges.count(id)) pres.generators.push_back(id);
  }
  for (const auto& [id, path] : comp.cells) {
    pres.relators.push_back(path_word(tree, pres.generators, path.based()));
  }
  return pres;
}

std::vector<DirectedEdge> inverse_path(const std::vector<DirectedEdge>& p) {
  std::vector<DirectedEdge> out;
  out.reserve(p.size());
  for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back(it->inverse());
  return out;
}

namespace {

bool rotation_equal(const std::vector<DirectedEdge>& a, const std::vector<DirectedEdge>& b) {
  const std::size_t n = a.size();
  for (std::size_t s = 0; s < n; ++s) {
    bool eq = true;
    for (std::size_t i = 0; i < n && eq; ++i) eq = a[(s + i) % n] == b[i];
    if (eq) return true;
  }
  return false;
}

}  // namespace

bool cyclically_equal(const std::vector<DirectedEdge>& a, const std::vector<DirectedEdge>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  return rotation_equal(a, b) || rotation_equal(a, inverse_path(b));
}

std::size_t path_period(const std::vector<DirectedEdge>& p) {
  const std::size_t n = p.size();
  for (std::size_t q = 1; q < n; ++q) {
    if (n % q != 0) continue;
    bool periodic = true;
    for (std::size_t i = q; i < n && periodic; ++i) periodic = p[i] == p[i - q];
    if (periodic) return q;
  }
  return n;
}

std::map<Id, int> edge_occurrence_counts(const TwoComplex& k) {
  std::map<Id, int> counts;
  for (const auto& [id, e] : k.edges) counts[id] = 0;
  for (const auto& [id, path] : k.cells) {
    for (const auto& d : path.edges) ++counts[d.edge];
  }
  return counts;
}

std::optional<Id> find_free_edge(const TwoComplex& k) {
  for (const auto& [id, count] : edge_occurrence_counts(k)) {
    if (count == 1) return id;
  }
  return std::nullopt;
}

TwoComplex presentation_complex(int generators, const std::vector<Word>& relators) {
  TwoComplex k;
  k.vertices.insert(0);
  for (int i = 0; i < generators; ++i) k.edges[i] = {0, 0};
  for (std::size_t j = 0; j < relators.size(); ++j) {
    AttachingPath p;
    for (const Letter& l : relators[j]) {
      if (l.gen < 0 || l.gen >= generators) {
        throw Error(ErrorCode::InvalidInput, "relator uses an unknown generator");
      }
      p.edges.push_back({l.gen, l.exp});
    }
    k.cells[static_cast<Id>(j)] = std::move(p);
  }
  require_valid(k);
  return k;
}

}  // namespace orlab
