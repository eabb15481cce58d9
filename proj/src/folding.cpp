#include "orlab/folding.hpp"

#include <algorithm>
#include <functional>

#include "orlab/error.hpp"

namespace orlab {

FoldState initial_fold_state(const CombMap& phi) {
  require_valid_map(phi);
  if (phi.has_branching()) {
    throw Error(ErrorCode::Unsupported, "folding requires every cell degree to be 1");
  }
  FoldState s;
  s.to_current = identity_map(phi.source);
  s.to_target = phi;
  return s;
}

namespace {

struct EdgeFoldCandidate {
  Id a = 0;
  Id b = 0;
};

std::optional<EdgeFoldCandidate> find_edge_fold(const CombMap& f) {
  std::map<Id, std::vector<std::pair<Id, int>>> ends;
  for (const auto& [id, e] : f.source.edges) {
    ends[e.source].push_back({id, 0});
    ends[e.target].push_back({id, 1});
  }
  std::optional<EdgeFoldCandidate> best;
  for (const auto& [v, list] : ends) {
    std::map<std::pair<Id, int>, Id> seen;
    for (const auto& end : list) {
      const EdgeImage& im = f.edge_map.at(end.first);
      const std::pair<Id, int> key{im.edge, im.sign > 0 ? end.second : 1 - end.second};
      auto [it, inserted] = seen.emplace(key, end.first);
      if (inserted || it->second == end.first) continue;
      EdgeFoldCandidate c{std::min(it->second, end.first), std::max(it->second, end.first)};
      if (!best || std::tie(c.a, c.b) < std::tie(best->a, best->b)) best = c;
    }
  }
  return best;
}

struct CellFoldCandidate {
  Id a = 0;
  Id b = 0;
  std::size_t shift = 0;
};

std::optional<CellFoldCandidate> find_cell_fold(const CombMap& f) {
  for (auto ia = f.source.cells.begin(); ia != f.source.cells.end(); ++ia) {
    const CellImage& ima = f.cell_map.at(ia->first);
    for (auto ib = std::next(ia); ib != f.source.cells.end(); ++ib) {
      const CellImage& imb = f.cell_map.at(ib->first);
      if (ima.cell != imb.cell || ima.degree != imb.degree) continue;
      const auto& pa = ia->second.edges;
      const auto& pb = ib->second.edges;
      if (pa.size() != pb.size()) continue;
      const std::size_t n = pa.size();
      // rotation_b == rotation_a + shift (mod n) pins the shift.
      const std::size_t shift = (imb.rotation + n - ima.rotation) % n;
      bool equal = true;
      for (std::size_t i = 0; i < n && equal; ++i) equal = pb[i] == pa[(i + shift) % n];
      if (equal) return CellFoldCandidate{ia->first, ib->first, shift};
    }
  }
  return std::nullopt;
}

void set_current(FoldState& s, const TwoComplex& current) {
  s.to_current.target = current;
  s.to_target.source = current;
}

FoldStep apply_edge_fold(FoldState& s, const EdgeFoldCandidate& c) {
  TwoComplex cur = s.to_target.source;
  const Edge ea = cur.edges.at(c.a);
  const Edge eb = cur.edges.at(c.b);
  const int relation = s.to_target.edge_map.at(c.a).sign * s.to_target.edge_map.at(c.b).sign;

  std::map<Id, Id> parent;
  for (Id v : cur.vertices) parent[v] = v;
  std::function<Id(Id)> find = [&](Id x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto unite = [&](Id x, Id y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (y < x) std::swap(x, y);
    parent[y] = x;
  };
  if (relation > 0) {
    unite(eb.source, ea.source);
    unite(eb.target, ea.target);
  } else {
    unite(eb.source, ea.target);
    unite(eb.target, ea.source);
  }

  FoldStep step;
  step.kind = FoldStep::Kind::EdgeFold;
  step.kept = c.a;
  step.absorbed = c.b;
  step.relation = relation;
  std::map<Id, Id> relabel;
  for (Id v : cur.vertices) {
    relabel[v] = find(v);
    if (relabel[v] != v) step.vertex_merges.push_back({v, relabel[v]});
  }

  TwoComplex next;
  for (Id v : cur.vertices) next.vertices.insert(relabel[v]);
  for (const auto& [id, e] : cur.edges) {
    if (id == c.b) continue;
    next.edges[id] = {relabel[e.source], relabel[e.target]};
  }
  for (const auto& [id, path] : cur.cells) {
    AttachingPath p = path;
    for (auto& d : p.edges) {
      if (d.edge == c.b) d = {c.a, d.sign * relation};
    }
    next.cells[id] = std::move(p);
  }

  for (auto& [v, w] : s.to_current.vertex_map) w = relabel[w];
  for (auto& [id, im] : s.to_current.edge_map) {
    if (im.edge == c.b) im = {c.a, im.sign * relation};
  }
  std::map<Id, Id> vmap;
  for (const auto& [v, w] : s.to_target.vertex_map) vmap[relabel[v]] = w;
  s.to_target.vertex_map = std::move(vmap);
  s.to_target.edge_map.erase(c.b);
  set_current(s, next);
  return step;
}

FoldStep apply_cell_fold(FoldState& s, const CellFoldCandidate& c) {
  TwoComplex next = s.to_target.source;
  const std::size_t n = next.cells.at(c.a).size();
  next.cells.erase(c.b);
  for (auto& [id, im] : s.to_current.cell_map) {
    if (im.cell == c.b) im = {c.a, (im.rotation + c.shift) % n, im.degree};
  }
  s.to_target.cell_map.erase(c.b);
  set_current(s, next);
  FoldStep step;
  step.kind = FoldStep::Kind::CellFold;
  step.kept = c.a;
  step.absorbed = c.b;
  step.shift = c.shift;
  return step;
}

}  // namespace

std::optional<FoldStep> fold_once(FoldState& state) {
  if (auto ef = find_edge_fold(state.to_target)) return apply_edge_fold(state, *ef);
  if (auto cf = find_cell_fold(state.to_target)) return apply_cell_fold(state, *cf);
  return std::nullopt;
}

FoldResult fold_to_immersion(const CombMap& phi) {
  FoldState state = initial_fold_state(phi);
  FoldResult result;
  const std::size_t bound = phi.source.cell_count();
  while (auto step = fold_once(state)) {
    result.log.push_back(*step);
    if (result.log.size() > bound) {
      throw Error(ErrorCode::MalformedState, "fold loop exceeded the cell-count bound");
    }
  }
  result.folded = state.to_target.source;
  result.surjection = std::move(state.to_current);
  result.immersion = std::move(state.to_target);
  return result;
}

}  // namespace orlab
