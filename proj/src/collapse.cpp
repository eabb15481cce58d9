#include "orlab/collapse.hpp"

#include <algorithm>

#include "orlab/error.hpp"

namespace orlab {

TwoComplex remove_associated(const TwoComplex& y_prime, const EdgeClassification& cls) {
  TwoComplex z = y_prime;
  for (const auto& [cell, c] : cls.cells) {
    z.cells.erase(cell);
    z.edges.erase(c.associated);
  }
  require_valid(z);
  return z;
}

std::optional<TrivialityCertificate> trivial_image_component(const TwoComplex& z, const CombMap& f) {
  TwoComplex skeleton = f.target;
  skeleton.cells.clear();
  for (const TwoComplex& comp : components(z)) {
    const Id root = *comp.vertices.begin();
    const SpanningTree tree = spanning_tree(comp, root);
    const Id image_root = f.vertex_map.at(root);
    const SpanningTree target_tree = spanning_tree(skeleton, image_root);
    std::vector<Id> target_gens;
    for (const auto& [id, e] : skeleton.edges) {
      if (!target_tree.tree_edges.count(id)) target_gens.push_back(id);
    }
    TrivialityCertificate cert;
    cert.component = comp;
    bool trivial = true;
    for (const auto& [id, e] : comp.edges) {
      if (tree.tree_edges.count(id)) continue;
      std::vector<DirectedEdge> loop = tree.path_from_root.at(e.source);
      loop.push_back({id, 1});
      const auto back = inverse_path(tree.path_from_root.at(e.target));
      loop.insert(loop.end(), back.begin(), back.end());
      std::vector<DirectedEdge> image;
      for (const auto& d : loop) image.push_back(f.image(d));
      const Word w = free_reduce(path_word(target_tree, target_gens, image));
      cert.generator_images.push_back({id, w});
      if (!w.empty()) {
        trivial = false;
        break;
      }
    }
    if (trivial) return cert;
  }
  return std::nullopt;
}

namespace {

bool vertex_in(const CollapseState& s, Id v) { return s.vertices.count(v) > 0; }

Id half_vertex(const TwoComplex& k, const HalfEdge& h) {
  const Edge& e = k.edges.at(h.edge);
  return h.end == 0 ? e.source : e.target;
}

}  // namespace

std::vector<HalfEdge> frontier_half_edges(const TwoComplex& y_prime, const EdgeClassification& cls,
                                          const CollapseState& state) {
  std::vector<HalfEdge> out;
  for (const auto& [cell, c] : cls.cells) {
    if (state.cells.count(cell)) continue;
    for (int end = 0; end < 2; ++end) {
      const HalfEdge h{c.associated, end};
      if (vertex_in(state, half_vertex(y_prime, h))) out.push_back(h);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

HalfEdge successor(const TwoComplex& y_prime, const EdgeClassification& cls, const CollapseState& state,
                   const HalfEdge& e) {
  auto owner = cls.associated_to_cell.find(e.edge);
  if (owner == cls.associated_to_cell.end() || state.cells.count(owner->second) ||
      !vertex_in(state, half_vertex(y_prime, e))) {
    throw Error(ErrorCode::MalformedState, "half-edge is not in E");
  }
  const CellClassification& c = cls.cells.at(owner->second);
  const auto& path = y_prime.cells.at(c.cell).edges;
  const std::size_t n = path.size();
  const DirectedEdge first = path[c.distinguished_rotation];
  // e' is the second half of the first edge when the path leaves the
  // midpoint through e'; otherwise read the path backwards.
  const bool forward = (first.sign > 0) == (e.end == 1);
  for (std::size_t step = 1; step <= n; ++step) {
    const std::size_t pos = forward ? (c.distinguished_rotation + step) % n
                                    : (c.distinguished_rotation + n - step) % n;
    DirectedEdge d = path[pos];
    if (!forward) d = d.inverse();
    if (state.edges.count(d.edge)) continue;
    if (!cls.associated_to_cell.count(d.edge)) {
      throw Error(ErrorCode::MalformedState,
                  "edge " + std::to_string(d.edge) + " outside T' is not an associated edge");
    }
    // e'' is the half at the start of d, where the path leaves T'.
    return {d.edge, d.sign > 0 ? 0 : 1};
  }
  throw Error(ErrorCode::MalformedState, "distinguished path lies in T'");
}

namespace {

// Period decomposition S^k of the path and the number of times `edge` occurs in S.
std::pair<long, long> power_and_count(const std::vector<DirectedEdge>& path, Id edge) {
  const std::size_t period = path_period(path);
  long count = 0;
  for (std::size_t i = 0; i < period; ++i) {
    if (path[i].edge == edge) ++count;
  }
  return {static_cast<long>(path.size() / period), count};
}

bool edge_used_elsewhere(const TwoComplex& k, const std::set<Id>& cells, Id cell, Id edge) {
  for (Id c : cells) {
    if (c == cell) continue;
    for (const auto& d : k.cells.at(c).edges) {
      if (d.edge == edge) return true;
    }
  }
  return false;
}

}  // namespace

CollapseOutcome almost_collapse_sequence(const CombMap& f, const EdgeClassification& cls,
                                         const TwoComplex& t, bool torsion_free) {
  const TwoComplex& y = f.source;
  if (torsion_free && f.has_branching()) {
    throw Error(ErrorCode::InvalidInput, "torsion-free collapse needs an immersion");
  }
  CollapseState state;
  state.vertices = t.vertices;
  for (const auto& [id, e] : t.edges) state.edges.insert(id);
  for (const auto& [id, p] : t.cells) state.cells.insert(id);

  CollapseOutcome out;
  CollapseCertificate cert;
  cert.target = t;
  auto stuck = [&](std::string reason, std::vector<std::pair<HalfEdge, std::optional<HalfEdge>>> succ) {
    out.stuck = StuckWitness{std::move(reason), state, std::move(succ)};
    return out;
  };

  while (state.vertices.size() != y.vertices.size() || state.edges.size() != y.edges.size() ||
         state.cells.size() != y.cells.size()) {
    const auto frontier = frontier_half_edges(y, cls, state);
    if (frontier.empty()) return stuck("E is empty but T' differs from Y'", {});
    std::vector<std::pair<HalfEdge, std::optional<HalfEdge>>> succ;
    std::optional<CollapseStep> found;
    for (const HalfEdge& h : frontier) {
      HalfEdge next;
      try {
        next = successor(y, cls, state, h);
      } catch (const Error& err) {
        succ.push_back({h, std::nullopt});
        return stuck(std::string("successor undefined: ") + err.what(), succ);
      }
      succ.push_back({h, next});
      if (next == h) return stuck("sigma has a fixed point", succ);
      if (next.edge != h.edge) continue;
      const Id cell = cls.associated_to_cell.at(h.edge);
      const auto& path = y.cells.at(cell).edges;
      const bool inside = std::all_of(path.begin(), path.end(), [&](const DirectedEdge& d) {
        return d.edge == h.edge || state.edges.count(d.edge);
      });
      const Edge& ed = y.edges.at(h.edge);
      if (!inside || !vertex_in(state, ed.source) || !vertex_in(state, ed.target)) continue;
      const auto [k, count] = power_and_count(path, h.edge);
      if (count != 1 || edge_used_elsewhere(y, state.cells, cell, h.edge)) continue;
      found = CollapseStep{cell, h.edge, k};
      break;
    }
    if (!found) return stuck("no almost-free associated edge", succ);
    if (torsion_free && found->k != 1) {
      return stuck("almost-collapse with k = " + std::to_string(found->k) + " under an immersion", succ);
    }
    state.edges.insert(found->edge);
    state.cells.insert(found->cell);
    cert.steps.push_back(*found);
  }
  out.certificate = std::move(cert);
  return out;
}

TwoComplex replay_certificate(const TwoComplex& y_prime, const CollapseCertificate& cert) {
  TwoComplex k = y_prime;
  for (auto it = cert.steps.rbegin(); it != cert.steps.rend(); ++it) {
    auto cell = k.cells.find(it->cell);
    if (cell == k.cells.end() || !k.edges.count(it->edge)) {
      throw Error(ErrorCode::MalformedState, "step names a missing cell or edge");
    }
    const auto [power, count] = power_and_count(cell->second.edges, it->edge);
    std::set<Id> others;
    for (const auto& [id, p] : k.cells) others.insert(id);
    if (count != 1 || power != it->k || edge_used_elsewhere(k, others, it->cell, it->edge)) {
      throw Error(ErrorCode::MalformedState,
                  "step (" + std::to_string(it->cell) + "," + std::to_string(it->edge) + ") is not an almost-collapse");
    }
    k.cells.erase(cell);
    k.edges.erase(it->edge);
  }
  if (!(k == cert.target)) throw Error(ErrorCode::MalformedState, "replay does not end at T");
  return k;
}

bool homology_bookkeeping_holds(const TwoComplex& y_prime, const CollapseCertificate& cert) {
  const BettiVector whole = betti_numbers(y_prime);
  const BettiVector part = betti_numbers(cert.target);
  if (whole.b1 != part.b1) return false;
  // Invariant factors of H_1(T) + sum Z/k_i, via a diagonal Smith form.
  std::vector<BigInt> diag = part.torsion;
  for (const auto& s : cert.steps) {
    if (s.k > 1) diag.push_back(s.k);
  }
  IntegerMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  std::vector<BigInt> expected;
  for (const BigInt& d : smith_normal_form(m).divisors) {
    if (d > 1) expected.push_back(d);
  }
  return expected == whole.torsion;
}

const char* contractibility_name(Contractibility c) {
  switch (c) {
    case Contractibility::Contractible: return "Contractible";
    case Contractibility::NotContractible: return "NotContractible";
    case Contractibility::Unknown: return "Unknown";
  }
  return "?";
}

ContractibilityReport contractibility_report(const TwoComplex& input) {
  require_valid(input);
  ContractibilityReport rep;
  TwoComplex k = input;
  for (bool progress = true; progress;) {
    progress = false;
    const auto counts = edge_occurrence_counts(k);
    for (const auto& [cell, path] : k.cells) {
      auto free = std::find_if(path.edges.begin(), path.edges.end(),
                               [&](const DirectedEdge& d) { return counts.at(d.edge) == 1; });
      if (free == path.edges.end()) continue;
      rep.collapses.push_back("cell " + std::to_string(cell) + " through edge " + std::to_string(free->edge));
      k.edges.erase(free->edge);
      k.cells.erase(cell);
      progress = true;
      break;
    }
    if (progress) continue;
    std::map<Id, int> degree;
    for (const auto& [id, e] : k.edges) {
      ++degree[e.source];
      ++degree[e.target];
    }
    for (const auto& [id, e] : k.edges) {
      if (counts.at(id) != 0 || e.source == e.target) continue;
      const Id leaf = degree[e.target] == 1 ? e.target : (degree[e.source] == 1 ? e.source : -1);
      if (leaf < 0) continue;
      rep.collapses.push_back("edge " + std::to_string(id) + " through vertex " + std::to_string(leaf));
      k.edges.erase(id);
      k.vertices.erase(leaf);
      progress = true;
      break;
    }
  }
  if (k.vertices.size() == 1 && k.edges.empty() && k.cells.empty()) {
    rep.verdict = Contractibility::Contractible;
    return rep;
  }
  const BettiVector b = betti_numbers(input);
  const long chi = euler_characteristic(input);
  if (b.b0 != 1 || b.b1 != 0 || b.b2 != 0 || !b.torsion.empty() || chi != 1) {
    rep.verdict = Contractibility::NotContractible;
    rep.witness = "betti (" + std::to_string(b.b0) + "," + std::to_string(b.b1) + "," +
                  std::to_string(b.b2) + "), torsion " + std::to_string(b.torsion.size()) +
                  ", chi " + std::to_string(chi);
    return rep;
  }
  rep.verdict = Contractibility::Unknown;
  rep.witness = "homology of a point but no free-face collapse to a point";
  return rep;
}

}  // namespace orlab
