#include "orlab/enlargement.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "orlab/error.hpp"

namespace orlab {

TwoComplex SimpleEnlargement::base() const {
  TwoComplex x = complex;
  x.edges.erase(e);
  if (alpha) x.cells.erase(*alpha);
  return x;
}

const AttachingPath& SimpleEnlargement::relator() const {
  if (!alpha) throw Error(ErrorCode::NoAlpha, "the enlargement has no 2-cell");
  return complex.cells.at(*alpha);
}

std::vector<DirectedEdge> parse_relator_path(const std::string& text, Id e) {
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<DirectedEdge> path;
  std::string tok;
  while (in >> tok) {
    int sign = 1;
    std::string body = tok;
    if (body[0] == '-') {
      sign = -1;
      body = body.substr(1);
    }
    if (body == "e") {
      path.push_back({e, sign});
      continue;
    }
    if (body.empty() || !std::all_of(body.begin(), body.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw Error(ErrorCode::InvalidInput, "bad relator token '" + tok + "'");
    }
    path.push_back({std::stoll(body), sign});
  }
  if (path.empty()) throw Error(ErrorCode::InvalidInput, "empty relator");
  return path;
}

namespace {

// Free-group view of X u e with e cut at its midpoint. The far half of e is
// deferred so that, when X is connected, it becomes the generator carried by e.
struct FreeGroupView {
  Subdivision sub;
  SpanningTree tree;
  std::vector<Id> generators;

  Word word(const std::vector<DirectedEdge>& sub_path) const {
    return free_reduce(path_word(tree, generators, sub_path));
  }
};

FreeGroupView free_group_view(const TwoComplex& y, Id e) {
  FreeGroupView v;
  TwoComplex skeleton = y;
  skeleton.cells.clear();
  v.sub = subdivide_edge(skeleton, e);
  v.tree = spanning_tree(v.sub.complex, v.sub.midpoint, {v.sub.halves[1]});
  for (const auto& [id, edge] : v.sub.complex.edges) {
    if (!v.tree.tree_edges.count(id)) v.generators.push_back(id);
  }
  return v;
}

std::vector<DirectedEdge> subdivide_path(const std::vector<DirectedEdge>& path,
                                         const Subdivision& sub, Id e) {
  return rewrite_through_halves(path, sub, e);
}

EnlargementEvidence check_conditions(const TwoComplex& y, Id e, bool joins, bool graph,
                                     const std::vector<DirectedEdge>& relator) {
  EnlargementEvidence ev;
  for (const auto& d : relator) {
    if (d.edge == e) ++ev.crossings;
  }
  if (ev.crossings == 0) throw Error(ErrorCode::NoE, "the relator does not involve e");

  TwoComplex x = y;
  x.edges.erase(e);
  x.cells.clear();

  const FreeGroupView view = free_group_view(y, e);
  ev.generators = view.generators;
  ev.reduced_word = cyclic_reduce(view.word(subdivide_path(relator, view.sub, e)));
  if (!graph) {
    ev.note = "X has 2-cells: conditions 2 and 3 not decided";
    return ev;
  }

  const Word& w = ev.reduced_word;
  long minimal = 0;
  if (joins) {
    // Syllables of the cyclic normal form in pi_1(X1) * pi_1(X2).
    const Id side_vertex = y.edges.at(e).source;
    const TwoComplex first = component_of(x, side_vertex);
    auto factor = [&](const Letter& l) { return first.edges.count(view.generators[l.gen]) ? 0 : 1; };
    long alternations = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (factor(w[k]) != factor(w[(k + 1) % w.size()])) ++alternations;
    }
    minimal = alternations;
  } else {
    // Letters from the far half of e generate the free factor Z.
    const auto it = std::find(view.generators.begin(), view.generators.end(), view.sub.halves[1]);
    const int t = static_cast<int>(it - view.generators.begin());
    minimal = std::count_if(w.begin(), w.end(), [&](const Letter& l) { return l.gen == t; });
  }
  ev.minimal_crossings = minimal;
  ev.proper_power = is_proper_power(w);
  if (minimal < ev.crossings) {
    throw Error(ErrorCode::NotMinimal,
                "R crosses e " + std::to_string(ev.crossings) + " times but its conjugacy class needs only " +
                    std::to_string(minimal) + " (cyclic normal form " + format_word(w) + ")");
  }
  if (*ev.proper_power) {
    throw Error(ErrorCode::ProperPower, "R represents a proper power: cyclic word " + format_word(w) +
                                            " has period " + std::to_string(cyclic_period(w)));
  }
  return ev;
}

bool classify_components(const TwoComplex& x, Id source, Id target) {
  const auto parts = components(x);
  if (parts.size() > 2) throw Error(ErrorCode::InvalidInput, "X must have one or two components");
  const bool joins = !component_of(x, source).vertices.count(target);
  if (parts.size() == 2 && !joins) {
    throw Error(ErrorCode::InvalidInput, "e must join the two components of X");
  }
  return joins;
}

}  // namespace

SimpleEnlargement recognise_enlargement(const TwoComplex& y, Id e, std::optional<Id> alpha) {
  require_valid(y);
  if (!y.edges.count(e)) throw Error(ErrorCode::UnknownId, "edge " + std::to_string(e) + " absent");
  if (alpha && !y.cells.count(*alpha)) {
    throw Error(ErrorCode::UnknownId, "cell " + std::to_string(*alpha) + " absent");
  }
  SimpleEnlargement out;
  out.complex = y;
  out.e = e;
  out.alpha = alpha;
  const TwoComplex x = out.base();
  for (const auto& [id, path] : x.cells) {
    for (const auto& d : path.edges) {
      if (d.edge == e) throw Error(ErrorCode::InvalidInput, "a cell of X uses e");
    }
  }
  const Edge& ed = y.edges.at(e);
  out.joins_components = classify_components(x, ed.source, ed.target);
  if (alpha) {
    out.evidence = check_conditions(y, e, out.joins_components, x.cells.empty(),
                                    y.cells.at(*alpha).edges);
  }
  return out;
}

SimpleEnlargement build_simple_enlargement(const TwoComplex& x, const NewEdge& e,
                                           const std::optional<std::vector<DirectedEdge>>& relator,
                                           std::optional<Id> alpha_id) {
  require_valid(x);
  if (!x.vertices.count(e.source) || !x.vertices.count(e.target)) {
    throw Error(ErrorCode::UnknownId, "e must join vertices of X");
  }
  TwoComplex y = x;
  const Id eid = e.id.value_or(x.next_edge_id());
  if (y.edges.count(eid)) throw Error(ErrorCode::InvalidInput, "edge id " + std::to_string(eid) + " already used");
  y.edges[eid] = {e.source, e.target};
  std::optional<Id> alpha;
  if (relator) {
    if (!is_closed_path(y, *relator)) throw Error(ErrorCode::NotClosed, "the relator is not a closed path in X u e");
    alpha = alpha_id.value_or(x.next_cell_id());
    if (y.cells.count(*alpha)) throw Error(ErrorCode::InvalidInput, "cell id " + std::to_string(*alpha) + " already used");
    y.cells[*alpha].edges = *relator;
  }
  return recognise_enlargement(y, eid, alpha);
}

BranchedCover branched_cover(const SimpleEnlargement& y, long n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be at least 1");
  if (!y.alpha) throw Error(ErrorCode::NoAlpha, "the enlargement has no 2-cell");
  BranchedCover out;
  out.alpha = *y.alpha;
  out.n = n;
  out.complex = y.complex;
  AttachingPath& cell = out.complex.cells.at(out.alpha);
  const auto once = cell.edges;
  for (long k = 1; k < n; ++k) cell.edges.insert(cell.edges.end(), once.begin(), once.end());
  out.projection = identity_map(y.complex);
  out.projection.source = out.complex;
  out.projection.cell_map[out.alpha] = {out.alpha, 0, static_cast<int>(n)};
  return out;
}

RelatorSplit split_relator(const SimpleEnlargement& y, const OrderOracle& order) {
  const AttachingPath& relator = y.relator();
  const auto& path = relator.edges;
  const std::size_t len = path.size();

  RelatorSplit out;
  out.alpha = *y.alpha;
  out.e = y.e;
  out.relator_length = len;

  std::vector<std::size_t> occurrences;
  for (std::size_t p = 0; p < len; ++p) {
    if (path[p].edge == y.e) occurrences.push_back(p);
  }
  if (occurrences.empty()) throw Error(ErrorCode::NoE, "the relator does not involve e");

  // Canonical start: the least rotation beginning at an e-occurrence.
  auto rotated = [&](std::size_t s) {
    std::vector<DirectedEdge> r(path.begin() + static_cast<long>(s), path.end());
    r.insert(r.end(), path.begin(), path.begin() + static_cast<long>(s));
    return r;
  };
  std::size_t start = occurrences.front();
  for (std::size_t s : occurrences) {
    if (rotated(s) < rotated(start)) start = s;
  }
  const std::size_t L = occurrences.size();
  for (std::size_t t = 0; t < len; ++t) {
    if (path[(start + t) % len].edge == y.e) out.crossings.push_back((start + t) % len);
  }

  // Subdivided path from the midpoint of the starting occurrence; cut[k] is
  // the length of the prefix ending at crossing k.
  const FreeGroupView view = free_group_view(y.complex, y.e);
  out.generators = view.generators;
  out.midpoint = view.sub.midpoint;
  out.halves[0] = view.sub.halves[0];
  out.halves[1] = view.sub.halves[1];
  std::vector<DirectedEdge> sub;
  std::vector<std::size_t> cut(L + 1, 0);
  const auto first = subdivide_path({path[start]}, view.sub, y.e);
  sub.push_back(first[1]);
  std::size_t next_crossing = 1;
  for (std::size_t t = 1; t < len; ++t) {
    const auto piece = subdivide_path({path[(start + t) % len]}, view.sub, y.e);
    if (piece.size() == 2) {
      sub.push_back(piece[0]);
      cut[next_crossing++] = sub.size();
      sub.push_back(piece[1]);
    } else {
      sub.push_back(piece[0]);
    }
  }
  sub.push_back(first[0]);
  cut[L] = sub.size();

  // g_L is R itself, the identity of pi_1(Y).
  out.prefixes.resize(L);
  for (std::size_t k = 1; k < L; ++k) {
    out.prefixes[k - 1] = view.word({sub.begin(), sub.begin() + static_cast<long>(cut[k])});
  }
  for (std::size_t a = 0; a < L; ++a) {
    for (std::size_t b = a + 1; b < L; ++b) {
      if (out.prefixes[a] == out.prefixes[b]) {
        throw Error(ErrorCode::NonUniqueMin,
                    "prefixes g_" + std::to_string(a + 1) + " and g_" + std::to_string(b + 1) +
                        " coincide in the free group: a proper closed subpath of R is trivial");
      }
    }
  }

  auto quotient = [&](std::size_t a, std::size_t b) {
    return free_reduce(concat(inverse(out.prefixes[a - 1]), out.prefixes[b - 1]));
  };
  auto decided = [](OrderVerdict v) {
    if (v == OrderVerdict::Undecided) throw Error(ErrorCode::OrderUndecided, "order budget exhausted");
    return v;
  };
  std::size_t bi = 1;
  std::size_t bj = 1;
  Word best = quotient(1, 1);
  for (std::size_t a = 1; a <= L; ++a) {
    for (std::size_t b = 1; b <= L; ++b) {
      const Word q = quotient(a, b);
      if (decided(order.compare(q, best).verdict) == OrderVerdict::Less) {
        best = q;
        bi = a;
        bj = b;
      }
    }
  }
  for (std::size_t a = 1; a <= L; ++a) {
    for (std::size_t b = 1; b <= L; ++b) {
      if ((a != bi || b != bj) && decided(order.compare(quotient(a, b), best).verdict) == OrderVerdict::Equal) {
        throw Error(ErrorCode::NonUniqueMin,
                    "pairs (" + std::to_string(bi) + "," + std::to_string(bj) + ") and (" +
                        std::to_string(a) + "," + std::to_string(b) + ") both minimise g_i^-1 g_j");
      }
    }
  }
  out.i = bi;
  out.j = bj;

  for (std::size_t k = 1; k <= L; ++k) {
    if (k == bj) continue;
    const Word seg = quotient(bj, k);
    if (decided(is_positive(seg, order)) != OrderVerdict::Greater ||
        decided(is_positive(inverse(seg), order)) != OrderVerdict::Less) {
      throw Error(ErrorCode::MalformedState, "initial segment g_j^-1 g_" + std::to_string(k) +
                                                 " is not positive");
    }
  }

  const std::size_t total = sub.size();
  const std::size_t cj = cut[bj % L == 0 ? L : bj] % total;
  const std::size_t ci = cut[bi % L == 0 ? L : bi] % total;
  std::size_t ulen = (ci + total - cj) % total;
  if (ulen == 0) ulen = total;
  std::vector<DirectedEdge> uv;
  for (std::size_t t = 0; t < total; ++t) uv.push_back(sub[(cj + t) % total]);
  out.u_path.assign(uv.begin(), uv.begin() + static_cast<long>(ulen));
  out.v_path.assign(uv.begin() + static_cast<long>(ulen), uv.end());
  out.u_word = view.word(out.u_path);
  out.v_word = view.word(out.v_path);
  out.low_position = out.crossings[bj % L];
  out.high_position = out.crossings[bi % L];
  return out;
}

EdgeClassification classify_edges(const CombMap& f, const RelatorSplit& split) {
  require_valid_map(f);
  auto alpha = f.target.cells.find(split.alpha);
  if (alpha == f.target.cells.end()) throw Error(ErrorCode::NoAlpha, "alpha is not a cell of the target");
  const std::size_t L = alpha->second.size();
  if (L != split.relator_length) throw Error(ErrorCode::Mismatch, "split does not belong to this target");

  EdgeClassification out;
  std::map<Id, Id> low_owner;
  std::map<Id, Id> high_owner;
  for (const auto& [id, im] : f.cell_map) {
    if (im.cell != split.alpha) continue;
    const AttachingPath& path = f.source.cells.at(id);
    CellClassification c;
    c.cell = id;
    c.degree = im.degree;
    for (std::size_t p = 0; p < path.size(); ++p) {
      const std::size_t image = (im.rotation + p) % L;
      if (image == split.low_position) c.low.push_back({p, path.edges[p].edge});
      if (image == split.high_position) c.high.push_back({p, path.edges[p].edge});
    }
    if (c.low.size() != static_cast<std::size_t>(im.degree) ||
        c.high.size() != static_cast<std::size_t>(im.degree)) {
      throw Error(ErrorCode::MalformedState, "cell " + std::to_string(id) + " has the wrong number of low edges");
    }
    auto claim = [&](std::map<Id, Id>& owner, const std::vector<std::pair<std::size_t, Id>>& list,
                     const char* kind) {
      for (const auto& [p, edge] : list) {
        auto [it, inserted] = owner.emplace(edge, id);
        if (!inserted && it->second != id) {
          throw Error(ErrorCode::ClassificationConflict,
                      "edge " + std::to_string(edge) + " is a " + kind + " edge of cells " +
                          std::to_string(it->second) + " and " + std::to_string(id));
        }
      }
    };
    claim(low_owner, c.low, "low");
    claim(high_owner, c.high, "high");
    c.associated = c.low.front().second;
    c.distinguished_rotation = c.low.front().first;
    for (const auto& [p, edge] : c.low) {
      if (edge < c.associated) {
        c.associated = edge;
        c.distinguished_rotation = p;
      }
    }
    out.associated_to_cell[c.associated] = id;
    out.cells[id] = std::move(c);
  }
  return out;
}

}  // namespace orlab
