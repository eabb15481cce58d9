#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orlab/words.hpp"

namespace orlab {

/// Cell identifiers are opaque non-negative integers. All iteration is in
/// ascending id order.
using Id = std::int64_t;

struct DirectedEdge {
  Id edge = 0;
  int sign = 1;

  DirectedEdge inverse() const { return {edge, -sign}; }
  auto operator<=>(const DirectedEdge&) const = default;
};

/// Closed edge-path along which a 2-cell is attached. `rotation` marks the
/// basepoint: the based path starts at `edges[rotation]`.
struct AttachingPath {
  std::vector<DirectedEdge> edges;
  std::size_t rotation = 0;

  std::size_t size() const { return edges.size(); }
  const DirectedEdge& operator[](std::size_t i) const { return edges[i % edges.size()]; }
  std::vector<DirectedEdge> based() const;
  bool operator==(const AttachingPath&) const = default;
};

struct Edge {
  Id source = 0;
  Id target = 0;
  bool operator==(const Edge&) const = default;
};

struct TwoComplex {
  std::set<Id> vertices;
  std::map<Id, Edge> edges;
  std::map<Id, AttachingPath> cells;

  Id tail(const DirectedEdge& d) const;
  Id head(const DirectedEdge& d) const;

  Id next_vertex_id() const;
  Id next_edge_id() const;
  Id next_cell_id() const;

  std::size_t cell_count() const { return vertices.size() + edges.size() + cells.size(); }
  bool operator==(const TwoComplex&) const = default;
};

struct Violation {
  std::string kind;  // "vertex", "edge", "cell", "map", ...
  Id id = 0;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

ValidationReport validate(const TwoComplex& k);
void require_valid(const TwoComplex& k);

/// True when `path` is a nonempty closed composable edge-path in `k`.
bool is_closed_path(const TwoComplex& k, const std::vector<DirectedEdge>& path);

long euler_characteristic(const TwoComplex& k);

/// Connected components, ordered by their least vertex id. Every edge and
/// cell belongs to exactly one part.
std::vector<TwoComplex> components(const TwoComplex& k);

/// Component containing vertex `v`.
TwoComplex component_of(const TwoComplex& k, Id v);

/// Subcomplex spanned by the given cells (closure is not taken; the caller
/// supplies a closed set). Throws when the result is not a valid complex.
TwoComplex subcomplex(const TwoComplex& k, const std::set<Id>& vertices,
                      const std::set<Id>& edges, const std::set<Id>& cells);

struct Subdivision {
  TwoComplex complex;
  Id midpoint = 0;
  /// halves[0] runs midpoint -> old source, halves[1] runs midpoint -> old target.
  Id halves[2] = {0, 0};
};

Subdivision subdivide_edge(const TwoComplex& k, Id edge);

/// Rewrites a path of the unsubdivided complex through the two half-edges.
std::vector<DirectedEdge> rewrite_through_halves(const std::vector<DirectedEdge>& path,
                                                 const Subdivision& sub, Id old_edge);

/// Breadth-first spanning tree of the component of `root`, ascending-id ties.
/// Edges in `deferred` are used only to reach vertices the others cannot.
struct SpanningTree {
  Id root = 0;
  std::set<Id> tree_edges;
  std::set<Id> vertices;
  /// Tree path from the root to each vertex.
  std::map<Id, std::vector<DirectedEdge>> path_from_root;
};

SpanningTree spanning_tree(const TwoComplex& k, Id root, const std::set<Id>& deferred = {});

struct Presentation {
  /// Generator i is the non-tree edge generators[i].
  std::vector<Id> generators;
  std::vector<Word> relators;
};

Presentation fundamental_group_presentation(const TwoComplex& k, Id basepoint);

/// Word of an edge-path in the free group on the non-tree edges of `tree`.
Word path_word(const SpanningTree& tree, const std::vector<Id>& generators,
               const std::vector<DirectedEdge>& path);

/// Equality of closed paths as cyclic words, over all rotations and both
/// orientations.
bool cyclically_equal(const std::vector<DirectedEdge>& a, const std::vector<DirectedEdge>& b);

std::vector<DirectedEdge> inverse_path(const std::vector<DirectedEdge>& p);

/// Smallest period of a cyclic edge-path (the path is S^(len/period)).
std::size_t path_period(const std::vector<DirectedEdge>& p);

/// Edge whose only occurrence in all attaching paths is a single one.
std::optional<Id> find_free_edge(const TwoComplex& k);
std::map<Id, int> edge_occurrence_counts(const TwoComplex& k);

/// One-vertex complex: vertex 0, a loop with id i per generator i, and a
/// 2-cell with id j per relator j.
TwoComplex presentation_complex(int generators, const std::vector<Word>& relators);

}  // namespace orlab
