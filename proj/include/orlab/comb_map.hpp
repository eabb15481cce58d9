#pragma once

#include <map>
#include <optional>
#include <string>

#include "orlab/complex.hpp"

namespace orlab {

struct EdgeImage {
  Id edge = 0;
  int sign = 1;
  bool operator==(const EdgeImage&) const = default;
};

/// Image of a 2-cell. Position i of the source path maps onto position
/// (rotation + i) mod L of the image path, where L is the image path length.
/// The source path has length degree * L; `rotation` ranges over
/// [0, degree * L) so that the sheet of position i is
/// ((rotation + i) mod (degree * L)) / L.
struct CellImage {
  Id cell = 0;
  std::size_t rotation = 0;
  int degree = 1;
  bool operator==(const CellImage&) const = default;
};

/// Combinatorial map between 2-complexes. With every degree equal to one it
/// is an ordinary combinatorial map; otherwise it is a branch map whose
/// degree-d cells wrap d times around their image.
struct CombMap {
  TwoComplex source;
  TwoComplex target;
  std::map<Id, Id> vertex_map;
  std::map<Id, EdgeImage> edge_map;
  std::map<Id, CellImage> cell_map;

  DirectedEdge image(const DirectedEdge& d) const;
  bool has_branching() const;
  bool operator==(const CombMap&) const = default;
};

CombMap identity_map(const TwoComplex& k);

/// Inclusion of a subcomplex (ids are shared).
CombMap inclusion_map(const TwoComplex& sub, const TwoComplex& k);

ValidationReport validate_map(const CombMap& f);
void require_valid_map(const CombMap& f);

struct ImmersionWitness {
  enum class Kind { Vertex, Edge, Degree } kind = Kind::Vertex;
  /// Vertex or edge at which injectivity fails (cell for Kind::Degree).
  Id where = 0;
  /// Colliding pair: edge-ends (edge id, end 0/1) for a vertex witness,
  /// side-occurrences (cell id, position) for an edge witness.
  std::pair<Id, long> first{0, 0};
  std::pair<Id, long> second{0, 0};

  std::string describe() const;
};

struct ImmersionVerdict {
  bool ok = true;
  std::optional<ImmersionWitness> witness;
  explicit operator bool() const { return ok; }
};

/// Local injectivity at vertices (edge-ends) and along edges (2-cell sides).
/// Any cell of degree > 1 disqualifies the map.
ImmersionVerdict is_immersion(const CombMap& f);

/// As is_immersion, except that two sides belonging to the same degree-d
/// cell are told apart by their sheet index; sides of distinct cells must
/// still have distinct images.
ImmersionVerdict is_branch_map(const CombMap& f);

/// g after f. Requires target of f == source of g.
CombMap compose(const CombMap& g, const CombMap& f);

/// True when the map is bijective on vertices, edges and cells.
bool is_isomorphism(const CombMap& f);

/// Same target and the same assignment on every vertex, edge and cell.
bool maps_equal(const CombMap& a, const CombMap& b);

}  // namespace orlab
