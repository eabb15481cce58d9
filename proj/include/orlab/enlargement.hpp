#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orlab/comb_map.hpp"
#include "orlab/order.hpp"

namespace orlab {

/// Outcome of the three defining conditions. Conditions 2 and 3 are decided
/// in the free group and left unset when X has 2-cells.
struct EnlargementEvidence {
  long crossings = 0;
  std::optional<long> minimal_crossings;
  std::optional<bool> proper_power;
  /// Cyclically reduced word of R in pi_1(X u e), generators as in `generators`.
  Word reduced_word;
  std::vector<Id> generators;
  std::string note;
};

/// Y = X u e u alpha. X is recovered as Y minus e and alpha.
struct SimpleEnlargement {
  TwoComplex complex;
  Id e = 0;
  std::optional<Id> alpha;
  /// X has two components joined by e.
  bool joins_components = false;
  EnlargementEvidence evidence;

  TwoComplex base() const;
  const AttachingPath& relator() const;
};

struct NewEdge {
  Id source = 0;
  Id target = 0;
  std::optional<Id> id;
};

/// Adds e (and alpha along `relator`, if given) to X and checks the three
/// conditions. Throws NoE, NotMinimal, ProperPower or NotClosed.
SimpleEnlargement build_simple_enlargement(const TwoComplex& x, const NewEdge& e,
                                           const std::optional<std::vector<DirectedEdge>>& relator,
                                           std::optional<Id> alpha_id = std::nullopt);

/// Reads an existing complex as X u e u alpha and checks the conditions.
SimpleEnlargement recognise_enlargement(const TwoComplex& y, Id e, std::optional<Id> alpha);

/// Parses a relator path: edge ids, "-id" for an inverse, "e" / "-e" for the
/// new edge, separated by spaces or commas.
std::vector<DirectedEdge> parse_relator_path(const std::string& text, Id e);

struct BranchedCover {
  TwoComplex complex;
  /// Identity off alpha, degree n on alpha_n (which keeps alpha's id).
  CombMap projection;
  Id alpha = 0;
  long n = 1;
};

BranchedCover branched_cover(const SimpleEnlargement& y, long n);

/// R read from the midpoint of its low edge as U.V.
struct RelatorSplit {
  Id alpha = 0;
  Id e = 0;
  std::size_t relator_length = 0;
  /// Positions in alpha's attaching path of the e-occurrences that start
  /// U.V (low) and V.U (high).
  std::size_t low_position = 0;
  std::size_t high_position = 0;
  /// Crossings of the midpoint, as positions in alpha's path, in the order
  /// used for the prefix elements g_1 ... g_L.
  std::vector<std::size_t> crossings;
  /// Minimising pair (1-based, as g_i^-1 g_j).
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<Word> prefixes;
  std::vector<Id> generators;
  /// U and V on the complex with e subdivided; halves as in subdivide_edge.
  std::vector<DirectedEdge> u_path;
  std::vector<DirectedEdge> v_path;
  Word u_word;
  Word v_word;
  Id midpoint = 0;
  Id halves[2] = {0, 0};
};

RelatorSplit split_relator(const SimpleEnlargement& y, const OrderOracle& order);

struct CellClassification {
  Id cell = 0;
  int degree = 1;
  /// (position in the cell's path, edge id)
  std::vector<std::pair<std::size_t, Id>> low;
  std::vector<std::pair<std::size_t, Id>> high;
  Id associated = 0;
  std::size_t distinguished_rotation = 0;
};

struct EdgeClassification {
  std::map<Id, CellClassification> cells;
  /// Associated edge -> its cell.
  std::map<Id, Id> associated_to_cell;
};

/// Low and high edges of every cell over alpha. Throws
/// ClassificationConflict when an edge is low (or high) for two cells.
EdgeClassification classify_edges(const CombMap& f, const RelatorSplit& split);

}  // namespace orlab
