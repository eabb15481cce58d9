#pragma once

#include <optional>
#include <vector>

#include "orlab/comb_map.hpp"

namespace orlab {

struct FoldStep {
  enum class Kind { EdgeFold, CellFold } kind = Kind::EdgeFold;
  /// Surviving and absorbed item (edge ids or cell ids).
  Id kept = 0;
  Id absorbed = 0;
  /// For an edge fold: absorbed = kept^relation. For a cell fold: the
  /// absorbed cell's path equals the kept path read from position `shift`.
  int relation = 1;
  std::size_t shift = 0;
  /// Vertex identifications (absorbed vertex, surviving vertex).
  std::vector<std::pair<Id, Id>> vertex_merges;
};

/// Running state of a fold: W -> current -> Y.
struct FoldState {
  CombMap to_current;
  CombMap to_target;
};

FoldState initial_fold_state(const CombMap& phi);

/// Applies the least applicable fold (edge folds before cell folds, lowest
/// id pair first). Returns nothing when `to_target` is already an immersion.
std::optional<FoldStep> fold_once(FoldState& state);

struct FoldResult {
  TwoComplex folded;    // Y'
  CombMap surjection;   // W -> Y'
  CombMap immersion;    // Y' -> Y
  std::vector<FoldStep> log;
};

/// Factors a combinatorial map through an immersion by iterated folding.
FoldResult fold_to_immersion(const CombMap& phi);

}  // namespace orlab
