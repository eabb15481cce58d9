#pragma once

#include <functional>
#include <vector>

#include "orlab/comb_map.hpp"

namespace orlab {

struct EnumerationBudget {
  long vertices = 8;
  long edges = 12;
  long cells = 4;
  /// Largest branch index; 1 enumerates immersions.
  long max_degree = 1;
  /// Wall-clock limit in seconds, 0 for none.
  double seconds = 0;
  /// Only complexes in which every edge lies on a 2-cell (grown cell by
  /// cell). Without it, every immersed graph is enumerated and then every
  /// admissible set of cells.
  bool covered = true;
};

struct EnumerationResult {
  long emitted = 0;
  /// The time limit stopped the enumeration early.
  bool partial = false;
};

/// Connected sources Y' with a branch map (immersion when max_degree is 1)
/// to y, one per isomorphism class over y. Source edges map with sign +1,
/// source cells with rotation 0. Emission order is deterministic.
EnumerationResult enumerate_immersions(const TwoComplex& y, const EnumerationBudget& budget,
                                       const std::function<void(const CombMap&)>& emit);

std::vector<CombMap> collect_immersions(const TwoComplex& y, const EnumerationBudget& budget);

/// Every immersion k -> l (degree-one, locally injective), by backtracking
/// from the least vertex of each component of k.
std::vector<CombMap> immersions_between(const TwoComplex& k, const TwoComplex& l);

}  // namespace orlab
