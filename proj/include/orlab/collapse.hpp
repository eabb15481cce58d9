#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orlab/enlargement.hpp"
#include "orlab/homology.hpp"

namespace orlab {

/// Y' minus every cell over alpha and its associated 1-cell.
TwoComplex remove_associated(const TwoComplex& y_prime, const EdgeClassification& cls);

struct TrivialityCertificate {
  TwoComplex component;
  /// Each non-tree edge of the component with the free word of its loop's
  /// image in pi_1 of the target 1-skeleton. All of them reduce to 1.
  std::vector<std::pair<Id, Word>> generator_images;
};

/// First component (by least vertex) of `z` whose loops all map to freely
/// trivial words in the 1-skeleton of f's target.
std::optional<TrivialityCertificate> trivial_image_component(const TwoComplex& z, const CombMap& f);

/// Half of an edge: end 0 touches the edge's source, end 1 its target.
struct HalfEdge {
  Id edge = 0;
  int end = 0;
  auto operator<=>(const HalfEdge&) const = default;
};

/// Current subcomplex T' as sets of ids.
struct CollapseState {
  std::set<Id> vertices;
  std::set<Id> edges;
  std::set<Id> cells;
};

/// Half-edges of associated edges of cells outside T' with an endpoint in T'.
std::vector<HalfEdge> frontier_half_edges(const TwoComplex& y_prime, const EdgeClassification& cls,
                                          const CollapseState& state);

/// The half-edge e'' such that the distinguished path of e''s cell reads
/// e'.P.(e'')^-1 with P in T'. Throws MalformedState when e' is not in E or
/// the first edge outside T' is not associated.
HalfEdge successor(const TwoComplex& y_prime, const EdgeClassification& cls, const CollapseState& state,
                   const HalfEdge& e);

struct CollapseStep {
  Id cell = 0;
  Id edge = 0;
  long k = 1;
};

struct CollapseCertificate {
  std::vector<CollapseStep> steps;  // in the order T grows back to Y'
  TwoComplex target;                // T
};

struct StuckWitness {
  std::string reason;
  CollapseState state;
  std::vector<std::pair<HalfEdge, std::optional<HalfEdge>>> successors;
};

struct CollapseOutcome {
  std::optional<CollapseCertificate> certificate;
  std::optional<StuckWitness> stuck;
};

/// Grows T back to Y' by low-edge almost-collapses read in reverse. With
/// `torsion_free`, f must be an immersion and every step must have k = 1.
CollapseOutcome almost_collapse_sequence(const CombMap& f, const EdgeClassification& cls,
                                         const TwoComplex& t, bool torsion_free);

/// Removes the steps from Y' last-first and checks each one at its moment.
/// Returns the final complex; throws MalformedState on an invalid step.
TwoComplex replay_certificate(const TwoComplex& y_prime, const CollapseCertificate& cert);

/// H_1(Y') against H_1(T) plus Z/k for each step.
bool homology_bookkeeping_holds(const TwoComplex& y_prime, const CollapseCertificate& cert);

enum class Contractibility { Contractible, NotContractible, Unknown };

const char* contractibility_name(Contractibility c);

struct ContractibilityReport {
  Contractibility verdict = Contractibility::Unknown;
  /// Free-face collapses performed: ("cell", id, edge) or ("edge", id, vertex).
  std::vector<std::string> collapses;
  std::string witness;
};

ContractibilityReport contractibility_report(const TwoComplex& k);

}  // namespace orlab
