#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orlab/enumerate.hpp"
#include "orlab/io.hpp"

namespace orlab {

enum class Check { PPower, FiveBeta, ElevenK, Nonpos, Dh, Collapse, Euler, SelfImmersion };

const char* check_name(Check c);
/// Throws InvalidInput on an unknown name.
Check parse_check(const std::string& name);
std::set<Check> all_checks();

struct SuiteOptions {
  EnumerationBudget budget{8, 12, 4, 3, 0, true};
  std::set<Check> checks = all_checks();
  std::vector<long> primes{2, 3};
  /// Branch orders n of the covers used by 5beta and 11k, and by dh.
  std::vector<long> covers{2, 3};
  long picture_vertices = 3;
  std::vector<Surface> surfaces{disk(), annulus(), torus()};
  /// Maps to check instead of the enumeration. Each goes to the checks on
  /// Y or on a branched cover according to its target.
  std::optional<std::vector<CombMap>> instances;
  /// Directory for witness bundles; none are written when empty.
  std::string witness_dir;
};

struct CheckSummary {
  Check check = Check::PPower;
  /// "p=2", "n=3", ... or empty.
  std::string params;
  long instances = 0;
  long pass = 0;
  long fail = 0;
  long not_applicable = 0;
  long inconclusive = 0;
  bool partial = false;
  /// Check-specific tallies, e.g. "stuck" or "max_k".
  std::map<std::string, long> tallies;
};

struct SuiteReport {
  std::string target;
  std::vector<CheckSummary> checks;
  std::vector<DhCell> dh_cells;
  /// One bundle per Fail, in discovery order. Written to disk as
  /// witness-<check>-<k>.json when a witness directory is set.
  std::vector<Json> witnesses;
  std::vector<std::string> witness_files;
  std::map<std::string, double> seconds;

  long fails() const;
  /// Verdict table without timings: identical runs give identical bytes.
  Json to_json() const;
  std::string table() const;
};

SuiteReport run_suite(const SimpleEnlargement& y, const std::string& name, const SuiteOptions& options);

struct ReplayResult {
  std::string check;
  BoundVerdict verdict = BoundVerdict::NotApplicable;
  std::string detail;
};

/// Re-runs the check recorded in a witness bundle.
ReplayResult replay_witness(const Json& bundle);

/// X = two circles a, b; e from b's vertex to a's; R = e a e^-1 b.
SimpleEnlargement ab_family();
/// X = circle a; e a loop t; R = a t a t^-1.
SimpleEnlargement klein_family();

struct CoherenceStep {
  TwoComplex next;
  /// Immersion of the next stage into the target.
  CombMap immersion;
  /// Previous stage into the next.
  CombMap inclusion;
  std::vector<FoldStep> log;
};

/// One stage of the coherence iteration: glue a disc along the closed path
/// `boundary` of the stage, map it onto the target cell `cell` read from
/// `rotation`, and refold. Throws InvalidInput when the boundary does not
/// trace the image cell's attaching path.
CoherenceStep demo_coherence_step(const CombMap& stage, const std::vector<DirectedEdge>& boundary, Id cell,
                                  std::size_t rotation = 0);

}  // namespace orlab
