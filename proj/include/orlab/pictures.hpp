#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlab/bounds.hpp"
#include "orlab/enlargement.hpp"

namespace orlab {

struct Surface {
  int genus = 0;
  int boundary = 0;

  long euler() const { return 2 - 2L * genus - boundary; }
  std::string name() const;
  bool operator==(const Surface&) const = default;
};

Surface disk();
Surface annulus();
Surface torus();

/// One end of an arc: a slot (position in a vertex word) or a point of the
/// boundary. Boundary points are ordered by `index` along their component,
/// walking with the surface on the left.
struct ArcEnd {
  int vertex = -1;
  std::size_t slot = 0;
  int boundary = -1;
  long index = 0;

  bool on_boundary() const { return vertex < 0; }
};

struct Arc {
  Id label = 0;
  ArcEnd ends[2];
};

/// Relative picture over the n-fold branched cover: every vertex reads
/// R^n or R^-n clockwise, every arc is labelled by e and meets e-slots.
struct Picture {
  Surface surface;
  std::vector<std::vector<DirectedEdge>> vertices;
  std::vector<Arc> arcs;
  std::vector<Id> circles;

  long boundary_points() const;
};

ValidationReport validate_picture(const Picture& p, const SimpleEnlargement& y, long n);

struct ReducedVerdict {
  bool reduced = true;
  std::optional<std::pair<int, int>> pair;
  std::optional<std::size_t> arc;
};

/// Mirror-pair criterion: two distinct vertices joined by an arc whose words,
/// read from the arc in opposite senses, are inverse corner by corner.
ReducedVerdict is_reduced(const Picture& p, const SimpleEnlargement& y);

/// 2n(V - 1) + 2 chi(surface).
long dh_bound(long n, long vertices, const Surface& s);

struct DhReport {
  BoundVerdict verdict = BoundVerdict::NotApplicable;
  long count = 0;
  long bound = 0;
  long vertices = 0;
  /// Closed surfaces of Euler characteristic 0: the inequality forces V <= 1.
  std::optional<bool> at_most_one_vertex;
};

DhReport check_dh(const Picture& p, const SimpleEnlargement& y, long n);

struct DhCell {
  Surface surface;
  long n = 0;
  long vertices = 0;
  long bound = 0;
  long pictures = 0;
  long reduced = 0;
  long fails = 0;
  std::optional<long> min_count;
};

struct DhSuite {
  std::vector<DhCell> cells;
  std::vector<Picture> failures;
  /// Slot matchings examined.
  long matchings = 0;
};

/// All connected relative pictures with at most `max_vertices` vertices on
/// each surface; see the README for the picture classes covered.
/// `visit` sees one representative of every reduced picture class.
DhSuite dh_suite(const SimpleEnlargement& y, long n, long max_vertices, const std::vector<Surface>& surfaces,
                 const std::function<void(const Picture&, const DhReport&)>& visit = {});

}  // namespace orlab
