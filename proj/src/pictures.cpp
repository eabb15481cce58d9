#include "orlab/pictures.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "orlab/error.hpp"

namespace orlab {

std::string Surface::name() const {
  if (genus == 0 && boundary == 1) return "disk";
  if (genus == 0 && boundary == 2) return "annulus";
  if (genus == 1 && boundary == 0) return "torus";
  if (genus == 0 && boundary == 0) return "sphere";
  return "genus " + std::to_string(genus) + " with " + std::to_string(boundary) + " boundary";
}

Surface disk() { return {0, 1}; }
Surface annulus() { return {0, 2}; }
Surface torus() { return {1, 0}; }

long Picture::boundary_points() const {
  long count = 0;
  for (const Arc& a : arcs) {
    for (const ArcEnd& end : a.ends) {
      if (end.on_boundary()) ++count;
    }
  }
  return count;
}

long dh_bound(long n, long vertices, const Surface& s) { return 2 * n * (vertices - 1) + 2 * s.euler(); }

namespace {

// Free-group words of paths in Y's 1-skeleton, used to compare corners.
struct WordContext {
  SpanningTree tree;
  std::vector<Id> generators;

  explicit WordContext(const TwoComplex& y) {
    TwoComplex skeleton = y;
    skeleton.cells.clear();
    tree = spanning_tree(skeleton, *skeleton.vertices.begin());
    for (const auto& [id, e] : skeleton.edges) {
      if (!tree.tree_edges.count(id)) generators.push_back(id);
    }
  }

  Word word(const std::vector<DirectedEdge>& path) const { return free_reduce(path_word(tree, generators, path)); }
};

// A vertex word cut at its e-slots.
struct Label {
  std::vector<DirectedEdge> word;
  std::vector<std::size_t> slots;
  std::vector<int> signs;
  // corners[k]: reduced word strictly between slot k and slot k+1
  std::vector<Word> corners;

  Label(std::vector<DirectedEdge> w, Id e, const WordContext& ctx) : word(std::move(w)) {
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (word[i].edge == e) {
        slots.push_back(i);
        signs.push_back(word[i].sign);
      }
    }
    const std::size_t m = slots.size();
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<DirectedEdge> path;
      const std::size_t stop = k + 1 < m ? slots[k + 1] : slots[0] + word.size();
      for (std::size_t i = slots[k] + 1; i < stop; ++i) path.push_back(word[i % word.size()]);
      corners.push_back(ctx.word(path));
    }
  }

  std::size_t slot_index(std::size_t position) const {
    return static_cast<std::size_t>(std::lower_bound(slots.begin(), slots.end(), position) - slots.begin());
  }
};

std::vector<DirectedEdge> power_label(const std::vector<DirectedEdge>& relator, long n, int orientation) {
  std::vector<DirectedEdge> w;
  for (long i = 0; i < n; ++i) w.insert(w.end(), relator.begin(), relator.end());
  return orientation > 0 ? w : inverse_path(w);
}

// Orientation (+1 / -1) of a vertex word, or 0 if it reads neither power.
int orientation_of(const std::vector<DirectedEdge>& word, const std::vector<DirectedEdge>& relator, long n) {
  for (int o : {1, -1}) {
    const auto label = power_label(relator, n, o);
    if (label.size() != word.size()) continue;
    for (std::size_t r = 0; r < word.size(); ++r) {
      bool same = true;
      for (std::size_t i = 0; i < word.size() && same; ++i) same = word[(r + i) % word.size()] == label[i];
      if (same) return o;
    }
  }
  return 0;
}

// Words read from slot x of u clockwise and from slot y of v anticlockwise
// are inverse, corner by corner.
bool mirror(const Label& u, std::size_t x, const Label& v, std::size_t y) {
  const std::size_t m = u.slots.size();
  if (v.slots.size() != m) return false;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t a = (x + j) % m;
    const std::size_t b = (y + m - j % m) % m;
    if (u.signs[a] != -v.signs[b]) return false;
    if (u.corners[a] != inverse(v.corners[(b + m - 1) % m])) return false;
  }
  return true;
}

const std::vector<DirectedEdge>& relator_path(const SimpleEnlargement& y) {
  if (!y.alpha) throw Error(ErrorCode::NoAlpha, "pictures need the relator cell");
  return y.relator().edges;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

ValidationReport validate_picture(const Picture& p, const SimpleEnlargement& y, long n) {
  ValidationReport out;
  const auto& relator = relator_path(y);
  const WordContext ctx(y.complex);
  const Surface& s = p.surface;
  if (s.genus < 0 || s.boundary < 0) out.push_back({"surface", 0, "negative genus or boundary count"});

  std::vector<Label> labels;
  for (std::size_t v = 0; v < p.vertices.size(); ++v) {
    if (orientation_of(p.vertices[v], relator, n) == 0) {
      out.push_back({"vertex", static_cast<Id>(v), "does not read R^n or R^-n for n = " + std::to_string(n)});
    }
    labels.emplace_back(p.vertices[v], y.e, ctx);
  }
  if (!out.empty()) return out;

  // Darts: e-slots of each vertex, then boundary points by component.
  std::vector<std::size_t> vertex_base(p.vertices.size() + 1, 0);
  for (std::size_t v = 0; v < labels.size(); ++v) vertex_base[v + 1] = vertex_base[v] + labels[v].slots.size();
  std::map<int, std::map<long, std::size_t>> boundary_points;  // component -> index -> arc end
  std::vector<long> dart_of_slot(vertex_base.back(), -1);

  struct End {
    bool boundary;
    int where;
    long pos;
  };
  std::vector<std::pair<End, End>> arc_ends;
  for (std::size_t a = 0; a < p.arcs.size(); ++a) {
    const Arc& arc = p.arcs[a];
    const Id aid = static_cast<Id>(a);
    if (arc.label != y.e) out.push_back({"arc", aid, "label is not e"});
    End ends[2];
    for (int k = 0; k < 2; ++k) {
      const ArcEnd& end = arc.ends[k];
      if (end.on_boundary()) {
        if (end.boundary < 0 || end.boundary >= s.boundary) {
          out.push_back({"arc", aid, "boundary component " + std::to_string(end.boundary) + " does not exist"});
          continue;
        }
        if (!boundary_points[end.boundary].emplace(end.index, a).second) {
          out.push_back({"arc", aid, "boundary point used twice"});
        }
        ends[k] = {true, end.boundary, end.index};
        continue;
      }
      if (end.vertex >= static_cast<int>(p.vertices.size()) || end.slot >= p.vertices[end.vertex].size()) {
        out.push_back({"arc", aid, "slot out of range"});
        continue;
      }
      const Label& l = labels[end.vertex];
      if (l.word[end.slot].edge != y.e) {
        out.push_back({"arc", aid, "slot " + std::to_string(end.slot) + " is not an e-slot"});
        continue;
      }
      const std::size_t dart = vertex_base[end.vertex] + l.slot_index(end.slot);
      if (dart_of_slot[dart] >= 0) out.push_back({"arc", aid, "slot used twice"});
      dart_of_slot[dart] = static_cast<long>(a);
      ends[k] = {false, end.vertex, static_cast<long>(end.slot)};
    }
    if (!arc.ends[0].on_boundary() && !arc.ends[1].on_boundary() && out.empty()) {
      const int s0 = p.vertices[ends[0].where][ends[0].pos].sign;
      const int s1 = p.vertices[ends[1].where][ends[1].pos].sign;
      if (s0 != -s1) out.push_back({"arc", aid, "ends read e with the same sign"});
    }
    arc_ends.push_back({ends[0], ends[1]});
  }
  for (Id c : p.circles) {
    if (c != y.e) out.push_back({"circle", c, "label is not e"});
  }
  for (std::size_t v = 0; v < labels.size(); ++v) {
    for (std::size_t k = 0; k < labels[v].slots.size(); ++k) {
      if (dart_of_slot[vertex_base[v] + k] < 0) {
        out.push_back({"vertex", static_cast<Id>(v), "e-slot " + std::to_string(labels[v].slots[k]) + " is unused"});
      }
    }
  }
  if (!out.empty()) return out;

  // Ribbon graph with each used boundary component as one more vertex.
  std::map<std::pair<int, long>, std::size_t> boundary_dart;
  std::vector<std::size_t> sigma(vertex_base.back());
  std::vector<int> node(vertex_base.back());
  for (std::size_t v = 0; v < labels.size(); ++v) {
    const std::size_t m = labels[v].slots.size();
    for (std::size_t k = 0; k < m; ++k) {
      sigma[vertex_base[v] + k] = vertex_base[v] + (k + 1) % m;
      node[vertex_base[v] + k] = static_cast<int>(v);
    }
  }
  int nodes = static_cast<int>(labels.size());
  for (const auto& [comp, points] : boundary_points) {
    const std::size_t first = sigma.size();
    for (const auto& [index, arc] : points) {
      boundary_dart[{comp, index}] = sigma.size();
      sigma.push_back(sigma.size() + 1);
      node.push_back(nodes);
    }
    sigma.back() = first;
    ++nodes;
  }
  auto dart = [&](const End& e) {
    if (e.boundary) return boundary_dart.at({e.where, e.pos});
    return vertex_base[e.where] + labels[e.where].slot_index(static_cast<std::size_t>(e.pos));
  };
  std::vector<std::size_t> alpha(sigma.size());
  UnionFind uf(static_cast<std::size_t>(nodes));
  std::vector<int> arcs_at(nodes, 0);
  for (const auto& [a, b] : arc_ends) {
    const std::size_t da = dart(a), db = dart(b);
    alpha[da] = db;
    alpha[db] = da;
    uf.unite(node[da], node[db]);
    ++arcs_at[uf.find(node[da])];
  }
  std::vector<int> face(sigma.size(), -1);
  std::vector<std::vector<std::size_t>> faces;
  for (std::size_t d = 0; d < sigma.size(); ++d) {
    if (face[d] >= 0) continue;
    faces.emplace_back();
    for (std::size_t x = d; face[x] < 0; x = alpha[sigma[x]]) {
      face[x] = static_cast<int>(faces.size()) - 1;
      faces.back().push_back(x);
    }
  }
  std::map<int, long> v_count, e_count, f_count;
  for (int v = 0; v < nodes; ++v) ++v_count[uf.find(v)];
  for (std::size_t d = 0; d < sigma.size(); ++d) {
    if (d < alpha[d]) ++e_count[uf.find(node[d])];
  }
  for (const auto& f : faces) ++f_count[uf.find(node[f.front()])];
  long genus = 0;
  for (const auto& [root, vc] : v_count) genus += (2 - vc + e_count[root] - f_count[root]) / 2;
  if (genus > s.genus) {
    out.push_back({"surface", 0, "ribbon graph needs genus " + std::to_string(genus) + " > " + std::to_string(s.genus)});
    return out;
  }

  // Regions away from the boundary must map to null-homotopic loops in X.
  // Unused boundary components may sit in some of them.
  if (v_count.size() == 1) {
    const long spare = s.boundary - static_cast<long>(boundary_points.size());
    std::vector<int> nontrivial;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      Word w;
      bool at_boundary = false;
      for (std::size_t x : faces[f]) {
        if (node[x] >= static_cast<int>(labels.size())) {
          at_boundary = true;
          break;
        }
        const std::size_t v = static_cast<std::size_t>(node[x]);
        w = concat(w, labels[v].corners[x - vertex_base[v]]);
      }
      if (!at_boundary && !free_reduce(w).empty()) nontrivial.push_back(static_cast<int>(f));
    }
    if (static_cast<long>(nontrivial.size()) > spare) {
      for (int f : nontrivial) out.push_back({"face", f, "interior region reads a nontrivial loop in X"});
    }
  }
  return out;
}

ReducedVerdict is_reduced(const Picture& p, const SimpleEnlargement& y) {
  const WordContext ctx(y.complex);
  relator_path(y);
  std::vector<Label> labels;
  for (const auto& w : p.vertices) labels.emplace_back(w, y.e, ctx);
  ReducedVerdict out;
  for (std::size_t a = 0; a < p.arcs.size(); ++a) {
    const ArcEnd& x = p.arcs[a].ends[0];
    const ArcEnd& z = p.arcs[a].ends[1];
    if (x.on_boundary() || z.on_boundary() || x.vertex == z.vertex) continue;
    const Label& u = labels.at(x.vertex);
    const Label& v = labels.at(z.vertex);
    if (mirror(u, u.slot_index(x.slot), v, v.slot_index(z.slot))) {
      out.reduced = false;
      out.pair = {std::min(x.vertex, z.vertex), std::max(x.vertex, z.vertex)};
      out.arc = a;
      return out;
    }
  }
  return out;
}

DhReport check_dh(const Picture& p, const SimpleEnlargement& y, long n) {
  const ValidationReport bad = validate_picture(p, y, n);
  if (!bad.empty()) throw Error(ErrorCode::InvalidInput, "invalid picture: " + bad.front().message);
  DhReport r;
  r.vertices = static_cast<long>(p.vertices.size());
  r.count = p.boundary_points();
  r.bound = dh_bound(n, r.vertices, p.surface);
  if (p.surface.boundary == 0 && p.surface.euler() == 0) r.at_most_one_vertex = r.vertices <= 1;
  if (!is_reduced(p, y).reduced) return r;
  r.verdict = r.count >= r.bound ? BoundVerdict::Pass : BoundVerdict::Fail;
  return r;
}

namespace {

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Matchings of e-slots over a fixed multiset of vertex orientations.
class PictureSearch {
 public:
  PictureSearch(const SimpleEnlargement& y, long n, const std::vector<Surface>& surfaces, DhSuite& suite,
                const std::function<void(const Picture&, const DhReport&)>& visit)
      : y_(y), n_(n), surfaces_(surfaces), suite_(suite), visit_(visit), ctx_(y.complex) {
    for (int o : {1, -1}) labels_.emplace_back(power_label(relator_path(y), n, o), y.e, ctx_);
    m_ = labels_[0].slots.size();
  }

  void run(int vertices) {
    cells_.clear();
    for (const Surface& s : surfaces_) {
      DhCell c;
      c.surface = s;
      c.n = n_;
      c.vertices = vertices;
      c.bound = dh_bound(n_, vertices, s);
      cells_.push_back(c);
    }
    v_ = vertices;
    for (int negative = 0; negative <= vertices; ++negative) {
      orient_.assign(vertices, 1);
      for (int i = vertices - negative; i < vertices; ++i) orient_[i] = -1;
      partner_.assign(vertices * m_, -1);
      assign(0);
    }
    suite_.cells.insert(suite_.cells.end(), cells_.begin(), cells_.end());
  }

 private:
  const Label& label(int v) const { return labels_[orient_[v] > 0 ? 0 : 1]; }
  int sign(int d) const { return label(d / m_).signs[d % m_]; }
  int sigma(int d) const { return (d / m_) * m_ + (d % m_ + 1) % m_; }
  int alpha(int d) const { return partner_[d]; }

  void assign(int from) {
    const int total = v_ * static_cast<int>(m_);
    while (from < total && partner_[from] >= 0) ++from;
    if (from == total) {
      evaluate();
      return;
    }
    partner_[from] = from;
    assign(from + 1);
    for (int d = from + 1; d < total; ++d) {
      if (partner_[d] >= 0 || sign(d) != -sign(from)) continue;
      partner_[from] = d;
      partner_[d] = from;
      assign(from + 1);
      partner_[d] = -1;
    }
    partner_[from] = -1;
  }

  void evaluate() {
    ++suite_.matchings;
    const int total = v_ * static_cast<int>(m_);
    long dangling = 0, arcs = 0;
    // Connectivity by repeated sweeps; V is small.
    unsigned reached = v_ > 0 ? 1u : 0u;
    for (int d = 0; d < total; ++d) {
      if (partner_[d] == d) ++dangling;
      else if (d < partner_[d]) ++arcs;
    }
    for (bool grew = true; grew;) {
      grew = false;
      for (int d = 0; d < total; ++d) {
        const int e = partner_[d];
        if (e == d || !(reached >> (d / m_) & 1u) || (reached >> (e / m_) & 1u)) continue;
        reached |= 1u << (e / m_);
        grew = true;
      }
    }
    if (v_ > 0 && reached != (1u << v_) - 1) return;
    face_.assign(total, -1);
    std::vector<bool>& has_dangling = has_dangling_;
    std::vector<bool>& trivial = trivial_;
    has_dangling.clear();
    trivial.clear();
    int faces = 0;
    for (int d = 0; d < total; ++d) {
      if (face_[d] >= 0) continue;
      bool dang = false;
      stack_.clear();
      for (int x = d; face_[x] < 0; x = alpha(sigma(x))) {
        face_[x] = faces;
        if (partner_[x] == x) dang = true;
        if (dang) continue;
        for (const Letter& l : label(x / m_).corners[x % m_]) {
          if (!stack_.empty() && stack_.back() == l.inverse()) stack_.pop_back();
          else stack_.push_back(l);
        }
      }
      has_dangling.push_back(dang);
      trivial.push_back(!dang && stack_.empty());
      ++faces;
    }
    const long genus = v_ == 0 ? 0 : (2 - v_ + arcs - faces) / 2;
    long forced = 0;  // faces that must touch the boundary
    for (int f = 0; f < faces; ++f) forced += has_dangling[f] || !trivial[f];
    std::optional<bool> reduced;
    for (std::size_t i = 0; i < surfaces_.size(); ++i) {
      const Surface& s = surfaces_[i];
      if (genus > s.genus) continue;
      long classes = 0;
      if (s.boundary == 0) {
        classes = forced == 0 ? 1 : 0;
      } else {
        for (long size = std::max(forced, 1L); size <= std::min<long>(s.boundary, faces); ++size) {
          classes += binomial(faces - forced, size - forced);
        }
        if (v_ == 0) classes = 1;
      }
      if (classes == 0) continue;
      if (!reduced) reduced = is_reduced_now();
      DhCell& c = cells_[i];
      c.pictures += classes;
      if (!*reduced) continue;
      c.reduced += classes;
      c.min_count = c.min_count ? std::min(*c.min_count, dangling) : dangling;
      if (dangling < c.bound) {
        c.fails += classes;
        if (suite_.failures.size() < 8) suite_.failures.push_back(materialize(s, has_dangling, trivial));
      }
      if (visit_) {
        const Picture p = materialize(s, has_dangling, trivial);
        DhReport r;
        r.vertices = v_;
        r.count = dangling;
        r.bound = c.bound;
        r.verdict = dangling >= c.bound ? BoundVerdict::Pass : BoundVerdict::Fail;
        visit_(p, r);
      }
    }
  }

  bool is_reduced_now() const {
    const int total = v_ * static_cast<int>(m_);
    for (int d = 0; d < total; ++d) {
      const int e = partner_[d];
      if (e <= d || d / m_ == e / m_) continue;
      if (mirror(label(d / m_), d % m_, label(e / m_), e % m_)) return false;
    }
    return true;
  }

  // One representative picture: boundary faces are the forced ones (or the
  // first face), each on its own component while components last.
  Picture materialize(const Surface& s, const std::vector<bool>& has_dangling, const std::vector<bool>& trivial) const {
    Picture p;
    p.surface = s;
    for (int v = 0; v < v_; ++v) p.vertices.push_back(label(v).word);
    const int total = v_ * static_cast<int>(m_);
    std::map<int, int> component;  // face -> boundary component
    for (std::size_t f = 0; f < has_dangling.size(); ++f) {
      if (has_dangling[f] || !trivial[f]) component.emplace(static_cast<int>(f), 0);
    }
    int next = 0;
    for (auto& [f, comp] : component) comp = std::min(next++, s.boundary - 1);
    std::vector<long> index(total, 0);
    std::vector<bool> seen(total, false);
    std::map<int, long> counter;
    for (int d = 0; d < total; ++d) {
      if (seen[d] || partner_[d] != d) continue;
      // Walk the face from this dangling dart; points go against the walk.
      const int f = face_[d];
      for (int x = d; !seen[x]; x = alpha(sigma(x))) {
        seen[x] = true;
        if (partner_[x] == x) index[x] = -(counter[f]++);
      }
      for (int x = 0; x < total; ++x) {
        if (face_[x] == f) seen[x] = true;
      }
    }
    for (int d = 0; d < total; ++d) {
      const int e = partner_[d];
      const int v = d / static_cast<int>(m_);
      ArcEnd a{v, label(v).slots[d % m_], -1, 0};
      if (e == d) {
        ArcEnd b;
        b.boundary = component.at(face_[d]);
        b.index = index[d];
        p.arcs.push_back({y_.e, {a, b}});
      } else if (d < e) {
        const int w = e / static_cast<int>(m_);
        p.arcs.push_back({y_.e, {a, ArcEnd{w, label(w).slots[e % m_], -1, 0}}});
      }
    }
    return p;
  }

  const SimpleEnlargement& y_;
  long n_;
  const std::vector<Surface>& surfaces_;
  DhSuite& suite_;
  const std::function<void(const Picture&, const DhReport&)>& visit_;
  WordContext ctx_;
  std::vector<Label> labels_;
  std::size_t m_ = 0;
  int v_ = 0;
  std::vector<int> orient_;
  std::vector<int> partner_;
  std::vector<int> face_;
  std::vector<bool> has_dangling_, trivial_;
  Word stack_;
  std::vector<DhCell> cells_;
};

}  // namespace

DhSuite dh_suite(const SimpleEnlargement& y, long n, long max_vertices, const std::vector<Surface>& surfaces,
                 const std::function<void(const Picture&, const DhReport&)>& visit) {
  if (n < 2) throw Error(ErrorCode::InvalidInput, "pictures need n >= 2");
  DhSuite suite;
  PictureSearch search(y, n, surfaces, suite, visit);
  for (long v = 0; v <= max_vertices; ++v) search.run(static_cast<int>(v));
  return suite;
}

}  // namespace orlab
