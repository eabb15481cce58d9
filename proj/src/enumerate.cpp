#include "orlab/enumerate.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <set>

#include "orlab/error.hpp"

namespace orlab {

namespace {

// Edge-end slots of the target: at each target vertex, the ends of target
// edges that touch it, ordered by (edge id, end).
struct Target {
  const TwoComplex& y;
  std::vector<Id> vertex_ids;
  std::map<Id, int> vertex_index;
  std::vector<std::vector<std::pair<Id, int>>> slots;
  std::map<std::pair<Id, int>, int> slot_of;
  struct Cell {
    Id id;
    std::vector<DirectedEdge> path;
  };
  std::vector<Cell> cells;

  explicit Target(const TwoComplex& k) : y(k) {
    for (Id v : y.vertices) {
      vertex_index[v] = static_cast<int>(vertex_ids.size());
      vertex_ids.push_back(v);
    }
    slots.resize(vertex_ids.size());
    for (const auto& [id, e] : y.edges) {
      for (int end = 0; end < 2; ++end) {
        const int t = vertex_index.at(end == 0 ? e.source : e.target);
        slot_of[{id, end}] = static_cast<int>(slots[t].size());
        slots[t].push_back({id, end});
      }
    }
    for (const auto& [id, p] : y.cells) cells.push_back({id, p.edges});
  }

  // Slot left from, slot arrived at and type reached when reading d.
  struct Step {
    int slot;
    int opposite;
    int type;
  };
  Step step(const DirectedEdge& d) const {
    const Edge& e = y.edges.at(d.edge);
    const int out_end = d.sign > 0 ? 0 : 1;
    return {slot_of.at({d.edge, out_end}), slot_of.at({d.edge, 1 - out_end}),
            vertex_index.at(d.sign > 0 ? e.target : e.source)};
  }
  int tail_type(const DirectedEdge& d) const { return vertex_index.at(y.tail(d)); }
};

struct State {
  std::vector<int> type;
  std::vector<std::vector<int>> nbr;
  struct Cell {
    int target = 0;
    int degree = 1;
    int start = 0;
  };
  std::vector<Cell> cells;
  long edges = 0;

  int add_vertex(const Target& t, int ty) {
    type.push_back(ty);
    nbr.emplace_back(t.slots[ty].size(), -1);
    return static_cast<int>(type.size()) - 1;
  }
  void pop_vertex() {
    type.pop_back();
    nbr.pop_back();
  }
};

using Key = std::vector<int>;

// Vertices visited by reading the target cell's path `degree` times from
// `start`, or nothing when an edge is missing.
std::optional<std::vector<int>> lift(const Target& t, const State& s, int cell, int degree, int start) {
  const auto& path = t.cells[cell].path;
  std::vector<int> out{start};
  int cur = start;
  for (int k = 0; k < degree; ++k) {
    for (const auto& d : path) {
      const int next = s.nbr[cur][t.step(d).slot];
      if (next < 0) return std::nullopt;
      out.push_back(cur = next);
    }
  }
  return out;
}

// Side occurrences of a lifted cell: (target edge, source tail, target cell, position).
std::set<std::array<int, 4>> occurrences(const Target& t, int cell, const std::vector<int>& verts) {
  const auto& path = t.cells[cell].path;
  std::set<std::array<int, 4>> out;
  for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
    const DirectedEdge& d = path[i % path.size()];
    const int tail = d.sign > 0 ? verts[i] : verts[i + 1];
    out.insert({static_cast<int>(d.edge), tail, cell, static_cast<int>(i % path.size())});
  }
  return out;
}

// Vertices at position 0 of the target path.
std::vector<int> cell_starts(const Target& t, const std::vector<int>& verts, int cell) {
  const std::size_t len = t.cells[cell].path.size();
  std::vector<int> out;
  for (std::size_t i = 0; i + 1 < verts.size(); i += len) out.push_back(verts[i]);
  return out;
}

// Breadth-first labelling from `root`: label[v], or -1 where unreached.
std::vector<int> bfs_labels(const State& s, int root) {
  std::vector<int> label(s.type.size(), -1);
  std::vector<int> order{root};
  label[root] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int w : s.nbr[order[i]]) {
      if (w >= 0 && label[w] < 0) {
        label[w] = static_cast<int>(order.size());
        order.push_back(w);
      }
    }
  }
  return label;
}

Key encode(const Target& t, const State& s, const std::vector<int>& label) {
  const int n = static_cast<int>(s.type.size());
  std::vector<int> by_label(n);
  for (int v = 0; v < n; ++v) by_label[label[v]] = v;
  Key key{n};
  for (int l = 0; l < n; ++l) {
    const int v = by_label[l];
    key.push_back(s.type[v]);
    for (int w : s.nbr[v]) key.push_back(w < 0 ? -1 : label[w]);
  }
  std::vector<std::array<int, 3>> cells;
  for (const auto& c : s.cells) {
    const auto verts = lift(t, s, c.target, c.degree, c.start);
    int best = n;
    for (int v : cell_starts(t, *verts, c.target)) best = std::min(best, label[v]);
    cells.push_back({c.target, c.degree, best});
  }
  std::sort(cells.begin(), cells.end());
  key.push_back(static_cast<int>(cells.size()));
  for (const auto& c : cells) key.insert(key.end(), c.begin(), c.end());
  return key;
}

Key canonical_key(const Target& t, const State& s) {
  Key best;
  for (int r = 0; r < static_cast<int>(s.type.size()); ++r) {
    Key k = encode(t, s, bfs_labels(s, r));
    if (best.empty() || k < best) best = std::move(k);
  }
  return best;
}

State decode(const Target& t, const Key& key) {
  State s;
  std::size_t i = 0;
  const int n = key[i++];
  for (int v = 0; v < n; ++v) {
    const int ty = key[i++];
    s.add_vertex(t, ty);
    for (auto& w : s.nbr.back()) w = key[i++];
  }
  for (int v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < s.nbr[v].size(); ++k) {
      if (s.nbr[v][k] >= 0 && t.slots[s.type[v]][k].second == 0) ++s.edges;
    }
  }
  const int c = key[i++];
  for (int j = 0; j < c; ++j) {
    State::Cell cell;
    cell.target = key[i++];
    cell.degree = key[i++];
    cell.start = key[i++];
    s.cells.push_back(cell);
  }
  return s;
}

CombMap to_map(const Target& t, const State& s) {
  CombMap f;
  f.target = t.y;
  const int n = static_cast<int>(s.type.size());
  std::map<std::pair<Id, int>, Id> edge_at;  // (target edge, source tail) -> source edge
  for (int v = 0; v < n; ++v) {
    f.source.vertices.insert(v);
    f.vertex_map[v] = t.vertex_ids[s.type[v]];
  }
  for (int v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < s.nbr[v].size(); ++k) {
      const auto [edge, end] = t.slots[s.type[v]][k];
      if (end != 0 || s.nbr[v][k] < 0) continue;
      const Id id = static_cast<Id>(f.source.edges.size());
      f.source.edges[id] = {v, s.nbr[v][k]};
      f.edge_map[id] = {edge, 1};
      edge_at[{edge, v}] = id;
    }
  }
  for (std::size_t c = 0; c < s.cells.size(); ++c) {
    const auto& cell = s.cells[c];
    const auto verts = *lift(t, s, cell.target, cell.degree, cell.start);
    const auto& path = t.cells[cell.target].path;
    AttachingPath p;
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
      const DirectedEdge& d = path[i % path.size()];
      const int tail = d.sign > 0 ? verts[i] : verts[i + 1];
      p.edges.push_back({edge_at.at({d.edge, tail}), d.sign});
    }
    f.source.cells[static_cast<Id>(c)] = p;
    f.cell_map[static_cast<Id>(c)] = {t.cells[cell.target].id, 0, cell.degree};
  }
  return f;
}

class Enumerator {
 public:
  Enumerator(const TwoComplex& y, const EnumerationBudget& b, const std::function<void(const CombMap&)>& emit)
      : t_(y), b_(b), emit_(emit), start_(std::chrono::steady_clock::now()) {}

  EnumerationResult run() {
    if (b_.vertices < 1 || b_.edges < 0 || b_.cells < 0 || b_.max_degree < 1) {
      throw Error(ErrorCode::InvalidInput, "budget must be positive");
    }
    if (b_.covered && b_.cells > 0) grow_cells();
    else graphs();
    return result_;
  }

 private:
  bool out_of_time() {
    if (b_.seconds <= 0 || result_.partial) return result_.partial;
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (dt > b_.seconds) result_.partial = true;
    return result_.partial;
  }

  void emit(const State& s) {
    ++result_.emitted;
    if (emit_) emit_(to_map(t_, s));
  }

  bool conflicts(const State& s, int cell, const std::vector<int>& verts) const {
    const auto mine = occurrences(t_, cell, verts);
    for (const auto& c : s.cells) {
      for (const auto& o : occurrences(t_, c.target, *lift(t_, s, c.target, c.degree, c.start))) {
        if (mine.count(o)) return true;
      }
    }
    return false;
  }

  // Covered mode: complexes grown one 2-cell at a time from an existing vertex.
  void grow_cells() {
    std::set<Key> level;
    for (int ty = 0; ty < static_cast<int>(t_.vertex_ids.size()); ++ty) {
      State s;
      s.add_vertex(t_, ty);
      level.insert(canonical_key(t_, s));
    }
    for (long c = 0;; ++c) {
      for (const Key& k : level) emit(decode(t_, k));
      if (c == b_.cells || out_of_time()) break;
      std::set<Key> next;
      for (const Key& k : level) {
        if (out_of_time()) break;
        State s = decode(t_, k);
        for (int cell = 0; cell < static_cast<int>(t_.cells.size()); ++cell) {
          const auto& path = t_.cells[cell].path;
          const int len = static_cast<int>(path.size());
          for (int d = 1; d <= b_.max_degree; ++d) {
            for (int v = 0; v < static_cast<int>(s.type.size()); ++v) {
              for (int r = 0; r < len; ++r) {
                if (t_.tail_type(path[r]) != s.type[v]) continue;
                std::vector<DirectedEdge> word;
                for (int i = 0; i < d * len; ++i) word.push_back(path[(r + i) % len]);
                std::vector<int> verts{v};
                extend(s, word, cell, d, (len - r) % len, verts, next);
              }
            }
          }
        }
      }
      if (next.empty()) break;
      level = std::move(next);
    }
  }

  void extend(State& s, const std::vector<DirectedEdge>& word, int cell, int degree, int zero,
              std::vector<int>& verts, std::set<Key>& out) {
    const std::size_t i = verts.size() - 1;
    const int cur = verts.back();
    if (i == word.size()) {
      if (cur != verts.front()) return;
      // Re-read from position 0 so the stored start is a position-0 vertex.
      const int start = verts[static_cast<std::size_t>(zero)];
      const auto lifted = lift(t_, s, cell, degree, start);
      if (!lifted || conflicts(s, cell, *lifted)) return;
      s.cells.push_back({cell, degree, start});
      out.insert(canonical_key(t_, s));
      s.cells.pop_back();
      return;
    }
    const auto st = t_.step(word[i]);
    const bool last = i + 1 == word.size();
    if (s.nbr[cur][st.slot] >= 0) {
      verts.push_back(s.nbr[cur][st.slot]);
      extend(s, word, cell, degree, zero, verts, out);
      verts.pop_back();
      return;
    }
    if (s.edges >= b_.edges) return;
    auto connect = [&](int w) {
      s.nbr[cur][st.slot] = w;
      s.nbr[w][st.opposite] = cur;
      ++s.edges;
      verts.push_back(w);
      extend(s, word, cell, degree, zero, verts, out);
      verts.pop_back();
      --s.edges;
      s.nbr[w][st.opposite] = -1;
      s.nbr[cur][st.slot] = -1;
    };
    for (int w = 0; w < static_cast<int>(s.type.size()); ++w) {
      if (s.type[w] != st.type || s.nbr[w][st.opposite] >= 0) continue;
      if (w == cur && st.opposite == st.slot) continue;
      if (last && w != verts.front()) continue;
      connect(w);
    }
    if (!last && static_cast<long>(s.type.size()) < b_.vertices) {
      const int w = s.add_vertex(t_, st.type);
      connect(w);
      s.pop_vertex();
    }
  }

  // Full mode: every connected immersed graph, generated in breadth-first
  // normal form, then every admissible set of cells.
  void graphs() {
    for (int ty = 0; ty < static_cast<int>(t_.vertex_ids.size()) && !out_of_time(); ++ty) {
      State s;
      s.add_vertex(t_, ty);
      fill(s, 0, 0);
    }
  }

  void fill(State& s, int v, std::size_t k) {
    if (out_of_time()) return;
    if (v == static_cast<int>(s.type.size())) {
      finish_graph(s);
      return;
    }
    if (k == s.nbr[v].size()) {
      fill(s, v + 1, 0);
      return;
    }
    if (s.nbr[v][k] >= 0) {
      fill(s, v, k + 1);
      return;
    }
    fill(s, v, k + 1);  // slot stays empty
    if (s.edges >= b_.edges) return;
    const auto [edge, end] = t_.slots[s.type[v]][k];
    const Edge& e = t_.y.edges.at(edge);
    const int need = t_.vertex_index.at(end == 0 ? e.target : e.source);
    const int opposite = t_.slot_of.at({edge, 1 - end});
    auto connect = [&](int w) {
      s.nbr[v][k] = w;
      s.nbr[w][opposite] = v;
      ++s.edges;
      fill(s, v, k + 1);
      --s.edges;
      s.nbr[w][opposite] = -1;
      s.nbr[v][k] = -1;
    };
    // Existing vertices whose opposite slot is still undecided.
    for (int w = v; w < static_cast<int>(s.type.size()); ++w) {
      if (s.type[w] != need || s.nbr[w][opposite] >= 0) continue;
      if (w == v && opposite <= static_cast<int>(k)) continue;
      connect(w);
    }
    if (static_cast<long>(s.type.size()) < b_.vertices) {
      const int w = s.add_vertex(t_, need);
      connect(w);
      s.pop_vertex();
    }
  }

  void finish_graph(const State& s) {
    const Key mine = encode(t_, s, bfs_labels(s, 0));
    std::vector<std::vector<int>> automorphisms;
    for (int r = 0; r < static_cast<int>(s.type.size()); ++r) {
      auto label = bfs_labels(s, r);
      const Key k = encode(t_, s, label);
      if (k < mine) return;
      if (k == mine) automorphisms.push_back(std::move(label));
    }
    // Candidate cells: closed lifts, keyed by their least position-0 vertex.
    struct Candidate {
      State::Cell cell;
      std::vector<int> starts;
      std::set<std::array<int, 4>> occ;
    };
    std::vector<Candidate> cands;
    if (b_.cells > 0) {
      for (int c = 0; c < static_cast<int>(t_.cells.size()); ++c) {
        for (int d = 1; d <= b_.max_degree; ++d) {
          std::set<int> seen;
          for (int v = 0; v < static_cast<int>(s.type.size()); ++v) {
            if (seen.count(v) || s.type[v] != t_.tail_type(t_.cells[c].path[0])) continue;
            const auto verts = lift(t_, s, c, d, v);
            if (!verts || verts->back() != v) continue;
            auto starts = cell_starts(t_, *verts, c);
            seen.insert(starts.begin(), starts.end());
            cands.push_back({{c, d, v}, starts, occurrences(t_, c, *verts)});
          }
        }
      }
    }
    State w = s;
    std::vector<int> chosen;
    choose(w, cands, automorphisms, chosen, 0);
  }

  template <class C>
  void choose(State& s, const std::vector<C>& cands, const std::vector<std::vector<int>>& autos,
              std::vector<int>& chosen, std::size_t from) {
    // Keep the set only if no automorphism maps it to a smaller one.
    auto keys = [&](const std::vector<int>& label) {
      std::vector<std::array<int, 3>> out;
      for (int i : chosen) {
        int best = static_cast<int>(label.size());
        for (int v : cands[i].starts) best = std::min(best, label[v]);
        out.push_back({cands[i].cell.target, cands[i].cell.degree, best});
      }
      std::sort(out.begin(), out.end());
      return out;
    };
    std::vector<int> id(s.type.size());
    for (std::size_t v = 0; v < id.size(); ++v) id[v] = static_cast<int>(v);
    const auto mine = keys(id);
    bool least = true;
    for (const auto& a : autos) {
      if (keys(a) < mine) {
        least = false;
        break;
      }
    }
    if (least) emit(s);
    if (static_cast<long>(chosen.size()) == b_.cells) return;
    for (std::size_t i = from; i < cands.size(); ++i) {
      bool clash = false;
      for (int j : chosen) {
        for (const auto& o : cands[i].occ) {
          if (cands[j].occ.count(o)) {
            clash = true;
            break;
          }
        }
        if (clash) break;
      }
      if (clash) continue;
      chosen.push_back(static_cast<int>(i));
      s.cells.push_back(cands[i].cell);
      choose(s, cands, autos, chosen, i + 1);
      s.cells.pop_back();
      chosen.pop_back();
    }
  }

  Target t_;
  EnumerationBudget b_;
  const std::function<void(const CombMap&)>& emit_;
  std::chrono::steady_clock::time_point start_;
  EnumerationResult result_;
};

}  // namespace

EnumerationResult enumerate_immersions(const TwoComplex& y, const EnumerationBudget& budget,
                                       const std::function<void(const CombMap&)>& emit) {
  require_valid(y);
  return Enumerator(y, budget, emit).run();
}

std::vector<CombMap> collect_immersions(const TwoComplex& y, const EnumerationBudget& budget) {
  std::vector<CombMap> out;
  enumerate_immersions(y, budget, [&](const CombMap& f) { out.push_back(f); });
  return out;
}

namespace {

class ImmersionSearch {
 public:
  ImmersionSearch(const TwoComplex& k, const TwoComplex& l) : k_(k), l_(l) {
    // Vertices in breadth-first order per component; each edge is handled
    // once one of its ends is placed.
    std::set<Id> placed;
    for (Id root : k.vertices) {
      if (placed.count(root)) continue;
      tasks_.push_back({true, root});
      placed.insert(root);
      std::vector<Id> queue{root};
      for (std::size_t i = 0; i < queue.size(); ++i) {
        for (const auto& [id, e] : k.edges) {
          if (e.source != queue[i] && e.target != queue[i]) continue;
          if (handled_.insert(id).second) tasks_.push_back({false, id});
          for (Id w : {e.source, e.target}) {
            if (placed.insert(w).second) queue.push_back(w);
          }
        }
      }
    }
    for (const auto& [id, c] : k.cells) cell_ids_.push_back(id);
  }

  std::vector<CombMap> run() {
    f_.source = k_;
    f_.target = l_;
    next(0);
    return out_;
  }

 private:
  struct Task {
    bool vertex;
    Id id;
  };

  // Edge-end of l reached by end `end` of k-edge `id` under image im.
  static std::pair<Id, int> end_image(const EdgeImage& im, int end) { return {im.edge, im.sign > 0 ? end : 1 - end}; }

  void next(std::size_t i) {
    if (i == tasks_.size()) {
      cells(0);
      return;
    }
    const Task& task = tasks_[i];
    if (task.vertex) {
      for (Id w : l_.vertices) {
        f_.vertex_map[task.id] = w;
        next(i + 1);
      }
      f_.vertex_map.erase(task.id);
      return;
    }
    const Edge& e = k_.edges.at(task.id);
    const bool src_set = f_.vertex_map.count(e.source) > 0;
    const bool tgt_set = f_.vertex_map.count(e.target) > 0;
    for (const auto& [lid, le] : l_.edges) {
      for (int sign : {1, -1}) {
        const Id s = sign > 0 ? le.source : le.target;
        const Id t = sign > 0 ? le.target : le.source;
        if (src_set && f_.vertex_map.at(e.source) != s) continue;
        if (tgt_set && f_.vertex_map.at(e.target) != t) continue;
        if (!src_set) f_.vertex_map[e.source] = s;
        if (!tgt_set && !(e.target == e.source)) f_.vertex_map[e.target] = t;
        if (e.target == e.source && f_.vertex_map.at(e.source) != t) {
          if (!src_set) f_.vertex_map.erase(e.source);
          continue;
        }
        const EdgeImage im{lid, sign};
        const auto a = end_image(im, 0), b = end_image(im, 1);
        auto& ends_s = used_[e.source];
        auto& ends_t = used_[e.target];
        const bool ok = !ends_s.count(a) && !ends_t.count(b) && (e.source != e.target || a != b);
        if (ok) {
          ends_s.insert(a);
          ends_t.insert(b);
          f_.edge_map[task.id] = im;
          next(i + 1);
          f_.edge_map.erase(task.id);
          used_[e.source].erase(a);
          used_[e.target].erase(b);
        }
        if (!src_set) f_.vertex_map.erase(e.source);
        if (!tgt_set && e.target != e.source) f_.vertex_map.erase(e.target);
      }
    }
  }

  void cells(std::size_t i) {
    if (i == cell_ids_.size()) {
      if (is_immersion(f_)) out_.push_back(f_);
      return;
    }
    const Id cid = cell_ids_[i];
    const auto& path = k_.cells.at(cid).edges;
    std::vector<DirectedEdge> image;
    for (const auto& d : path) image.push_back(f_.image(d));
    for (const auto& [lid, lc] : l_.cells) {
      const std::size_t m = lc.edges.size();
      if (m != image.size()) continue;
      for (std::size_t r = 0; r < m; ++r) {
        bool match = true;
        for (std::size_t j = 0; j < m && match; ++j) match = image[j] == lc.edges[(r + j) % m];
        if (!match) continue;
        std::vector<std::array<Id, 3>> sides;
        bool clash = false;
        for (std::size_t j = 0; j < m; ++j) {
          const std::array<Id, 3> side{path[j].edge, lid, static_cast<Id>((r + j) % m)};
          if (sides_.count(side)) clash = true;
          sides.push_back(side);
        }
        if (clash) continue;
        sides_.insert(sides.begin(), sides.end());
        f_.cell_map[cid] = {lid, r, 1};
        cells(i + 1);
        f_.cell_map.erase(cid);
        for (const auto& sd : sides) sides_.erase(sd);
      }
    }
  }

  const TwoComplex& k_;
  const TwoComplex& l_;
  std::vector<Task> tasks_;
  std::set<Id> handled_;
  std::vector<Id> cell_ids_;
  CombMap f_;
  std::map<Id, std::set<std::pair<Id, int>>> used_;
  std::set<std::array<Id, 3>> sides_;
  std::vector<CombMap> out_;
};

}  // namespace

std::vector<CombMap> immersions_between(const TwoComplex& k, const TwoComplex& l) {
  require_valid(k);
  require_valid(l);
  return ImmersionSearch(k, l).run();
}

}  // namespace orlab
