#include "orlab/bounds.hpp"

#include "orlab/error.hpp"

namespace orlab {

BigInt BoundingFunction::operator()(long n) const {
  if (rank) {
    const long r = *rank;
    return BigInt(n) * (r - 1) * (r - 2) / 2;
  }
  if (n < 0 || static_cast<std::size_t>(n) >= table.size()) {
    throw Error(ErrorCode::InvalidInput, "bounding function table has no value at " +
                                             std::to_string(n));
  }
  return table[static_cast<std::size_t>(n)];
}

std::string BoundingFunction::describe() const {
  if (rank) return "n(r-1)(r-2)/2 with r=" + std::to_string(*rank);
  return "table of " + std::to_string(table.size()) + " values";
}

BoundingFunction zr_bounding_function(long r) {
  if (r < 2) throw Error(ErrorCode::InvalidInput, "rank must be at least 2");
  BoundingFunction f;
  f.rank = r;
  return f;
}

BoundingFunction tabulated_bounding_function(std::vector<BigInt> values) {
  BoundingFunction f;
  f.table = std::move(values);
  return f;
}

bool is_supra_linear(const BoundingFunction& f, long limit) {
  if (f(0) != 0) return false;
  for (long x = 0; x <= limit; ++x) {
    for (long y = 0; x + y <= limit; ++y) {
      if (f(x + y) < f(x) + f(y)) return false;
    }
  }
  return true;
}

const char* bound_verdict_name(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::Pass: return "Pass";
    case BoundVerdict::Fail: return "Fail";
    case BoundVerdict::NotApplicable: return "NotApplicable";
    case BoundVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

BoundReport compare_bound(BigInt lhs, BigInt rhs, std::string detail) {
  BoundReport r;
  r.verdict = lhs <= rhs ? BoundVerdict::Pass : BoundVerdict::Fail;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.detail = std::move(detail);
  return r;
}

BoundReport not_applicable(std::string why) {
  BoundReport r;
  r.verdict = BoundVerdict::NotApplicable;
  r.detail = std::move(why);
  return r;
}

bool cell_has_free_edge(const AttachingPath& path, const std::map<Id, int>& counts) {
  for (const auto& d : path.edges) {
    if (counts.at(d.edge) == 1) return true;
  }
  return false;
}

}  // namespace

BoundReport check_betti_bound(const TwoComplex& k, const BoundingFunction& f) {
  const BettiVector b = betti_numbers(k);
  const long arg = b.b1 - b.b0;
  return compare_bound(b.b2 - b.b1 + b.b0, f(arg),
                       "hat_beta <= F(" + std::to_string(arg) + ")");
}

bool is_power_path(const AttachingPath& path, long power) {
  if (path.edges.empty() || power < 1) return false;
  const std::size_t period = path_period(path.edges);
  return static_cast<long>(path.size() / period) % power == 0;
}

std::vector<Id> preimage_cells(const CombMap& f, Id cell) {
  std::vector<Id> out;
  for (const auto& [id, im] : f.cell_map) {
    if (im.cell == cell) out.push_back(id);
  }
  return out;
}

BoundReport check_p_power_bound(const CombMap& f, Id alpha, long p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (!f.target.cells.count(alpha)) throw Error(ErrorCode::NoAlpha, "alpha is not a cell of the target");
  if (!is_branch_map(f).ok) return not_applicable("not a branch map");
  long j = 0;
  for (Id c : preimage_cells(f, alpha)) {
    if (is_power_path(f.source.cells.at(c), p)) ++j;
  }
  const long dim = betti_numbers(f.source, p).b1;
  return compare_bound(j, dim, "p-th power cells over alpha <= dim H1(Y';F_p)");
}

BoundReport check_5beta(const CombMap& f, Id alpha_n, long n) {
  if (!f.target.cells.count(alpha_n)) throw Error(ErrorCode::NoAlpha, "alpha is not a cell of the target");
  if (n <= 1) return not_applicable("n must exceed 1");
  if (!is_immersion(f).ok) return not_applicable("not an immersion");
  if (components(f.source).size() != 1) return not_applicable("Y' is not connected");
  if (find_free_edge(f.source)) return not_applicable("Y' has a free edge");
  const auto cells = preimage_cells(f, alpha_n);
  for (Id c : cells) {
    if (is_power_path(f.source.cells.at(c), n)) {
      return not_applicable("cell " + std::to_string(c) + " is attached by an n-th power");
    }
  }
  const long b1 = betti_numbers(f.source).b1;
  return compare_bound(static_cast<long>(cells.size()), BigInt(5) * b1,
                       "cells over alpha_n <= 5 b1");
}

BoundReport check_11k(const CombMap& g, Id alpha_n, long n,
                      const std::optional<std::set<Id>>& certificate) {
  if (!g.target.cells.count(alpha_n)) throw Error(ErrorCode::NoAlpha, "alpha is not a cell of the target");
  if (n <= 1) return not_applicable("n must exceed 1");
  if (!is_immersion(g).ok) return not_applicable("not an immersion");
  if (components(g.source).size() != 1) return not_applicable("Y' is not connected");
  const auto counts = edge_occurrence_counts(g.source);
  const auto cells = preimage_cells(g, alpha_n);
  for (Id c : cells) {
    if (cell_has_free_edge(g.source.cells.at(c), counts)) {
      return not_applicable("cell " + std::to_string(c) + " has a free edge");
    }
  }
  std::set<Id> gens;
  if (certificate) {
    // Complement must be a forest.
    std::map<Id, Id> parent;
    for (Id v : g.source.vertices) parent[v] = v;
    auto find = [&](Id x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [id, e] : g.source.edges) {
      if (certificate->count(id)) continue;
      const Id a = find(e.source);
      const Id b = find(e.target);
      if (a == b) {
        throw Error(ErrorCode::InvalidInput,
                    "generating-set certificate invalid: complement contains a cycle through edge " +
                        std::to_string(id));
      }
      parent[a] = b;
    }
    for (Id e : *certificate) {
      if (!g.source.edges.count(e)) {
        throw Error(ErrorCode::InvalidInput, "certificate names unknown edge " + std::to_string(e));
      }
    }
    gens = *certificate;
  } else {
    const SpanningTree t = spanning_tree(g.source, *g.source.vertices.begin());
    for (const auto& [id, e] : g.source.edges) {
      if (!t.tree_edges.count(id)) gens.insert(id);
    }
  }
  const long k = static_cast<long>(gens.size());
  return compare_bound(static_cast<long>(cells.size()), BigInt(11) * k,
                       "cells over alpha_n <= 11 k with k = " + std::to_string(k));
}

std::vector<AuditEntry> nonpositive_immersions_audit(const std::vector<CombMap>& instances) {
  std::vector<AuditEntry> out;
  for (const CombMap& f : instances) {
    AuditEntry a;
    a.euler = euler_characteristic(f.source);
    if (!is_immersion(f).ok || components(f.source).size() != 1) {
      a.verdict = BoundVerdict::NotApplicable;
      a.detail = "not a connected immersion";
    } else if (a.euler <= 0) {
      a.verdict = BoundVerdict::Pass;
      a.detail = "chi <= 0";
    } else {
      const ContractibilityReport r = contractibility_report(f.source);
      a.contractibility = r.verdict;
      a.detail = r.witness;
      switch (r.verdict) {
        case Contractibility::Contractible: a.verdict = BoundVerdict::Pass; break;
        case Contractibility::NotContractible: a.verdict = BoundVerdict::Fail; break;
        case Contractibility::Unknown: a.verdict = BoundVerdict::Inconclusive; break;
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<TwoComplex> treeoids(const TwoComplex& z) {
  std::vector<TwoComplex> out;
  for (auto& c : components(z)) {
    if (betti_numbers(c).b1 == 0) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace orlab
