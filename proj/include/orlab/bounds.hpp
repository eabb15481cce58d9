#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orlab/collapse.hpp"
#include "orlab/comb_map.hpp"
#include "orlab/homology.hpp"

namespace orlab {

/// Supra-linear F : N -> N. Closed form n (r-1)(r-2) / 2, or a table. The
/// closed form is also evaluated at negative arguments.
struct BoundingFunction {
  std::optional<long> rank;  // closed form when set
  std::vector<BigInt> table;

  BigInt operator()(long n) const;
  std::string describe() const;
};

BoundingFunction zr_bounding_function(long r);
BoundingFunction tabulated_bounding_function(std::vector<BigInt> values);

/// F(0) = 0 and F(x + y) >= F(x) + F(y) for x, y in [0, limit].
bool is_supra_linear(const BoundingFunction& f, long limit);

enum class BoundVerdict { Pass, Fail, NotApplicable, Inconclusive };

const char* bound_verdict_name(BoundVerdict v);

struct BoundReport {
  BoundVerdict verdict = BoundVerdict::NotApplicable;
  BigInt lhs = 0;
  BigInt rhs = 0;
  std::string detail;
};

/// hat_beta(K) <= F(b1 - b0).
BoundReport check_betti_bound(const TwoComplex& k, const BoundingFunction& f);

/// True when the closed path is S^m with m divisible by `power`.
bool is_power_path(const AttachingPath& path, long power);

/// Cells of f's source lying over `alpha` whose attaching path is a p-th
/// power, against dim H_1(source; F_p).
BoundReport check_p_power_bound(const CombMap& f, Id alpha, long p);

/// |f^-1(alpha_n)| <= 5 b1(Y') under the hypotheses of the 5-beta theorem.
BoundReport check_5beta(const CombMap& f, Id alpha_n, long n);

/// |g^-1(alpha_n)| <= 11 k. The certificate is a set of edges whose
/// complement in the 1-skeleton is a forest, so that pi_1 is generated by at
/// most k = |certificate| elements. Defaults to the non-tree edges.
BoundReport check_11k(const CombMap& g, Id alpha_n, long n,
                      const std::optional<std::set<Id>>& certificate = std::nullopt);

/// Components with vanishing first Betti number.
std::vector<TwoComplex> treeoids(const TwoComplex& z);

struct AuditEntry {
  BoundVerdict verdict = BoundVerdict::Pass;
  long euler = 0;
  Contractibility contractibility = Contractibility::Unknown;
  std::string detail;
};

/// Non-positive immersions: each source must have chi <= 0 or be contractible.
std::vector<AuditEntry> nonpositive_immersions_audit(const std::vector<CombMap>& instances);

/// Cells of f's source mapping onto `cell`.
std::vector<Id> preimage_cells(const CombMap& f, Id cell);

}  // namespace orlab
