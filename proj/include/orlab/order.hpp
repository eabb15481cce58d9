#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "orlab/words.hpp"

namespace orlab {

using BigInt = boost::multiprecision::cpp_int;

/// Noncommutative monomial x_{i1} x_{i2} ... as the sequence of indices.
using Monomial = std::vector<std::uint8_t>;

/// Degree first, then lexicographic with x0 < x1 < ...
struct DegLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Magnus expansion truncated at a maximum total degree.
struct SeriesTruncation {
  int degree = 0;
  std::map<Monomial, BigInt, DegLex> coefficients;

  BigInt coefficient(const Monomial& m) const;
};

/// generator i -> 1 + x_i, inverse -> 1 - x_i + x_i^2 - ..., truncated at d.
SeriesTruncation magnus_expand(const Word& w, int degree);
SeriesTruncation multiply(const SeriesTruncation& a, const SeriesTruncation& b);

std::string format_monomial(const Monomial& m);

enum class OrderVerdict { Less, Equal, Greater, Undecided };

const char* verdict_name(OrderVerdict v);

struct Comparison {
  OrderVerdict verdict = OrderVerdict::Undecided;
  /// Leading monomial of the expansion of g^-1 h minus one, and its coefficient.
  Monomial deciding;
  BigInt coefficient = 0;
  /// Truncation degree at which the verdict was reached.
  int degree = 0;
};

/// Left-invariant total order on a group given by words in its generators.
class OrderOracle {
 public:
  virtual ~OrderOracle() = default;
  virtual Comparison compare(const Word& g, const Word& h) const = 0;
};

/// Magnus power-series order on a free group. The budget is the maximum
/// truncation degree; degrees are tried on a doubling schedule from 2.
class MagnusOrder final : public OrderOracle {
 public:
  explicit MagnusOrder(int budget = 16) : budget_(budget) {}

  Comparison compare(const Word& g, const Word& h) const override;
  int budget() const { return budget_; }

 private:
  int budget_;
};

Comparison compare(const Word& g, const Word& h, int budget = 16);

/// Position of w relative to the identity: Greater when w > 1.
OrderVerdict is_positive(const Word& w, const OrderOracle& order);
OrderVerdict is_positive(const Word& w, int budget = 16);

}  // namespace orlab
