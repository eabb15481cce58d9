#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "orlab/complex.hpp"
#include "orlab/order.hpp"

namespace orlab {

/// Dense row-major matrix of unbounded integers.
struct IntegerMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BigInt> entries;

  IntegerMatrix() = default;
  IntegerMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

  static IntegerMatrix identity(std::size_t n);

  BigInt& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  bool operator==(const IntegerMatrix&) const = default;
};

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);

struct BoundaryMatrices {
  /// Rows: vertices ascending; columns: edges ascending.
  IntegerMatrix d1;
  /// Rows: edges ascending; columns: cells ascending.
  IntegerMatrix d2;
};

BoundaryMatrices boundary_matrices(const TwoComplex& k);

/// U * M * V = D with D diagonal, divisors d_1 | d_2 | ... all positive.
/// The inverses of U and V are carried along for recomposition checks.
struct SmithForm {
  std::vector<BigInt> divisors;
  IntegerMatrix diagonal;
  IntegerMatrix left;
  IntegerMatrix left_inverse;
  IntegerMatrix right;
  IntegerMatrix right_inverse;

  std::size_t rank() const { return divisors.size(); }
};

SmithForm smith_normal_form(const IntegerMatrix& m);

/// Rank over F_p by Gaussian elimination. Throws NotPrime for composite p.
std::size_t rank_mod_p(const IntegerMatrix& m, long p);

bool is_prime(long p);

struct BettiVector {
  long b0 = 0;
  long b1 = 0;
  long b2 = 0;
  /// Elementary divisors > 1 of H_1 (only over the integers).
  std::vector<BigInt> torsion;
};

/// Betti numbers over Z when `p` is empty, otherwise over F_p.
BettiVector betti_numbers(const TwoComplex& k, std::optional<long> p = std::nullopt);

/// b2 - b1 + b0 over Z.
long hat_beta(const TwoComplex& k);

}  // namespace orlab
