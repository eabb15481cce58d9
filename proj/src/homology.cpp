#include "orlab/homology.hpp"

#include <algorithm>
#include <utility>

#include "orlab/error.hpp"

namespace orlab {

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols != b.rows) throw Error(ErrorCode::Mismatch, "matrix dimensions do not agree");
  IntegerMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

BoundaryMatrices boundary_matrices(const TwoComplex& k) {
  require_valid(k);
  std::map<Id, std::size_t> vrow;
  for (Id v : k.vertices) vrow.emplace(v, vrow.size());
  std::map<Id, std::size_t> erow;
  for (const auto& [id, e] : k.edges) erow.emplace(id, erow.size());

  BoundaryMatrices b{IntegerMatrix(k.vertices.size(), k.edges.size()),
                     IntegerMatrix(k.edges.size(), k.cells.size())};
  for (const auto& [id, e] : k.edges) {
    b.d1(vrow.at(e.target), erow.at(id)) += 1;
    b.d1(vrow.at(e.source), erow.at(id)) -= 1;
  }
  std::size_t col = 0;
  for (const auto& [id, path] : k.cells) {
    for (const auto& d : path.edges) b.d2(erow.at(d.edge), col) += d.sign;
    ++col;
  }
  return b;
}

namespace {

// Elimination state: D = U M V, with inverses tracked alongside.
struct Reducer {
  IntegerMatrix d, u, ui, v, vi;

  explicit Reducer(const IntegerMatrix& m)
      : d(m),
        u(IntegerMatrix::identity(m.rows)),
        ui(IntegerMatrix::identity(m.rows)),
        v(IntegerMatrix::identity(m.cols)),
        vi(IntegerMatrix::identity(m.cols)) {}

  // row i += c * row j
  void add_row(std::size_t i, std::size_t j, const BigInt& c) {
    for (std::size_t k = 0; k < d.cols; ++k) d(i, k) += c * d(j, k);
    for (std::size_t k = 0; k < u.cols; ++k) u(i, k) += c * u(j, k);
    for (std::size_t k = 0; k < ui.rows; ++k) ui(k, j) -= c * ui(k, i);
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < d.cols; ++k) std::swap(d(i, k), d(j, k));
    for (std::size_t k = 0; k < u.cols; ++k) std::swap(u(i, k), u(j, k));
    for (std::size_t k = 0; k < ui.rows; ++k) std::swap(ui(k, i), ui(k, j));
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < d.cols; ++k) d(i, k) = -d(i, k);
    for (std::size_t k = 0; k < u.cols; ++k) u(i, k) = -u(i, k);
    for (std::size_t k = 0; k < ui.rows; ++k) ui(k, i) = -ui(k, i);
  }
  // col i += c * col j
  void add_col(std::size_t i, std::size_t j, const BigInt& c) {
    for (std::size_t k = 0; k < d.rows; ++k) d(k, i) += c * d(k, j);
    for (std::size_t k = 0; k < v.rows; ++k) v(k, i) += c * v(k, j);
    for (std::size_t k = 0; k < vi.cols; ++k) vi(j, k) -= c * vi(i, k);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < d.rows; ++k) std::swap(d(k, i), d(k, j));
    for (std::size_t k = 0; k < v.rows; ++k) std::swap(v(k, i), v(k, j));
    for (std::size_t k = 0; k < vi.cols; ++k) std::swap(vi(i, k), vi(j, k));
  }

  // Moves the nonzero entry of least absolute value in the trailing block to (t, t).
  bool place_pivot(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < d.rows; ++i) {
      for (std::size_t j = t; j < d.cols; ++j) {
        if (d(i, j) == 0) continue;
        if (!best || abs(d(i, j)) < abs(d(best->first, best->second))) best = {{i, j}};
      }
    }
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  // Clears row and column t; returns false when a smaller remainder appeared.
  bool clear_cross(std::size_t t) {
    bool clean = true;
    for (std::size_t i = t + 1; i < d.rows; ++i) {
      if (d(i, t) == 0) continue;
      add_row(i, t, -(d(i, t) / d(t, t)));
      if (d(i, t) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < d.cols; ++j) {
      if (d(t, j) == 0) continue;
      add_col(j, t, -(d(t, j) / d(t, t)));
      if (d(t, j) != 0) clean = false;
    }
    return clean;
  }
};

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& m) {
  Reducer r(m);
  const std::size_t n = std::min(m.rows, m.cols);
  std::size_t t = 0;
  for (; t < n; ++t) {
    if (!r.place_pivot(t)) break;
    for (;;) {
      while (!r.clear_cross(t)) r.place_pivot(t);
      // Divisibility: fold any offending row into row t and go again.
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < m.rows && !bad; ++i) {
        for (std::size_t j = t + 1; j < m.cols; ++j) {
          if (r.d(i, j) % r.d(t, t) != 0) {
            bad = i;
            break;
          }
        }
      }
      if (!bad) break;
      r.add_row(t, *bad, 1);
    }
    if (r.d(t, t) < 0) r.negate_row(t);
  }
  SmithForm s;
  for (std::size_t i = 0; i < t; ++i) s.divisors.push_back(r.d(i, i));
  s.diagonal = std::move(r.d);
  s.left = std::move(r.u);
  s.left_inverse = std::move(r.ui);
  s.right = std::move(r.v);
  s.right_inverse = std::move(r.vi);
  return s;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

std::size_t rank_mod_p(const IntegerMatrix& m, long p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  std::vector<std::vector<long>> a(m.rows, std::vector<long>(m.cols));
  const BigInt bp = p;
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      BigInt x = m(i, j) % bp;
      if (x < 0) x += bp;
      a[i][j] = static_cast<long>(x);
    }
  }
  auto inv = [p](long x) {
    // Fermat: x^(p-2) mod p.
    long result = 1;
    long base = x % p;
    for (long e = p - 2; e > 0; e >>= 1) {
      if (e & 1) result = static_cast<long>((__int128)result * base % p);
      base = static_cast<long>((__int128)base * base % p);
    }
    return result;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t piv = rank;
    while (piv < m.rows && a[piv][col] == 0) ++piv;
    if (piv == m.rows) continue;
    std::swap(a[piv], a[rank]);
    const long scale = inv(a[rank][col]);
    for (std::size_t i = rank + 1; i < m.rows; ++i) {
      if (a[i][col] == 0) continue;
      const long f = static_cast<long>((__int128)a[i][col] * scale % p);
      for (std::size_t j = col; j < m.cols; ++j) {
        a[i][j] = static_cast<long>(((a[i][j] - (__int128)f * a[rank][j]) % p + p) % p);
      }
    }
    ++rank;
  }
  return rank;
}

BettiVector betti_numbers(const TwoComplex& k, std::optional<long> p) {
  const BoundaryMatrices b = boundary_matrices(k);
  const long V = static_cast<long>(k.vertices.size());
  const long E = static_cast<long>(k.edges.size());
  const long F = static_cast<long>(k.cells.size());
  BettiVector out;
  long r1 = 0;
  long r2 = 0;
  if (p) {
    r1 = static_cast<long>(rank_mod_p(b.d1, *p));
    r2 = static_cast<long>(rank_mod_p(b.d2, *p));
  } else {
    r1 = static_cast<long>(smith_normal_form(b.d1).rank());
    const SmithForm s2 = smith_normal_form(b.d2);
    r2 = static_cast<long>(s2.rank());
    for (const BigInt& d : s2.divisors) {
      if (d > 1) out.torsion.push_back(d);
    }
  }
  out.b0 = V - r1;
  out.b1 = E - r1 - r2;
  out.b2 = F - r2;
  return out;
}

long hat_beta(const TwoComplex& k) {
  const BettiVector b = betti_numbers(k);
  return b.b2 - b.b1 + b.b0;
}

}  // namespace orlab
