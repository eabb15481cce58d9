#include "orlab/order.hpp"

#include <algorithm>

namespace orlab {

BigInt SeriesTruncation::coefficient(const Monomial& m) const {
  auto it = coefficients.find(m);
  return it == coefficients.end() ? BigInt(0) : it->second;
}

namespace {

void multiply_by_letter(SeriesTruncation& s, const Letter& l) {
  const auto gen = static_cast<std::uint8_t>(l.gen);
  std::map<Monomial, BigInt, DegLex> out = s.coefficients;
  for (const auto& [m, c] : s.coefficients) {
    const int room = s.degree - static_cast<int>(m.size());
    // (1 + x)^{+1} contributes x once; (1 + x)^{-1} contributes (-x)^k for all k.
    const int terms = l.exp > 0 ? std::min(room, 1) : room;
    Monomial mk = m;
    for (int k = 1; k <= terms; ++k) {
      mk.push_back(gen);
      if (l.exp > 0 || k % 2 == 0) {
        out[mk] += c;
      } else {
        out[mk] -= c;
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second == 0 ? out.erase(it) : std::next(it);
  }
  s.coefficients = std::move(out);
}

}  // namespace

SeriesTruncation magnus_expand(const Word& w, int degree) {
  SeriesTruncation s;
  s.degree = degree;
  s.coefficients[Monomial{}] = 1;
  for (const Letter& l : w) multiply_by_letter(s, l);
  return s;
}

SeriesTruncation multiply(const SeriesTruncation& a, const SeriesTruncation& b) {
  SeriesTruncation out;
  out.degree = std::min(a.degree, b.degree);
  for (const auto& [ma, ca] : a.coefficients) {
    for (const auto& [mb, cb] : b.coefficients) {
      if (static_cast<int>(ma.size() + mb.size()) > out.degree) continue;
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      out.coefficients[m] += ca * cb;
    }
  }
  for (auto it = out.coefficients.begin(); it != out.coefficients.end();) {
    it = it->second == 0 ? out.coefficients.erase(it) : std::next(it);
  }
  return out;
}

std::string format_monomial(const Monomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (auto i : m) s += "x" + std::to_string(static_cast<int>(i));
  return s;
}

const char* verdict_name(OrderVerdict v) {
  switch (v) {
    case OrderVerdict::Less: return "Less";
    case OrderVerdict::Equal: return "Equal";
    case OrderVerdict::Greater: return "Greater";
    case OrderVerdict::Undecided: return "Undecided";
  }
  return "?";
}

Comparison MagnusOrder::compare(const Word& g, const Word& h) const {
  Comparison result;
  const Word w = free_reduce(concat(inverse(g), h));
  if (w.empty()) {
    result.verdict = OrderVerdict::Equal;
    return result;
  }
  int degree = std::min(2, budget_);
  while (degree >= 1) {
    const SeriesTruncation s = magnus_expand(w, degree);
    for (const auto& [m, c] : s.coefficients) {
      if (m.empty()) continue;
      // g^-1 h > 1 means g < h.
      result.verdict = c > 0 ? OrderVerdict::Less : OrderVerdict::Greater;
      result.deciding = m;
      result.coefficient = c;
      result.degree = degree;
      return result;
    }
    if (degree >= budget_) break;
    degree = std::min(degree * 2, budget_);
  }
  result.verdict = OrderVerdict::Undecided;
  result.degree = budget_;
  return result;
}

Comparison compare(const Word& g, const Word& h, int budget) {
  return MagnusOrder(budget).compare(g, h);
}

OrderVerdict is_positive(const Word& w, const OrderOracle& order) {
  return order.compare(w, Word{}).verdict;
}

OrderVerdict is_positive(const Word& w, int budget) {
  return is_positive(w, MagnusOrder(budget));
}

}  // namespace orlab
