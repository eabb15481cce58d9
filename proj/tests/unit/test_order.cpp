#include <doctest.h>

#include "orlab/order.hpp"

using namespace orlab;

TEST_CASE("Magnus expansion of an inverse letter") {
  const auto s = magnus_expand(parse_word("A"), 2);
  CHECK(s.coefficient({}) == 1);
  CHECK(s.coefficient({0}) == -1);
  CHECK(s.coefficient({0, 0}) == 1);
  CHECK(s.coefficients.size() == 3);
}

TEST_CASE("expansion is multiplicative") {
  const Word u = parse_word("abA");
  const Word v = parse_word("Bba");
  const auto lhs = magnus_expand(concat(u, v), 5);
  const auto rhs = multiply(magnus_expand(u, 5), magnus_expand(v, 5));
  CHECK(lhs.coefficients == rhs.coefficients);
  CHECK(magnus_expand(parse_word("aA"), 6).coefficients.size() == 1);
}

TEST_CASE("comparisons") {
  CHECK(compare({}, parse_word("a")).verdict == OrderVerdict::Less);
  CHECK(compare(parse_word("a"), parse_word("a")).verdict == OrderVerdict::Equal);
  const Comparison c = compare(parse_word("ab"), parse_word("ba"));
  CHECK(c.verdict == OrderVerdict::Greater);
  CHECK(format_monomial(c.deciding) == "x0x1");
  CHECK(c.coefficient == -1);
  CHECK(c.degree == 2);
  CHECK(is_positive(parse_word("a")) == OrderVerdict::Greater);
  CHECK(is_positive(parse_word("A")) == OrderVerdict::Less);
}

TEST_CASE("deep commutators need higher truncation degrees") {
  // [[a,b],b] has leading term in degree 3.
  const Word ab = parse_word("abAB");
  const Word w = concat(concat(ab, parse_word("b")), concat(inverse(ab), parse_word("B")));
  const Comparison c = compare({}, w);
  CHECK(c.verdict != OrderVerdict::Undecided);
  CHECK(c.deciding.size() == 3);
  CHECK(c.degree == 4);
  CHECK(compare({}, w, 2).verdict == OrderVerdict::Undecided);
}

TEST_CASE("left invariance and antisymmetry on a sample") {
  const std::vector<Word> sample{parse_word("a"), parse_word("B"), parse_word("abA"),
                                 parse_word("bbaB"), parse_word("AbaB"), parse_word("ab")};
  for (const Word& g : sample) {
    for (const Word& h : sample) {
      const auto gh = compare(g, h).verdict;
      const auto hg = compare(h, g).verdict;
      if (gh == OrderVerdict::Less) CHECK(hg == OrderVerdict::Greater);
      for (const Word& k : sample) {
        CHECK(compare(concat(k, g), concat(k, h)).verdict == gh);
      }
    }
  }
}
