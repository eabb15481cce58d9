#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace orlab {

/// One letter of a free-group word: generator index and exponent +1 / -1.
struct Letter {
  int gen = 0;
  int exp = 1;

  Letter inverse() const { return {gen, -exp}; }
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);

/// Free reduction (cancel adjacent x x^-1 until none remain).
Word free_reduce(const Word& w);
bool is_freely_reduced(const Word& w);

/// Free reduction followed by cancellation of the ends against each other.
Word cyclic_reduce(const Word& w);

/// Smallest period p of the cyclic word (p divides length). Returns the
/// length itself when the word is primitive; 0 for the empty word.
std::size_t cyclic_period(const Word& w);

/// True when a cyclically reduced nonempty word equals u^k for some k >= 2.
bool is_proper_power(const Word& w);

/// Parses "a b A B" / "ab" / "x0 x1^-1" style words. Lowercase letter i maps to
/// generator i ('a' = 0), uppercase is its inverse. Throws Error on bad input.
Word parse_word(const std::string& text);
std::string format_word(const Word& w);

}  // namespace orlab
