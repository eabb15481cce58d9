#include "orlab/words.hpp"

#include <cctype>

#include "orlab/error.hpp"

namespace orlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "E_INVALID_INPUT";
    case ErrorCode::InvalidComplex: return "E_INVALID_COMPLEX";
    case ErrorCode::InvalidMap: return "E_INVALID_MAP";
    case ErrorCode::UnknownId: return "E_UNKNOWN_ID";
    case ErrorCode::Mismatch: return "E_MISMATCH";
    case ErrorCode::NoE: return "E_NO_E";
    case ErrorCode::NotMinimal: return "E_NOT_MINIMAL";
    case ErrorCode::ProperPower: return "E_PROPER_POWER";
    case ErrorCode::NotClosed: return "E_NOT_CLOSED";
    case ErrorCode::NoAlpha: return "E_NO_ALPHA";
    case ErrorCode::OrderUndecided: return "ORDER_UNDECIDED";
    case ErrorCode::NonUniqueMin: return "NON_UNIQUE_MIN";
    case ErrorCode::ClassificationConflict: return "E_CLASSIFICATION_CONFLICT";
    case ErrorCode::WordProblemUnknown: return "WP_UNKNOWN";
    case ErrorCode::MalformedState: return "E_MALFORMED_STATE";
    case ErrorCode::Stuck: return "STUCK";
    case ErrorCode::NotPrime: return "E_NOT_PRIME";
    case ErrorCode::Unsupported: return "E_UNSUPPORTED";
  }
  return "E_UNKNOWN";
}

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i].gen == w[i - 1].gen && w[i].exp == -w[i - 1].exp) return false;
  }
  return true;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo].gen == r[hi - 1].gen && r[lo].exp == -r[hi - 1].exp) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo),
              r.begin() + static_cast<std::ptrdiff_t>(hi));
}

std::size_t cyclic_period(const Word& w) {
  const std::size_t n = w.size();
  if (n == 0) return 0;
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) return p;
  }
  return n;
}

bool is_proper_power(const Word& w) {
  return !w.empty() && cyclic_period(w) < w.size();
}

Word parse_word(const std::string& text) {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '.' || c == '*') {
      ++i;
      continue;
    }
    if (c == '1' && out.empty() && text.find_first_not_of(" 1") == std::string::npos) {
      ++i;
      continue;
    }
    if (c == 'x' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      std::size_t j = i + 1;
      int gen = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        gen = gen * 10 + (text[j] - '0');
        ++j;
      }
      int exp = 1;
      if (text.compare(j, 3, "^-1") == 0) {
        exp = -1;
        j += 3;
      }
      out.push_back({gen, exp});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const bool upper = std::isupper(static_cast<unsigned char>(c));
      const int gen = std::tolower(static_cast<unsigned char>(c)) - 'a';
      out.push_back({gen, upper ? -1 : 1});
      ++i;
      continue;
    }
    throw Error(ErrorCode::InvalidInput, "cannot parse word near '" + text.substr(i) + "'");
  }
  return out;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const Letter& l : w) {
    if (l.gen < 26) {
      const char base = static_cast<char>('a' + l.gen);
      s.push_back(l.exp > 0 ? base : static_cast<char>(std::toupper(base)));
    } else {
      if (!s.empty()) s.push_back(' ');
      s += "x" + std::to_string(l.gen) + (l.exp > 0 ? "" : "^-1");
      s.push_back(' ');
    }
  }
  return s;
}

}  // namespace orlab
