#pragma once

#include <vector>

#include "lexia/errors.hpp"
#include "lexia/rational.hpp"

namespace lexia {

// Utility levels of one choice under a layered belief, most important
// level first.
using LexVector = std::vector<Rational>;

enum class Ordering { less, equal, greater };

// Lexicographic comparison: the first differing level decides.
// Both vectors must have the same number of levels.
inline Ordering lex_compare(const LexVector& a, const LexVector& b) {
  if (a.size() != b.size())
    throw ContractError("lex_compare: level counts differ (" +
                        std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? Ordering::less : Ordering::greater;
  }
  return Ordering::equal;
}

inline bool lex_greater(const LexVector& a, const LexVector& b) {
  return lex_compare(a, b) == Ordering::greater;
}

}  // namespace lexia
