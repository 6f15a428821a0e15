#pragma once

// Brute-force references the solver answers are checked against.

#include <vector>

#include "lexia/admissibility.hpp"
#include "lexia/game.hpp"
#include "lexia/rational.hpp"

namespace testsupport {

// Enumerates every mixture over `own` whose weights share a denominator at
// most max_den and reports whether one of them weakly dominates c on `opp`.
// One-sided: a miss does not prove that no dominating mixture exists.
inline bool grid_weakly_dominates(const lexia::ChoiceSet& own, const lexia::ChoiceSet& opp,
                                  const lexia::UtilityFn& v, int c, int max_den = 8) {
  const int na = static_cast<int>(own.size());
  std::vector<int> parts(na, 0);
  auto dominates = [&](int den) {
    bool strict = false;
    for (int b : opp) {
      lexia::Rational mix(0);
      for (int a = 0; a < na; ++a)
        mix += lexia::Rational(parts[a], den) * v.at(own[a], b);
      if (mix < v.at(c, b)) return false;
      if (mix > v.at(c, b)) strict = true;
    }
    return strict;
  };
  for (int den = 1; den <= max_den; ++den) {
    // All compositions of den into na nonnegative parts.
    auto rec = [&](auto&& self, int idx, int left) -> bool {
      if (idx == na - 1) {
        parts[idx] = left;
        return dominates(den);
      }
      for (int k = 0; k <= left; ++k) {
        parts[idx] = k;
        if (self(self, idx + 1, left - k)) return true;
      }
      return false;
    };
    if (rec(rec, 0, den)) return true;
  }
  return false;
}

// Replays a dominance certificate by direct evaluation: weights positive and
// summing to one, weakly better on every column, strictly better somewhere.
inline bool replay_dominance(const lexia::DominanceCertificate& cert, const lexia::ChoiceSet& opp,
                             const lexia::UtilityFn& v, int c) {
  if (!cert.dominated) return false;
  lexia::Rational total(0);
  for (const auto& [a, w] : cert.mixture) {
    (void)a;
    if (w.sign() <= 0) return false;
    total += w;
  }
  if (total != lexia::Rational(1)) return false;
  bool strict = false;
  for (int b : opp) {
    lexia::Rational mix(0);
    for (const auto& [a, w] : cert.mixture) mix += w * v.at(a, b);
    if (mix < v.at(c, b)) return false;
    if (mix > v.at(c, b)) strict = true;
  }
  return strict;
}

// Is c a weakly best reply among all own choices of v to the distribution p
// over opponent choices?
inline bool best_reply(const lexia::UtilityFn& v, int c, const std::vector<lexia::Rational>& p) {
  const int own_n = static_cast<int>(v.cells.size());
  const int opp_n = static_cast<int>(v.cells[0].size());
  lexia::Rational mine(0);
  for (int x = 0; x < opp_n; ++x) mine += p[x] * v.at(c, x);
  for (int a = 0; a < own_n; ++a) {
    lexia::Rational other(0);
    for (int x = 0; x < opp_n; ++x) other += p[x] * v.at(a, x);
    if (other > mine) return false;
  }
  return true;
}

}  // namespace testsupport
