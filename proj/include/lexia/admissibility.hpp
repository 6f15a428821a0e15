#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "lexia/errors.hpp"
#include "lexia/game.hpp"
#include "lexia/rational.hpp"
#include "lexia/simplex.hpp"

namespace lexia {

using ChoiceSet = std::vector<int>;  // sorted dense indices
using ChoiceSets = std::array<ChoiceSet, 2>;

struct DominanceCertificate {
  bool dominated = false;
  // Dominating mixture over own choices, positive weights only. Empty when
  // not dominated.
  std::vector<std::pair<int, Rational>> mixture;
};

// Does some mixture over `own` earn at least what `c` earns against every
// column in `opp`, strictly more against one of them? Decided exactly:
// maximize the total slack across columns; c is weakly dominated iff the
// optimum is positive. Feasible always (point mass on c, zero slack), and
// bounded, so the LP must come back optimal.
inline DominanceCertificate weakly_dominated(const ChoiceSet& own, const ChoiceSet& opp,
                                             const UtilityFn& v, int c) {
  if (own.empty() || opp.empty()) throw ContractError("weakly_dominated: empty restriction");
  if (std::find(own.begin(), own.end(), c) == own.end())
    throw ContractError("weakly_dominated: candidate not in its own restriction");

  const int na = static_cast<int>(own.size());
  const int nb = static_cast<int>(opp.size());
  const int nvars = na + nb;  // mixture weights, then one slack per column

  std::vector<Rational> objective(nvars, Rational(0));
  for (int b = 0; b < nb; ++b) objective[na + b] = Rational(1);

  std::vector<LinearConstraint> cons;
  for (int b = 0; b < nb; ++b) {
    LinearConstraint con;
    con.coeff.assign(nvars, Rational(0));
    for (int a = 0; a < na; ++a) con.coeff[a] = v.at(own[a], opp[b]);
    con.coeff[na + b] = Rational(-1);
    con.sense = Sense::eq;
    con.rhs = v.at(c, opp[b]);
    cons.push_back(std::move(con));
  }
  LinearConstraint one;
  one.coeff.assign(nvars, Rational(0));
  for (int a = 0; a < na; ++a) one.coeff[a] = Rational(1);
  one.sense = Sense::eq;
  one.rhs = Rational(1);
  cons.push_back(std::move(one));

  LPResult lp = solve_lp(objective, cons);
  if (lp.status != LPStatus::optimal)
    throw InternalError("weakly_dominated: dominance LP did not solve");

  DominanceCertificate cert;
  cert.dominated = lp.value.sign() > 0;
  if (cert.dominated)
    for (int a = 0; a < na; ++a)
      if (lp.x[a].sign() > 0) cert.mixture.push_back({own[a], lp.x[a]});
  return cert;
}

// Choices of each player not weakly dominated within the restriction.
// Nonempty whenever the restriction is: a lexicographically best reply to
// any full-support belief survives.
inline ChoiceSets admissible_set(const std::array<UtilityFn, 2>& v, const ChoiceSets& restriction) {
  ChoiceSets out;
  for (int p = 0; p < kPlayers; ++p)
    for (int c : restriction[p])
      if (!weakly_dominated(restriction[p], restriction[1 - p], v[p], c).dominated)
        out[p].push_back(c);
  return out;
}

// The descending chain D^0 over D^1 over ... over D^m of iterated
// admissibility, both players reduced simultaneously each round. Only the
// strictly shrinking prefix is stored; index m is the fixed point.
struct IARounds {
  std::vector<ChoiceSets> rounds;

  int stable_round() const { return static_cast<int>(rounds.size()) - 1; }

  // D^k, reading past the fixed point as the fixed point itself.
  const ChoiceSets& round_set(int k) const {
    if (k < 0) throw ContractError("round_set: negative round");
    return rounds[std::min<std::size_t>(k, rounds.size() - 1)];
  }

  const ChoiceSets& survivors() const { return rounds.back(); }
};

inline IARounds iterated_admissibility(const Game& g) {
  IARounds ia;
  ChoiceSets full;
  for (int p = 0; p < kPlayers; ++p)
    for (int c = 0; c < g.form.num_choices(p); ++c) full[p].push_back(c);
  ia.rounds.push_back(std::move(full));
  for (;;) {
    ChoiceSets next = admissible_set(g.utility, ia.rounds.back());
    if (next == ia.rounds.back()) break;
    ia.rounds.push_back(std::move(next));
  }
  return ia;
}

// A single distribution over the opponent's choices, positive exactly on
// `support`, under which `c` is weakly best among all own choices of v.
// Exists iff c is not weakly dominated w.r.t. (all own choices, support).
// Positivity is reached by a feasibility LP with floor epsilon halved from
// 1/2 until it fits; any rationalizing distribution has a smallest weight,
// so the halving stops.
inline std::optional<std::vector<Rational>> rationalizing_cautious_belief(
    const UtilityFn& v, int c, const ChoiceSet& support) {
  const int own_n = static_cast<int>(v.cells.size());
  const int opp_n = own_n > 0 ? static_cast<int>(v.cells[0].size()) : 0;
  if (support.empty()) throw ContractError("rationalizing_cautious_belief: empty support");

  ChoiceSet all_own(own_n);
  for (int a = 0; a < own_n; ++a) all_own[a] = a;
  if (weakly_dominated(all_own, support, v, c).dominated) return std::nullopt;

  const int nb = static_cast<int>(support.size());
  Rational eps(1, 2);
  for (int round = 0; round < 64; ++round, eps /= Rational(2)) {
    // Variables q_x = p_x - eps >= 0 for x in support.
    std::vector<LinearConstraint> cons;
    LinearConstraint total;
    total.coeff.assign(nb, Rational(1));
    total.sense = Sense::eq;
    total.rhs = Rational(1) - Rational(nb) * eps;
    cons.push_back(std::move(total));
    for (int a = 0; a < own_n; ++a) {
      if (a == c) continue;
      LinearConstraint best;
      best.coeff.assign(nb, Rational(0));
      Rational shift(0);
      for (int x = 0; x < nb; ++x) {
        Rational diff = v.at(c, support[x]) - v.at(a, support[x]);
        best.coeff[x] = diff;
        shift += diff;
      }
      best.sense = Sense::ge;
      best.rhs = -eps * shift;
      cons.push_back(std::move(best));
    }
    LPResult lp = solve_lp(std::vector<Rational>(nb, Rational(0)), cons);
    if (lp.status == LPStatus::optimal) {
      std::vector<Rational> p(opp_n, Rational(0));
      for (int x = 0; x < nb; ++x) p[support[x]] = lp.x[x] + eps;
      return p;
    }
  }
  throw InternalError("rationalizing_cautious_belief: epsilon floor exhausted");
}

}  // namespace lexia
