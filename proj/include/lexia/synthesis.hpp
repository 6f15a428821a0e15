#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "lexia/admissibility.hpp"
#include "lexia/complete_model.hpp"

namespace lexia {

namespace detail {

// Rows with identical payoff vectors cannot be separated by any belief: they
// are optimal together or not at all, and they leave the admissibility
// ladder in the same round.
inline std::vector<std::vector<int>> payoff_twins(const UtilityFn& v) {
  const int n = static_cast<int>(v.cells.size());
  std::vector<std::vector<int>> twins(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (v.cells[a] == v.cells[b]) twins[a].push_back(b);
  return twins;
}

// The feasibility schedule can land on an indifference face, where the
// target merely ties a rival it could beat. Averaging in one slack-maximal
// point per rival keeps every constraint satisfied (the region is convex)
// and leaves any rival that is separable at all strictly behind y.
inline std::vector<Rational> separating_rationalizer(const UtilityFn& v, int y,
                                                     const ChoiceSet& support) {
  auto base = rationalizing_cautious_belief(v, y, support);
  if (!base)
    throw InternalError("separating_rationalizer: target is dominated on its support");
  const int own_n = static_cast<int>(v.cells.size());
  const int nb = static_cast<int>(support.size());

  Rational eps = (*base)[support[0]];
  for (int x : support) eps = std::min(eps, (*base)[x]);
  eps /= Rational(2);

  // Same region as the schedule, floored at half the base's smallest weight
  // so the base point stays interior: q_x = p_x - eps >= 0.
  std::vector<LinearConstraint> cons;
  LinearConstraint total;
  total.coeff.assign(nb, Rational(1));
  total.sense = Sense::eq;
  total.rhs = Rational(1) - Rational(nb) * eps;
  cons.push_back(std::move(total));
  for (int a = 0; a < own_n; ++a) {
    if (a == y) continue;
    LinearConstraint best;
    best.coeff.assign(nb, Rational(0));
    Rational shift(0);
    for (int x = 0; x < nb; ++x) {
      Rational diff = v.at(y, support[x]) - v.at(a, support[x]);
      best.coeff[x] = diff;
      shift += diff;
    }
    best.sense = Sense::ge;
    best.rhs = -eps * shift;
    cons.push_back(std::move(best));
  }

  std::vector<Rational> acc = *base;
  int count = 1;
  for (int w = 0; w < own_n; ++w) {
    if (w == y || v.cells[w] == v.cells[y]) continue;
    std::vector<Rational> objective(nb);
    for (int x = 0; x < nb; ++x) objective[x] = v.at(y, support[x]) - v.at(w, support[x]);
    LPResult lp = solve_lp(objective, cons);
    if (lp.status != LPStatus::optimal)
      throw InternalError("separating_rationalizer: slack LP did not solve");
    for (int x = 0; x < nb; ++x) acc[support[x]] += lp.x[x] + eps;
    ++count;
  }
  for (Rational& w : acc) w /= Rational(count);
  return acc;
}

// Column distributions for one stratum over `cols`. Every rival in `tied`
// stays weakly behind the target y, any rival this stratum can drop strictly
// behind is dropped, and each column gets positive weight in some emitted
// level (a stratum may need several when covering a column and holding a tie
// conflict). `tied` keeps only the rivals still exactly level afterwards.
// Emitted marginals are full-width with zeros off their support.
inline void counterplay(const UtilityFn& v, int y, std::vector<int> cols,
                        std::vector<int>& tied,
                        std::vector<std::vector<Rational>>& out) {
  const int width = static_cast<int>(v.cells[y].size());
  auto margin_at = [&](const std::vector<Rational>& q, int r) {
    Rational m(0);
    for (int c = 0; c < width; ++c)
      if (q[c] != Rational(0)) m += q[c] * (v.at(r, c) - v.at(y, c));
    return m;
  };

  while (!cols.empty()) {
    const int nb = static_cast<int>(cols.size());
    std::vector<Rational> uni(width, Rational(0));
    for (int c : cols) uni[c] = Rational(1) / Rational(nb);
    if (tied.empty()) {
      out.push_back(std::move(uni));
      return;
    }
    bool uni_ok = true, uni_strict = true;
    for (int r : tied) {
      Rational m = margin_at(uni, r);
      if (m > Rational(0)) {
        uni_ok = uni_strict = false;
        break;
      }
      if (m == Rational(0)) uni_strict = false;
    }
    if (uni_strict) {
      // Uniform already beats every open rival; cheapest level wins.
      tied.clear();
      out.push_back(std::move(uni));
      return;
    }

    std::vector<LinearConstraint> cons;
    LinearConstraint total;
    total.coeff.assign(nb, Rational(1));
    total.sense = Sense::eq;
    total.rhs = Rational(1);
    cons.push_back(std::move(total));
    for (int r : tied) {
      LinearConstraint keep;
      keep.coeff.assign(nb, Rational(0));
      for (int x = 0; x < nb; ++x) keep.coeff[x] = v.at(y, cols[x]) - v.at(r, cols[x]);
      keep.sense = Sense::ge;
      keep.rhs = Rational(0);
      cons.push_back(std::move(keep));
    }

    std::vector<std::vector<Rational>> pts;
    auto solve_into = [&](std::vector<Rational> objective) {
      LPResult lp = solve_lp(objective, cons);
      if (lp.status != LPStatus::optimal)
        throw InternalError("counterplay: a stratum cannot keep the target on top");
      pts.push_back(std::move(lp.x));
    };
    for (int r : tied) {
      std::vector<Rational> obj(nb);
      for (int x = 0; x < nb; ++x) obj[x] = v.at(y, cols[x]) - v.at(r, cols[x]);
      solve_into(std::move(obj));
    }
    for (int x = 0; x < nb; ++x) {
      std::vector<Rational> obj(nb, Rational(0));
      obj[x] = Rational(1);
      solve_into(std::move(obj));
    }
    if (uni_ok) {
      std::vector<Rational> flat(nb, Rational(1) / Rational(nb));
      pts.push_back(std::move(flat));
    }

    std::vector<Rational> q(width, Rational(0));
    for (const auto& pt : pts)
      for (int x = 0; x < nb; ++x) q[cols[x]] += pt[x];
    for (Rational& w : q) w /= Rational(static_cast<int>(pts.size()));

    std::vector<int> still;
    for (int r : tied) {
      Rational m = margin_at(q, r);
      if (m > Rational(0))
        throw InternalError("counterplay: averaged point left the feasible region");
      if (m == Rational(0)) still.push_back(r);
    }
    std::vector<int> leftover;
    for (int c : cols)
      if (q[c] == Rational(0)) leftover.push_back(c);
    out.push_back(std::move(q));
    tied = std::move(still);
    cols = std::move(leftover);
  }
}

}  // namespace detail

// Builds a complete model whose ladder verdicts realize the admissibility
// chain of g. One type per choice alive after round one, named "t:<label>",
// targeting that choice. Writing death(c) for the round that eliminates c
// (stable survivors get stable+2 so they sort above every dying band), the
// belief of the type for y stratifies (choice, type) pairs by how long the
// pair stays good: with band(t) the death of t's target, pairs with
// band >= death(y)-1 share the top level, each lower band down to 2 gets its
// own run of levels, and a cautious floor carries every pair at the bottom.
//   - The top marginal is a rationalizing distribution over D^{death(y)-2},
//     so the target is weakly best there; a column's mass is split equally
//     over the pairs the stratum holds for that column.
//   - Lower strata and the floor use counterplay marginals: rivals the top
//     level left tied are held weakly behind until some level sheds them.
//     Point-mass tails close the belief only when every rival is already
//     strictly behind, since a tail could hand a tied rival the lead.
// A rival that no admissible level can drop (the target is an exact mixture
// of rows including it) stays optimal alongside the target. Such hangers-on
// never leave the ladder before the target does, and their (choice, type)
// pairs belong to the same stratum as the type's target in everyone else's
// beliefs, so optima are recomputed and the strata rebuilt until the
// assignment is a fixed point.
// Types targeting survivors pass every fold; a type targeting a choice that
// dies in round d passes exactly folds 1..d-2, because its top level must
// lean on round-(d-1) types, and those go bad at fold d-1. The construction
// is checked against the ladder before returning; a mismatch throws.
inline CompleteModel synthesize_car_model(const Game& g) {
  IARounds ia = iterated_admissibility(g);
  const int stable = ia.stable_round();
  const int survivor_mark = stable + 2;

  std::array<std::vector<int>, 2> death;
  std::array<std::vector<std::vector<int>>, 2> twins;
  for (int p = 0; p < kPlayers; ++p) {
    death[p].assign(g.form.num_choices(p), survivor_mark);
    for (int c = 0; c < g.form.num_choices(p); ++c)
      for (int k = 1; k <= stable; ++k) {
        const ChoiceSet& alive = ia.rounds[k][p];
        if (!std::binary_search(alive.begin(), alive.end(), c)) {
          death[p][c] = k;
          break;
        }
      }
    twins[p] = detail::payoff_twins(g.utility[p]);
  }

  CompleteModel m;
  m.game = g;
  std::array<std::vector<int>, 2> target;  // type index -> choice
  for (int p = 0; p < kPlayers; ++p)
    for (int c : ia.round_set(1)[p]) {
      target[p].push_back(c);
      m.type_names[p].push_back("t:" + g.form.label(p, c));
    }

  // optima[p][ti]: the choice set type ti ends up rationalizing. Starts at
  // the target's twin class and grows only if hangers-on turn up; the strata
  // below depend on it, so rebuild until the assignment fixes.
  std::array<std::vector<std::vector<int>>, 2> optima;
  for (int p = 0; p < kPlayers; ++p)
    for (int y : target[p]) optima[p].push_back(twins[p][y]);

  const int max_passes =
      2 * static_cast<int>(target[0].size() + target[1].size()) + 4;
  for (int pass = 0;; ++pass) {
    if (pass >= max_passes)
      throw InternalError("synthesize_car_model: optima never stabilized");
    for (int p = 0; p < kPlayers; ++p) m.beliefs[p].clear();

    for (int p = 0; p < kPlayers; ++p) {
      const int opp = opponent(p);
      const UtilityFn& v = g.utility[p];
      const int opp_n = g.form.num_choices(opp);
      const int opp_types = static_cast<int>(target[opp].size());
      // A pair (c, t) goes bad exactly when t's target dies, so its stratum
      // is forced: the band of that death.
      std::map<int, std::vector<PairKey>, std::greater<int>> by_band;
      for (int tz = 0; tz < opp_types; ++tz) {
        const int band = death[opp][target[opp][tz]];
        for (int c : optima[opp][tz]) by_band[band].push_back({c, tz});
      }

      for (std::size_t ti = 0; ti < target[p].size(); ++ti) {
        const int y = target[p][ti];
        const int d = death[p][y];
        const ChoiceSet& support = ia.round_set(d - 2)[opp];
        std::vector<Rational> dist = detail::separating_rationalizer(v, y, support);

        LexBelief b;
        // Top level: every pair still good at fold d-2, i.e. band >= d-1,
        // plus bare anchors for columns that die in round one (those exist
        // only when d == 2, where the support is the full choice set).
        std::map<int, std::vector<PairKey>> top_pairs;  // column -> pairs
        for (const auto& [band, pairs] : by_band) {
          if (band < d - 1) break;
          for (const PairKey& pk : pairs) top_pairs[pk.choice].push_back(pk);
        }
        BeliefLevel top;
        for (int c : support) {
          auto it = top_pairs.find(c);
          if (it == top_pairs.end()) {
            top.weight[{c, 0}] = dist[c];
            continue;
          }
          Rational share = dist[c] / Rational(static_cast<int>(it->second.size()));
          for (const PairKey& pk : it->second) top.weight[pk] = share;
        }
        b.levels.push_back(std::move(top));

        std::vector<int> tied;
        for (int r = 0; r < g.form.num_choices(p); ++r) {
          if (v.cells[r] == v.cells[y]) continue;
          Rational margin(0);
          for (int c : support) margin += dist[c] * (v.at(r, c) - v.at(y, c));
          if (margin > Rational(0))
            throw InternalError("synthesize_car_model: rationalizer lost the target");
          if (margin == Rational(0)) tied.push_back(r);
        }

        auto emit = [&](const std::vector<std::vector<Rational>>& marginals,
                        const std::vector<PairKey>& pairs) {
          std::map<int, std::vector<PairKey>> per_col;
          for (const PairKey& pk : pairs) per_col[pk.choice].push_back(pk);
          for (const auto& q : marginals) {
            BeliefLevel lvl;
            for (int c = 0; c < opp_n; ++c) {
              if (q[c] == Rational(0)) continue;
              const auto& carriers = per_col.at(c);
              Rational share = q[c] / Rational(static_cast<int>(carriers.size()));
              for (const PairKey& pk : carriers) lvl.weight[pk] = share;
            }
            b.levels.push_back(std::move(lvl));
          }
        };

        for (int band = d - 2; band >= 2; --band) {
          auto bit = by_band.find(band);
          if (bit == by_band.end()) continue;
          std::vector<int> cols;
          for (const PairKey& pk : bit->second) cols.push_back(pk.choice);
          std::sort(cols.begin(), cols.end());
          cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
          std::vector<std::vector<Rational>> marginals;
          detail::counterplay(v, y, std::move(cols), tied, marginals);
          emit(marginals, bit->second);
        }

        std::vector<PairKey> all_pairs;
        for (int c = 0; c < opp_n; ++c)
          for (int t = 0; t < opp_types; ++t) all_pairs.push_back({c, t});
        std::vector<int> all_cols(opp_n);
        std::iota(all_cols.begin(), all_cols.end(), 0);
        std::vector<std::vector<Rational>> floor_marginals;
        detail::counterplay(v, y, std::move(all_cols), tied, floor_marginals);
        emit(floor_marginals, all_pairs);

        if (tied.empty()) {
          for (int c = 0; c < opp_n; ++c) {
            BeliefLevel lvl;
            lvl.weight[{c, 0}] = Rational(1);
            b.levels.push_back(std::move(lvl));
          }
        }
        m.beliefs[p].push_back(std::move(b));
      }
    }

    bool settled = true;
    for (int p = 0; p < kPlayers; ++p)
      for (std::size_t ti = 0; ti < target[p].size(); ++ti) {
        std::vector<int> got = optimal_choices_co(m, p, static_cast<int>(ti));
        if (got != optima[p][ti]) {
          optima[p][ti] = std::move(got);
          settled = false;
        }
      }
    if (settled) break;
  }

  for (int p = 0; p < kPlayers; ++p)
    for (std::size_t ti = 0; ti < target[p].size(); ++ti) {
      const int y = target[p][ti];
      if (!is_cautious_co(m, p, static_cast<int>(ti)))
        throw InternalError("synthesize_car_model: type " + m.type_names[p][ti] +
                            " is not cautious");
      const std::vector<int>& opt = optima[p][ti];
      if (!std::binary_search(opt.begin(), opt.end(), y))
        throw InternalError("synthesize_car_model: type " + m.type_names[p][ti] +
                            " does not keep its target optimal");
      for (int r : opt)
        if (death[p][r] < death[p][y])
          throw InternalError("synthesize_car_model: type " + m.type_names[p][ti] +
                              " rationalizes a choice that dies before its target");
    }
  CommonReport rep = common_assumption(m);
  for (int p = 0; p < kPlayers; ++p)
    for (std::size_t ti = 0; ti < target[p].size(); ++ti) {
      bool expect = death[p][target[p][ti]] == survivor_mark;
      if (rep.common[p][ti] != expect)
        throw InternalError("synthesize_car_model: ladder verdict mismatch for " +
                            m.type_names[p][ti]);
    }
  return m;
}

}  // namespace lexia
