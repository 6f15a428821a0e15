#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexia/admissibility.hpp"
#include "lexia/belief.hpp"
#include "lexia/errors.hpp"
#include "lexia/game.hpp"
#include "lexia/lex_vector.hpp"
#include "lexia/model_common.hpp"

namespace lexia {

// Incomplete-information epistemic model: every type carries its own utility
// function next to its belief, and the file names the reference utility pair
// the checks compare against. A type's utility is oriented from its owner's
// side (rows = own choices).
struct IncompleteModel {
  GameForm form;
  std::array<UtilityFn, 2> reference_u;
  std::array<std::vector<std::string>, 2> type_names;
  std::array<std::vector<UtilityFn>, 2> utility;  // parallel to type_names
  std::array<std::vector<LexBelief>, 2> beliefs;

  int num_types(int player) const { return static_cast<int>(type_names[player].size()); }

  std::optional<int> type_index(int player, std::string_view name) const {
    const auto& names = type_names[player];
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    return std::nullopt;
  }
};

// The game the reference utilities induce; admissibility questions about the
// model are decided on this game.
inline Game reference_game(const IncompleteModel& m) { return {m.form, m.reference_u}; }

// ---------------------------------------------------------------------------
// Parsing / serialization

// File shape: { "players": [...], "reference_u": [u1, u2], "types":
// [ {"player": 1|2, "name": ..., "utility": {...}, "belief": [levels]} ] }.
// Utility tables are keyed "(own,opp)" from the owning player's side.
inline IncompleteModel parse_incomplete_model(const Json& j, const std::string& ctx) {
  IncompleteModel m;
  m.form = parse_game_form(jsonio::require_array(j, "players", ctx), ctx);
  const Json& ref = jsonio::require_array(j, "reference_u", ctx);
  if (ref.size() != 2) throw ParseError(ctx, "\"reference_u\" must list exactly two tables");
  for (int p = 0; p < kPlayers; ++p)
    m.reference_u[p] =
        parse_utility_fn(ref[p], m.form, p, ctx + ": reference_u[" + std::to_string(p) + "]");

  const Json& types = jsonio::require_array(j, "types", ctx);
  // Names first so beliefs can reference types declared later in the file.
  std::vector<std::pair<int, const Json*>> order;
  for (std::size_t i = 0; i < types.size(); ++i) {
    const Json& tj = types[i];
    std::string tctx = ctx + ": types[" + std::to_string(i) + "]";
    const Json& pj = jsonio::require(tj, "player", tctx);
    if (!pj.is_number_integer() || (pj.get<int>() != 1 && pj.get<int>() != 2))
      throw ParseError(tctx, "\"player\" must be 1 or 2");
    int p = pj.get<int>() - 1;
    std::string name = jsonio::require_string(tj, "name", tctx);
    detail::check_label(name, tctx);
    if (m.type_index(p, name)) throw ParseError(tctx, "duplicate type name \"" + name + "\"");
    m.type_names[p].push_back(name);
    order.push_back({p, &tj});
  }
  for (int p = 0; p < kPlayers; ++p)
    if (m.type_names[p].empty())
      throw ParseError(ctx, "player " + std::to_string(p + 1) + " needs at least one type");

  std::array<int, 2> cursor{0, 0};
  for (int p = 0; p < kPlayers; ++p) {
    m.utility[p].resize(m.type_names[p].size());
    m.beliefs[p].resize(m.type_names[p].size());
  }
  for (auto [p, tj] : order) {
    int idx = cursor[p]++;
    std::string tctx = ctx + ": type " + m.type_names[p][idx];
    m.utility[p][idx] = parse_utility_fn(jsonio::require(*tj, "utility", tctx), m.form, p, tctx);
    m.beliefs[p][idx] = parse_lex_belief(jsonio::require(*tj, "belief", tctx), m.form,
                                         opponent(p), m.type_names[opponent(p)], tctx);
  }
  return m;
}

inline IncompleteModel load_incomplete_model(const std::string& path) {
  return parse_incomplete_model(load_json_file(path), path);
}

inline Json incomplete_model_to_json(const IncompleteModel& m) {
  Json players = game_form_to_json(m.form);
  Json ref = Json::array();
  for (int p = 0; p < kPlayers; ++p) ref.push_back(utility_fn_to_json(m.reference_u[p], m.form, p));
  Json types = Json::array();
  for (int p = 0; p < kPlayers; ++p)
    for (int t = 0; t < m.num_types(p); ++t)
      types.push_back(
          Json{{"player", p + 1},
               {"name", m.type_names[p][t]},
               {"utility", utility_fn_to_json(m.utility[p][t], m.form, p)},
               {"belief", lex_belief_to_json(m.beliefs[p][t], m.form, opponent(p),
                                             m.type_names[opponent(p)])}});
  return Json{{"players", std::move(players)},
              {"reference_u", std::move(ref)},
              {"types", std::move(types)}};
}

// ---------------------------------------------------------------------------
// Per-type predicates

inline std::vector<int> optimal_choices_in(const IncompleteModel& m, int player, int type) {
  const LexBelief& b = m.beliefs[player][type];
  const UtilityFn& w = m.utility[player][type];
  int n = m.form.num_choices(player);
  std::vector<LexVector> eu(n);
  for (int c = 0; c < n; ++c) eu[c] = expected_utility_vector(c, b, w);
  std::vector<int> out;
  for (int c = 0; c < n; ++c) {
    bool beaten = false;
    for (int a = 0; a < n && !beaten; ++a)
      if (lex_compare(eu[a], eu[c]) == Ordering::greater) beaten = true;
    if (!beaten) out.push_back(c);
  }
  return out;
}

// Caution here asks less than literal full support: a pair (c_j,t_j) counts
// as covered when SOME model type sharing t_j's belief is deemed possible
// together with c_j. A type is free to concentrate on one utility variant of
// an opponent hierarchy as long as every choice gets paired with it.
inline bool is_cautious_in(const IncompleteModel& m, int player, int type) {
  const LexBelief& b = m.beliefs[player][type];
  int opp = opponent(player);
  for (int tj : possible_types(b))
    for (int c = 0; c < m.form.num_choices(opp); ++c) {
      bool covered = false;
      for (int tk = 0; tk < m.num_types(opp) && !covered; ++tk)
        if (m.beliefs[opp][tk] == m.beliefs[opp][tj] && deems_possible(b, {c, tk}))
          covered = true;
      if (!covered) return false;
    }
  return true;
}

inline bool believes_rationality(const IncompleteModel& m, int player, int type) {
  const LexBelief& b = m.beliefs[player][type];
  int opp = opponent(player);
  std::vector<std::optional<std::vector<int>>> opt(m.num_types(opp));
  for (const BeliefLevel& lvl : b.levels)
    for (const auto& [pair, w] : lvl.weight) {
      (void)w;
      if (!opt[pair.type]) opt[pair.type] = optimal_choices_in(m, opp, pair.type);
      const auto& o = *opt[pair.type];
      if (std::find(o.begin(), o.end(), pair.choice) == o.end()) return false;
    }
  return true;
}

// Builds a utility function making every choice in c_good lex-best under the
// marginal: 1 where a good choice meets the level-1 support, 0 elsewhere.
// Good rows then tie at every level and beat the all-zero rest at level 1.
inline UtilityFn construct_supporting_utility(const GameForm& form, int player,
                                              const std::vector<int>& c_good,
                                              const ChoiceMarginal& beta) {
  if (c_good.empty())
    throw ContractError("construct_supporting_utility: choice set must be nonempty");
  int own = form.num_choices(player);
  int oppn = form.num_choices(opponent(player));
  check_marginal(beta, oppn);
  for (int c : c_good)
    if (c < 0 || c >= own)
      throw ContractError("construct_supporting_utility: choice index out of range");

  UtilityFn v = UtilityFn::zeros(own, oppn);
  for (int c : c_good)
    for (int d = 0; d < oppn; ++d)
      if (beta[0][d].sign() > 0) v.cells[c][d] = Rational(1);

  for (int c : c_good) {
    LexVector target = marginal_eu_vector(c, beta, v);
    for (int a = 0; a < own; ++a)
      if (lex_compare(marginal_eu_vector(a, beta, v), target) == Ordering::greater)
        throw InternalError("construct_supporting_utility: built utility misses optimality");
  }
  return v;
}

namespace detail {

// witness_ok / pair_good for the supported and prior checks: opponent types
// that are cautious, carry the reference utility, and pass accept.
inline std::vector<char> reference_type_mask(const IncompleteModel& m, int opp,
                                             const std::vector<char>* accept) {
  std::vector<char> ok(m.num_types(opp));
  for (int t = 0; t < m.num_types(opp); ++t)
    ok[t] = m.utility[opp][t] == m.reference_u[opp] && (!accept || (*accept)[t]) &&
            is_cautious_in(m, opp, t);
  return ok;
}

}  // namespace detail

// Every choice in good_choices must be optimal for some deemed-possible
// cautious type carrying the reference utility. Callers pass the reference
// game's admissible choices of the opponent as good_choices.
inline AssumptionResult supports_every_good_choice(const IncompleteModel& m, int player, int type,
                                                   const std::vector<int>& good_choices) {
  if (!is_cautious_in(m, player, type))
    throw ContractError("supports_every_good_choice: type " + m.type_names[player][type] +
                        " is not cautious");
  int opp = opponent(player);
  std::vector<std::vector<int>> opp_opt(m.num_types(opp));
  for (int t = 0; t < m.num_types(opp); ++t) opp_opt[t] = optimal_choices_in(m, opp, t);
  std::vector<char> witness_ok = detail::reference_type_mask(m, opp, nullptr);
  auto r = detail::check_support(m.form, player, m.beliefs[player][type], opp_opt, good_choices,
                                 witness_ok, "support");
  return {r.a1, r.detail, std::move(r.witnesses)};
}

// Deemed-possible pairs whose type is cautious and carries the reference
// utility must sit at strictly earlier first levels than every deemed-possible
// pair lacking that property. No optimality enters here.
inline AssumptionResult prior_belief_in_u(const IncompleteModel& m, int player, int type) {
  int opp = opponent(player);
  std::vector<char> pair_good = detail::reference_type_mask(m, opp, nullptr);
  auto r = detail::check_partition(m.form, player, m.beliefs[player][type], m.type_names[opp],
                                   {}, pair_good, false, "prior");
  return {r.a2, r.detail, std::move(r.witnesses)};
}

// ---------------------------------------------------------------------------
// Fold ladder for "prior belief in u and every good choice supported"

namespace detail {

inline FoldLadder supported_prior_ladder(const IncompleteModel& m, int max_fold,
                                         const IARounds& ia) {
  FoldLadder lad;
  lad.max_fold = max_fold;
  lad.verdict.assign(max_fold + 1, {});
  lad.detail.assign(max_fold + 1, {});
  for (int f = 0; f <= max_fold; ++f)
    for (int p = 0; p < kPlayers; ++p) {
      lad.verdict[f][p].assign(m.num_types(p), Verdict::fail);
      lad.detail[f][p].assign(m.num_types(p), "");
    }

  std::array<std::vector<char>, 2> cautious;
  std::array<std::vector<std::vector<int>>, 2> opt;
  for (int p = 0; p < kPlayers; ++p) {
    cautious[p].resize(m.num_types(p));
    opt[p].resize(m.num_types(p));
    for (int t = 0; t < m.num_types(p); ++t) {
      cautious[p][t] = is_cautious_in(m, p, t);
      opt[p][t] = optimal_choices_in(m, p, t);
      lad.verdict[0][p][t] = cautious[p][t] ? Verdict::pass : Verdict::fail;
      if (!cautious[p][t]) {
        // Name the first uncovered pair.
        std::string where;
        const LexBelief& b = m.beliefs[p][t];
        int opp = opponent(p);
        for (int tj : possible_types(b)) {
          for (int c = 0; c < m.form.num_choices(opp) && where.empty(); ++c) {
            bool covered = false;
            for (int tk = 0; tk < m.num_types(opp) && !covered; ++tk)
              if (m.beliefs[opp][tk] == m.beliefs[opp][tj] && deems_possible(b, {c, tk}))
                covered = true;
            if (!covered)
              where = "(" + m.form.label(opp, c) + "," + m.type_names[opp][tj] +
                      ") covered by no same-belief type";
          }
          if (!where.empty()) break;
        }
        lad.detail[0][p][t] = "caution: " + where;
      }
    }
  }

  std::array<std::vector<char>, 2> cum = cautious;
  for (int f = 1; f <= max_fold; ++f) {
    std::array<std::vector<char>, 2> next = cum;
    for (int p = 0; p < kPlayers; ++p) {
      int opp = opponent(p);
      const std::vector<int>& good_choices = ia.round_set(f)[opp];
      // Fold f accepts opponent types that are cautious, carry the reference
      // utility, and have climbed the ladder through fold f-1; the witness
      // rule and the pair classification coincide here at every fold.
      std::vector<char> good_type(m.num_types(opp));
      for (int t = 0; t < m.num_types(opp); ++t)
        good_type[t] =
            cautious[opp][t] && cum[opp][t] && m.utility[opp][t] == m.reference_u[opp];

      for (int t = 0; t < m.num_types(p); ++t) {
        if (!cautious[p][t]) {
          lad.verdict[f][p][t] = Verdict::not_applicable;
          lad.detail[f][p][t] = "not cautious";
          continue;
        }
        if (!cum[p][t]) {
          lad.verdict[f][p][t] = Verdict::fail;
          lad.detail[f][p][t] = "fails fold " + std::to_string(f - 1);
          next[p][t] = 0;
          continue;
        }
        auto r = detail::check_a1_a2(m.form, p, m.beliefs[p][t], m.type_names[opp], opt[opp],
                                     good_choices, good_type, good_type,
                                     /*good_needs_optimal=*/false, "P1", "P2");
        bool pass = r.a1 && r.a2;
        next[p][t] = pass;
        lad.verdict[f][p][t] = pass ? Verdict::pass : Verdict::fail;
        lad.detail[f][p][t] = r.detail;
      }
    }
    if (lad.stable_at < 0 && f >= 2 && next == cum) lad.stable_at = f;
    cum = std::move(next);
  }
  return lad;
}

}  // namespace detail

// Runs the cumulative ladder for folds 1..N (fold 0 = caution is always
// included). Fold 1 is exactly supports_every_good_choice plus
// prior_belief_in_u; later folds restrict the accepted types to the previous
// fold's survivors and the good choices to the solver's deeper rounds.
inline FoldLadder n_fold_supported_and_prior(const IncompleteModel& m, int N) {
  if (N < 1) throw ContractError("n_fold_supported_and_prior: fold count must be >= 1");
  return detail::supported_prior_ladder(m, N, iterated_admissibility(reference_game(m)));
}

// Ladder run until two consecutive folds agree; from then on the verdicts
// provably repeat forever. A type failing caution is reported false.
inline CommonReport common_supported_and_prior(const IncompleteModel& m) {
  int bound =
      m.form.num_choices(0) + m.form.num_choices(1) + m.num_types(0) + m.num_types(1) + 2;
  FoldLadder lad =
      detail::supported_prior_ladder(m, bound, iterated_admissibility(reference_game(m)));
  return detail::summarize_ladder(std::move(lad), {m.num_types(0), m.num_types(1)});
}

// ---------------------------------------------------------------------------
// Common full belief

enum class CommonProperty { caution, rationality, supported_and_prior };

inline const char* to_string(CommonProperty p) {
  switch (p) {
    case CommonProperty::caution:
      return "caution";
    case CommonProperty::rationality:
      return "rationality";
    default:
      return "supported-and-prior";
  }
}

// Greatest set V of types satisfying the property and deeming possible only
// types in V. For supported_and_prior the fold ladder already is that
// construction, so its stabilized verdicts are returned directly.
inline std::array<std::vector<char>, 2> common_full_belief(const IncompleteModel& m,
                                                           CommonProperty prop) {
  if (prop == CommonProperty::supported_and_prior) return common_supported_and_prior(m).common;
  std::array<std::vector<char>, 2> in;
  for (int p = 0; p < kPlayers; ++p) {
    in[p].resize(m.num_types(p));
    for (int t = 0; t < m.num_types(p); ++t)
      in[p][t] = prop == CommonProperty::caution ? is_cautious_in(m, p, t)
                                                 : believes_rationality(m, p, t);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int p = 0; p < kPlayers; ++p)
      for (int t = 0; t < m.num_types(p); ++t) {
        if (!in[p][t]) continue;
        for (int tj : possible_types(m.beliefs[p][t]))
          if (!in[opponent(p)][tj]) {
            in[p][t] = 0;
            changed = true;
            break;
          }
      }
  }
  return in;
}

}  // namespace lexia
