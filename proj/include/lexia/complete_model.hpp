#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexia/admissibility.hpp"
#include "lexia/belief.hpp"
#include "lexia/errors.hpp"
#include "lexia/game.hpp"
#include "lexia/lex_vector.hpp"
#include "lexia/model_common.hpp"

namespace lexia {

// Complete-information epistemic model: each type holds a lexicographic
// belief over the opponent's (choice, type) pairs; payoffs are the game's.
struct CompleteModel {
  Game game;
  std::array<std::vector<std::string>, 2> type_names;
  std::array<std::vector<LexBelief>, 2> beliefs;  // parallel to type_names

  int num_types(int player) const { return static_cast<int>(type_names[player].size()); }

  std::optional<int> type_index(int player, std::string_view name) const {
    const auto& names = type_names[player];
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    return std::nullopt;
  }
};

// ---------------------------------------------------------------------------
// Parsing / serialization

// File shape: { "game": <inline game or path string>, "types": [ {"player":
// 1|2, "name": ..., "belief": [levels]} ] }. A game path is resolved
// against base_dir.
inline CompleteModel parse_complete_model(const Json& j, const std::string& ctx,
                                          const std::string& base_dir = ".") {
  CompleteModel m;
  const Json& gj = jsonio::require(j, "game", ctx);
  if (gj.is_string()) {
    std::string path = gj.get<std::string>();
    if (!path.empty() && path[0] != '/') path = base_dir + "/" + path;
    m.game = load_game(path);
  } else {
    m.game = parse_game(gj, ctx + ": game");
  }

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
  m.beliefs[0].resize(m.type_names[0].size());
  m.beliefs[1].resize(m.type_names[1].size());
  for (auto [p, tj] : order) {
    int idx = cursor[p]++;
    std::string tctx = ctx + ": type " + m.type_names[p][idx];
    m.beliefs[p][idx] = parse_lex_belief(jsonio::require(*tj, "belief", tctx), m.game.form,
                                         opponent(p), m.type_names[opponent(p)], tctx);
  }
  return m;
}

inline CompleteModel load_complete_model(const std::string& path) {
  std::string dir = ".";
  if (auto slash = path.find_last_of('/'); slash != std::string::npos)
    dir = path.substr(0, slash);
  return parse_complete_model(load_json_file(path), path, dir);
}

inline Json complete_model_to_json(const CompleteModel& m) {
  Json types = Json::array();
  for (int p = 0; p < kPlayers; ++p)
    for (int t = 0; t < m.num_types(p); ++t)
      types.push_back(
          Json{{"player", p + 1},
               {"name", m.type_names[p][t]},
               {"belief", lex_belief_to_json(m.beliefs[p][t], m.game.form, opponent(p),
                                             m.type_names[opponent(p)])}});
  return Json{{"game", game_to_json(m.game)}, {"types", std::move(types)}};
}

// ---------------------------------------------------------------------------
// Per-type predicates

inline std::vector<int> optimal_choices_co(const CompleteModel& m, int player, int type) {
  const LexBelief& b = m.beliefs[player][type];
  const UtilityFn& u = m.game.utility[player];
  int n = m.game.form.num_choices(player);
  std::vector<LexVector> eu(n);
  for (int c = 0; c < n; ++c) eu[c] = expected_utility_vector(c, b, u);
  std::vector<int> out;
  for (int c = 0; c < n; ++c) {
    bool beaten = false;
    for (int a = 0; a < n && !beaten; ++a)
      if (lex_compare(eu[a], eu[c]) == Ordering::greater) beaten = true;
    if (!beaten) out.push_back(c);
  }
  return out;
}

inline bool is_cautious_co(const CompleteModel& m, int player, int type) {
  const LexBelief& b = m.beliefs[player][type];
  int opp_choices = m.game.form.num_choices(opponent(player));
  for (int tj : possible_types(b))
    for (int c = 0; c < opp_choices; ++c)
      if (!deems_possible(b, {c, tj})) return false;
  return true;
}

// Greatest set V of types with: cautious and deeming possible only types in
// V. Membership is "expresses common full belief in caution".
inline std::array<std::vector<char>, 2> common_caution_co(const CompleteModel& m) {
  std::array<std::vector<char>, 2> in;
  for (int p = 0; p < kPlayers; ++p) {
    in[p].resize(m.num_types(p));
    for (int t = 0; t < m.num_types(p); ++t) in[p][t] = is_cautious_co(m, p, t);
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

// ---------------------------------------------------------------------------
// Assumption of rationality

// Def-style one-shot check: good choices and good types are supplied by the
// caller. Witness types for A1 are unrestricted per the definition; A2
// classifies pairs by goodtypes membership plus optimality.
inline AssumptionResult assumes_rationality(const CompleteModel& m, int player, int type,
                                            const std::vector<int>& good_choices,
                                            const std::vector<int>& good_types) {
  if (!is_cautious_co(m, player, type))
    throw ContractError("assumes_rationality: type " + m.type_names[player][type] +
                        " is not cautious");
  int opp = opponent(player);
  std::vector<std::vector<int>> opp_opt(m.num_types(opp));
  for (int t = 0; t < m.num_types(opp); ++t) opp_opt[t] = optimal_choices_co(m, opp, t);
  std::vector<char> witness_ok(m.num_types(opp), 1);
  std::vector<char> pair_good(m.num_types(opp), 0);
  for (int t : good_types) pair_good[t] = 1;
  auto r = detail::check_a1_a2(m.game.form, player, m.beliefs[player][type],
                               m.type_names[opp], opp_opt, good_choices, witness_ok, pair_good);
  return {r.a1 && r.a2, r.detail, std::move(r.witnesses)};
}

// ---------------------------------------------------------------------------
// Fold ladder

namespace detail {

inline FoldLadder fold_ladder(const CompleteModel& m, int max_fold, const IARounds& ia) {
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
      cautious[p][t] = is_cautious_co(m, p, t);
      opt[p][t] = optimal_choices_co(m, p, t);
      lad.verdict[0][p][t] = cautious[p][t] ? Verdict::pass : Verdict::fail;
      if (!cautious[p][t]) {
        // Name the first hole in the possibility grid.
        std::string where;
        const LexBelief& b = m.beliefs[p][t];
        for (int tj : possible_types(b)) {
          for (int c = 0; c < m.game.form.num_choices(opponent(p)); ++c)
            if (!deems_possible(b, {c, tj})) {
              where = "(" + m.game.form.label(opponent(p), c) + "," +
                      m.type_names[opponent(p)][tj] + ") never deemed possible";
              break;
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
      std::vector<char> pair_good(m.num_types(opp), 0);
      for (int t = 0; t < m.num_types(opp); ++t)
        pair_good[t] = cautious[opp][t] && cum[opp][t];
      // Def 2.2's A1 witness is any deemed-possible type; from fold 2 on the
      // witness must itself carry the ladder so far.
      std::vector<char> witness_ok =
          f == 1 ? std::vector<char>(m.num_types(opp), 1) : pair_good;

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
        auto r = detail::check_a1_a2(m.game.form, p, m.beliefs[p][t], m.type_names[opp],
                                     opt[opp], good_choices, witness_ok, pair_good);
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
// included). N must be at least 1.
inline FoldLadder n_fold_assumption(const CompleteModel& m, int N) {
  if (N < 1) throw ContractError("n_fold_assumption: fold count must be >= 1");
  return detail::fold_ladder(m, N, iterated_admissibility(m.game));
}

// Decides "expresses common assumption of rationality" for every type by
// running the ladder until two consecutive folds agree; from then on the
// verdicts provably repeat forever. A type failing caution is reported
// false, not not_applicable: it expresses nothing.
inline CommonReport common_assumption(const CompleteModel& m) {
  int bound = m.game.form.num_choices(0) + m.game.form.num_choices(1) + m.num_types(0) +
              m.num_types(1) + 2;
  FoldLadder lad = detail::fold_ladder(m, bound, iterated_admissibility(m.game));
  return detail::summarize_ladder(std::move(lad), {m.num_types(0), m.num_types(1)});
}

}  // namespace lexia
