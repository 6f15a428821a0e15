#pragma once

// Shared plumbing for the two model kinds: belief levels as they appear in
// model files, plus the three-valued verdicts the checkers report.

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lexia/belief.hpp"
#include "lexia/game.hpp"
#include "lexia/json_io.hpp"

namespace lexia {

enum class Verdict { pass, fail, not_applicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    default:
      return "not-applicable";
  }
}

// verdict[f][p][t] for folds f = 0..max_fold; fold 0 is the base property
// (caution). Verdicts are cumulative: pass at fold f+1 implies pass at fold
// f. Types failing the base property read not_applicable at folds >= 1.
struct FoldLadder {
  int max_fold = 0;
  std::vector<std::array<std::vector<Verdict>, 2>> verdict;
  std::vector<std::array<std::vector<std::string>, 2>> detail;
  // First fold f >= 2 whose cumulative verdicts equal fold f-1's; every
  // later fold provably repeats them. -1 when max_fold was too small.
  int stable_at = -1;
};

// A ladder run to stabilization plus the resulting per-type verdicts for
// "expresses the property at every fold". Types failing the base property
// are false here, not not_applicable: they express nothing.
struct CommonReport {
  FoldLadder ladder;
  std::array<std::vector<char>, 2> common;
  std::array<std::vector<std::string>, 2> detail;
};

// Verdict plus a human-readable reason and, where the check quantifies
// existentially, the witnesses found (per good choice: choice, witness type).
struct AssumptionResult {
  bool holds = false;
  std::string detail;
  std::vector<std::pair<int, int>> witnesses;
};

namespace detail {

// The two halves shared by the model checkers. Both read b as player's
// belief over opponent (choice, type) pairs; opp_opt[t] lists the choices
// optimal for opponent type t under that type's own standard of optimality.
struct A1A2Result {
  bool a1 = true;
  bool a2 = true;
  std::string detail;                          // first failure, deterministically chosen
  std::vector<std::pair<int, int>> witnesses;  // per good choice: (choice, witness type)
};

// Existential half: every choice in good_choices is optimal for some
// deemed-possible type accepted by witness_ok.
inline A1A2Result check_support(const GameForm& form, int player, const LexBelief& b,
                                const std::vector<std::vector<int>>& opp_opt,
                                const std::vector<int>& good_choices,
                                const std::vector<char>& witness_ok, const char* tag) {
  const int opp = opponent(player);
  A1A2Result r;
  std::set<int> possible = possible_types(b);

  for (int c : good_choices) {
    int witness = -1;
    for (int tj : possible) {
      if (!witness_ok[tj]) continue;
      const auto& opt = opp_opt[tj];
      if (std::find(opt.begin(), opt.end(), c) != opt.end()) {
        witness = tj;
        break;
      }
    }
    if (witness < 0) {
      r.a1 = false;
      r.detail =
          std::string(tag) + ": no deemed-possible type has " + form.label(opp, c) + " optimal";
      r.witnesses.clear();
      break;
    }
    r.witnesses.push_back({c, witness});
  }
  return r;
}

// Likelihood half: deemed-possible pairs (c_j,t_j) with pair_good[t_j] (and,
// when good_needs_optimal, c_j optimal for t_j) must all sit at strictly
// earlier first levels than every deemed-possible pair lacking the property.
// Witnesses list the good pairs in belief order.
inline A1A2Result check_partition(const GameForm& form, int player, const LexBelief& b,
                                  const std::vector<std::string>& opp_type_names,
                                  const std::vector<std::vector<int>>& opp_opt,
                                  const std::vector<char>& pair_good, bool good_needs_optimal,
                                  const char* tag) {
  const int opp = opponent(player);
  A1A2Result r;
  // Worst good pair (last first-level) vs best bad pair (earliest).
  std::optional<std::pair<int, PairKey>> worst_good, best_bad;
  for (int k = 0; k < b.num_levels(); ++k)
    for (const auto& [pair, w] : b.levels[k].weight) {
      (void)w;
      if (first_possible_level(b, pair) != k) continue;
      bool good = pair_good[pair.type];
      if (good && good_needs_optimal) {
        const auto& opt = opp_opt[pair.type];
        good = std::find(opt.begin(), opt.end(), pair.choice) != opt.end();
      }
      if (good) {
        r.witnesses.push_back({pair.choice, pair.type});
        if (!worst_good || k > worst_good->first) worst_good = {k, pair};
      } else {
        if (!best_bad) best_bad = {k, pair};
      }
    }
  if (worst_good && best_bad && worst_good->first >= best_bad->first) {
    r.a2 = false;
    auto pair_text = [&](const PairKey& p) {
      return "(" + form.label(opp, p.choice) + "," + opp_type_names[p.type] + ")";
    };
    r.detail = std::string(tag) + ": good pair " + pair_text(worst_good->second) +
               " first at level " + std::to_string(worst_good->first + 1) +
               " does not precede bad pair " + pair_text(best_bad->second) +
               " first at level " + std::to_string(best_bad->first + 1);
    r.witnesses.clear();
  }
  return r;
}

inline A1A2Result check_a1_a2(const GameForm& form, int player, const LexBelief& b,
                              const std::vector<std::string>& opp_type_names,
                              const std::vector<std::vector<int>>& opp_opt,
                              const std::vector<int>& good_choices,
                              const std::vector<char>& witness_ok,
                              const std::vector<char>& pair_good,
                              bool good_needs_optimal = true, const char* tag1 = "A1",
                              const char* tag2 = "A2") {
  A1A2Result r = check_support(form, player, b, opp_opt, good_choices, witness_ok, tag1);
  A1A2Result q = check_partition(form, player, b, opp_type_names, opp_opt, pair_good,
                                 good_needs_optimal, tag2);
  r.a2 = q.a2;
  if (!q.detail.empty()) {
    if (r.detail.empty())
      r.detail = q.detail;
    else
      r.detail += "; " + q.detail;
  }
  return r;
}

// Shared tail of the common-verdict reports: read the stabilized fold and
// point each failing type at the first fold that broke.
inline CommonReport summarize_ladder(FoldLadder lad, const std::array<int, 2>& num_types) {
  if (lad.stable_at < 0)
    throw InternalError("common verdict: ladder failed to stabilize within its bound");
  CommonReport rep;
  int f = lad.stable_at;
  for (int p = 0; p < 2; ++p) {
    rep.common[p].resize(num_types[p]);
    rep.detail[p].resize(num_types[p]);
    for (int t = 0; t < num_types[p]; ++t) {
      Verdict v = lad.verdict[f][p][t];
      rep.common[p][t] = v == Verdict::pass;
      if (v == Verdict::not_applicable)
        rep.detail[p][t] = lad.detail[0][p][t];
      else if (v == Verdict::fail)
        for (int g = 1; g <= f; ++g)
          if (lad.verdict[g][p][t] == Verdict::fail) {
            rep.detail[p][t] = "fold " + std::to_string(g) + ": " + lad.detail[g][p][t];
            break;
          }
    }
  }
  rep.ladder = std::move(lad);
  return rep;
}

}  // namespace detail

// Belief levels in files: [ [ {"choice":"D","type":"t2","p":"1"}, ... ], ... ].
// Weights must be nonnegative rationals summing to exactly 1 per level;
// zero-weight entries are validated, then dropped. Duplicate pairs in one
// level are construction errors, not implicit sums.
inline LexBelief parse_lex_belief(const Json& levels, const GameForm& form, int opp,
                                  const std::vector<std::string>& opp_types,
                                  const std::string& ctx) {
  if (!levels.is_array() || levels.empty())
    throw ParseError(ctx, "belief must be a nonempty array of levels");
  LexBelief b;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const Json& lj = levels[k];
    std::string lctx = ctx + ": level " + std::to_string(k + 1);
    if (!lj.is_array()) throw ParseError(lctx, "a level must be an array of weighted pairs");
    BeliefLevel level;
    std::set<PairKey> seen;
    Rational sum(0);
    for (const Json& ej : lj) {
      std::string choice_label = jsonio::require_string(ej, "choice", lctx);
      std::string type_name = jsonio::require_string(ej, "type", lctx);
      auto choice = form.choice_index(opp, choice_label);
      if (!choice) throw ParseError(lctx, "unknown opponent choice \"" + choice_label + "\"");
      int type = -1;
      for (std::size_t i = 0; i < opp_types.size(); ++i)
        if (opp_types[i] == type_name) type = static_cast<int>(i);
      if (type < 0) throw ParseError(lctx, "unknown opponent type \"" + type_name + "\"");
      Rational p;
      try {
        p = Rational::parse(jsonio::require_string(ej, "p", lctx));
      } catch (const ParseError& e) {
        throw ParseError(lctx, std::string("weight for (") + choice_label + "," + type_name +
                                   "): " + e.what());
      }
      if (p.sign() < 0)
        throw ParseError(lctx, "negative weight for (" + choice_label + "," + type_name + ")");
      PairKey key{*choice, type};
      if (!seen.insert(key).second)
        throw ParseError(lctx, "duplicate pair (" + choice_label + "," + type_name + ")");
      sum += p;
      if (p.sign() > 0) level.weight[key] = p;
    }
    if (sum != Rational(1))
      throw ParseError(lctx, "level weights must sum to exactly 1, got " + sum.str());
    b.levels.push_back(std::move(level));
  }
  return b;
}

inline Json lex_belief_to_json(const LexBelief& b, const GameForm& form, int opp,
                               const std::vector<std::string>& opp_types) {
  Json levels = Json::array();
  for (const BeliefLevel& lvl : b.levels) {
    Json level = Json::array();
    for (const auto& [pair, w] : lvl.weight)
      level.push_back(Json{{"choice", form.label(opp, pair.choice)},
                           {"type", opp_types[pair.type]},
                           {"p", w.str()}});
    levels.push_back(std::move(level));
  }
  return levels;
}

// Compact rendering: each point level prints as its pair, mixed levels
// spell out the weights, e.g. ((D,t2),(1/2 (C,t2) + 1/2 (C,t3))).
inline std::string lex_belief_to_text(const LexBelief& b, const GameForm& form, int opp,
                                      const std::vector<std::string>& opp_types) {
  std::string out = "(";
  for (std::size_t k = 0; k < b.levels.size(); ++k) {
    if (k) out += ",";
    const auto& weights = b.levels[k].weight;
    auto pair_text = [&](const PairKey& p) {
      return "(" + form.label(opp, p.choice) + "," + opp_types[p.type] + ")";
    };
    if (weights.size() == 1) {
      out += pair_text(weights.begin()->first);
    } else {
      out += "(";
      bool first = true;
      for (const auto& [pair, w] : weights) {
        if (!first) out += " + ";
        first = false;
        out += w.str() + " " + pair_text(pair);
      }
      out += ")";
    }
  }
  out += ")";
  return out;
}

}  // namespace lexia
