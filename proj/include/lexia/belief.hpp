#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "lexia/errors.hpp"
#include "lexia/game.hpp"
#include "lexia/lex_vector.hpp"
#include "lexia/rational.hpp"

namespace lexia {

// An opponent (choice, type) pair, both components as dense indices into
// the owning model's label tables.
struct PairKey {
  int choice = 0;
  int type = 0;
  auto operator<=>(const PairKey&) const = default;
};

// One probability distribution over opponent (choice, type) pairs, stored
// sparsely: a missing key means weight zero, stored weights are positive
// and sum to exactly 1.
struct BeliefLevel {
  std::map<PairKey, Rational> weight;

  Rational at(const PairKey& p) const {
    auto it = weight.find(p);
    return it == weight.end() ? Rational(0) : it->second;
  }

  friend bool operator==(const BeliefLevel&, const BeliefLevel&) = default;
};

// Lexicographic belief: level 0 dominates, each later level only breaks
// ties left by the ones before it.
struct LexBelief {
  std::vector<BeliefLevel> levels;

  int num_levels() const { return static_cast<int>(levels.size()); }

  friend bool operator==(const LexBelief&, const LexBelief&) = default;
};

// Representation invariants for programmatic construction. Parsers enforce
// the same rules with file-facing messages.
inline void check_belief(const LexBelief& b) {
  if (b.levels.empty()) throw ContractError("belief needs at least one level");
  for (const BeliefLevel& lvl : b.levels) {
    Rational sum(0);
    for (const auto& [pair, w] : lvl.weight) {
      (void)pair;
      if (w.sign() <= 0) throw ContractError("belief weights must be positive");
      sum += w;
    }
    if (sum != Rational(1))
      throw ContractError("belief level must sum to exactly 1, got " + sum.str());
  }
}

inline bool deems_possible(const LexBelief& b, const PairKey& p) {
  for (const BeliefLevel& lvl : b.levels)
    if (lvl.weight.count(p)) return true;
  return false;
}

// 0-based index of the first level giving the pair positive weight.
inline std::optional<int> first_possible_level(const LexBelief& b, const PairKey& p) {
  for (int k = 0; k < b.num_levels(); ++k)
    if (b.levels[k].weight.count(p)) return k;
  return std::nullopt;
}

inline std::set<int> possible_types(const LexBelief& b) {
  std::set<int> out;
  for (const BeliefLevel& lvl : b.levels)
    for (const auto& [pair, w] : lvl.weight) {
      (void)w;
      out.insert(pair.type);
    }
  return out;
}

inline std::set<int> possible_choices(const LexBelief& b) {
  std::set<int> out;
  for (const BeliefLevel& lvl : b.levels)
    for (const auto& [pair, w] : lvl.weight) {
      (void)w;
      out.insert(pair.choice);
    }
  return out;
}

// p1 is infinitely more likely than p2 iff both sit at zero through some
// prefix of levels and then p1 turns positive while p2 is still zero.
// Equivalently: p1 is possible and its first positive level strictly
// precedes p2's (never possible counting as +infinity).
inline bool infinitely_more_likely(const LexBelief& b, const PairKey& p1, const PairKey& p2) {
  auto k1 = first_possible_level(b, p1);
  if (!k1) return false;
  auto k2 = first_possible_level(b, p2);
  return !k2 || *k1 < *k2;
}

// Level-wise expected utility of playing own_choice under b, with v oriented
// from the owner's side. The type component is marginalized out.
inline LexVector expected_utility_vector(int own_choice, const LexBelief& b, const UtilityFn& v) {
  LexVector out;
  out.reserve(b.levels.size());
  for (const BeliefLevel& lvl : b.levels) {
    Rational acc(0);
    for (const auto& [pair, w] : lvl.weight) acc += w * v.at(own_choice, pair.choice);
    out.push_back(acc);
  }
  return out;
}

// Levels of distributions over the opponent's choices alone, for contexts
// where types are out of the picture. Dense: one weight per opponent choice.
using MarginalLevel = std::vector<Rational>;
using ChoiceMarginal = std::vector<MarginalLevel>;

inline void check_marginal(const ChoiceMarginal& mg, int num_opp_choices) {
  if (mg.empty()) throw ContractError("marginal belief needs at least one level");
  for (const MarginalLevel& lvl : mg) {
    if (static_cast<int>(lvl.size()) != num_opp_choices)
      throw ContractError("marginal level must weight every opponent choice");
    Rational sum(0);
    for (const Rational& w : lvl) {
      if (w.sign() < 0) throw ContractError("marginal weights must be nonnegative");
      sum += w;
    }
    if (sum != Rational(1))
      throw ContractError("marginal level must sum to exactly 1, got " + sum.str());
  }
}

// Levelwise marginal of a belief over the opponent's choices, types summed
// out.
inline ChoiceMarginal choice_marginal(const LexBelief& b, int num_opp_choices) {
  ChoiceMarginal out;
  out.reserve(b.levels.size());
  for (const BeliefLevel& lvl : b.levels) {
    MarginalLevel mg(num_opp_choices, Rational(0));
    for (const auto& [pair, w] : lvl.weight) mg[pair.choice] += w;
    out.push_back(std::move(mg));
  }
  return out;
}

inline LexVector marginal_eu_vector(int own_choice, const ChoiceMarginal& mg, const UtilityFn& v) {
  LexVector out;
  out.reserve(mg.size());
  for (const MarginalLevel& lvl : mg) {
    Rational acc(0);
    for (std::size_t d = 0; d < lvl.size(); ++d) acc += lvl[d] * v.at(own_choice, static_cast<int>(d));
    out.push_back(acc);
  }
  return out;
}

}  // namespace lexia
