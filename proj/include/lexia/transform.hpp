#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "lexia/belief.hpp"
#include "lexia/complete_model.hpp"
#include "lexia/errors.hpp"
#include "lexia/game.hpp"
#include "lexia/incomplete_model.hpp"
#include "lexia/lex_vector.hpp"

namespace lexia {

// Indifference classes of a type's preference over its own choices, most
// preferred first. Within a class all choices are lex-indifferent; across
// consecutive classes the preference is strict.
struct PreferencePartition {
  std::vector<std::vector<int>> classes;
};

inline PreferencePartition preference_partition(const CompleteModel& m, int player, int type) {
  const LexBelief& b = m.beliefs[player][type];
  const UtilityFn& u = m.game.utility[player];
  int n = m.game.form.num_choices(player);
  std::vector<LexVector> eu(n);
  for (int c = 0; c < n; ++c) eu[c] = expected_utility_vector(c, b, u);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int c) { return lex_compare(eu[a], eu[c]) == Ordering::greater; });
  PreferencePartition part;
  for (int i = 0; i < n; ++i) {
    if (i == 0 || lex_compare(eu[order[i - 1]], eu[order[i]]) != Ordering::equal)
      part.classes.push_back({});
    part.classes.back().push_back(order[i]);
  }
  return part;
}

namespace detail {

inline int class_index_of(const PreferencePartition& part, int choice) {
  for (std::size_t l = 0; l < part.classes.size(); ++l)
    if (std::find(part.classes[l].begin(), part.classes[l].end(), choice) !=
        part.classes[l].end())
      return static_cast<int>(l);
  throw InternalError("preference partition does not cover a choice");
}

}  // namespace detail

// One incomplete type per indifference class of each source type; groups[p][t]
// lists the output type indices split off from source type t, best class
// first.
struct SplitModel {
  IncompleteModel model;
  std::array<std::vector<std::vector<int>>, 2> groups;
};

inline bool check_observation_redundancy(
    const IncompleteModel& m, const std::array<std::vector<std::vector<int>>, 2>& groups) {
  for (int p = 0; p < kPlayers; ++p)
    for (const auto& group : groups[p])
      for (std::size_t i = 1; i < group.size(); ++i)
        if (!(m.beliefs[p][group[i]] == m.beliefs[p][group[0]])) return false;
  return true;
}

// Splits every type t into one type per indifference class: class 1 keeps the
// game utility, class l > 1 gets a utility built to make exactly its choices
// optimal against t's choice-marginal. Beliefs keep their level weights but
// each believed pair (c,t_j) is retargeted at the class c occupies in t_j's
// partition. The output provably keeps group beliefs equal and believes
// rationality everywhere; both are asserted.
inline SplitModel complete_to_incomplete(const CompleteModel& m) {
  SplitModel out;
  IncompleteModel& im = out.model;
  im.form = m.game.form;
  im.reference_u = m.game.utility;

  std::array<std::vector<PreferencePartition>, 2> parts;
  for (int p = 0; p < kPlayers; ++p) {
    parts[p].resize(m.num_types(p));
    out.groups[p].resize(m.num_types(p));
    for (int t = 0; t < m.num_types(p); ++t) {
      parts[p][t] = preference_partition(m, p, t);
      ChoiceMarginal mg =
          choice_marginal(m.beliefs[p][t], m.game.form.num_choices(opponent(p)));
      for (std::size_t l = 0; l < parts[p][t].classes.size(); ++l) {
        out.groups[p][t].push_back(im.num_types(p));
        im.type_names[p].push_back(m.type_names[p][t] + "#" + std::to_string(l + 1));
        im.utility[p].push_back(l == 0 ? m.game.utility[p]
                                       : construct_supporting_utility(
                                             im.form, p, parts[p][t].classes[l], mg));
      }
    }
  }

  for (int p = 0; p < kPlayers; ++p) {
    int opp = opponent(p);
    im.beliefs[p].resize(im.type_names[p].size());
    for (int t = 0; t < m.num_types(p); ++t) {
      LexBelief nb;
      for (const BeliefLevel& lvl : m.beliefs[p][t].levels) {
        BeliefLevel nl;
        for (const auto& [pair, w] : lvl.weight) {
          int r = detail::class_index_of(parts[opp][pair.type], pair.choice);
          nl.weight[{pair.choice, out.groups[opp][pair.type][r]}] = w;
        }
        nb.levels.push_back(std::move(nl));
      }
      for (int idx : out.groups[p][t]) im.beliefs[p][idx] = nb;
    }
  }

  if (!check_observation_redundancy(im, out.groups))
    throw InternalError("complete_to_incomplete: group beliefs diverged");
  for (int p = 0; p < kPlayers; ++p)
    for (int t = 0; t < im.num_types(p); ++t)
      if (!believes_rationality(im, p, t))
        throw InternalError("complete_to_incomplete: output type fails belief in rationality");
  return out;
}

// One complete type per belief-equivalence class, named after the class's
// lexicographically least member; class_of maps each source type to its
// merged type.
struct MergedModel {
  CompleteModel model;
  std::array<std::vector<int>, 2> class_of;
};

inline MergedModel incomplete_to_complete(const IncompleteModel& m) {
  MergedModel out;
  CompleteModel& cm = out.model;
  cm.game = reference_game(m);

  for (int p = 0; p < kPlayers; ++p) {
    out.class_of[p].assign(m.num_types(p), -1);
    std::vector<std::vector<int>> classes;
    for (int t = 0; t < m.num_types(p); ++t) {
      for (std::size_t k = 0; k < classes.size(); ++k)
        if (m.beliefs[p][classes[k][0]] == m.beliefs[p][t]) {
          classes[k].push_back(t);
          out.class_of[p][t] = static_cast<int>(k);
          break;
        }
      if (out.class_of[p][t] < 0) {
        out.class_of[p][t] = static_cast<int>(classes.size());
        classes.push_back({t});
      }
    }
    for (const auto& cls : classes) {
      std::string least = m.type_names[p][cls[0]];
      for (int t : cls) least = std::min(least, m.type_names[p][t]);
      cm.type_names[p].push_back(least);
    }
  }

  // One belief per class: retarget every pair at its type's class; pairs
  // landing on the same (choice, class) coalesce their weight.
  for (int p = 0; p < kPlayers; ++p) {
    int opp = opponent(p);
    cm.beliefs[p].resize(cm.type_names[p].size());
    std::vector<char> done(cm.type_names[p].size(), 0);
    for (int t = 0; t < m.num_types(p); ++t) {
      int k = out.class_of[p][t];
      if (done[k]) continue;
      done[k] = 1;
      LexBelief nb;
      for (const BeliefLevel& lvl : m.beliefs[p][t].levels) {
        BeliefLevel nl;
        for (const auto& [pair, w] : lvl.weight) {
          PairKey key{pair.choice, out.class_of[opp][pair.type]};
          auto [it, inserted] = nl.weight.try_emplace(key, w);
          if (!inserted) it->second += w;
        }
        nb.levels.push_back(std::move(nl));
      }
      cm.beliefs[p][k] = std::move(nb);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Model isomorphism: a player-preserving type bijection commuting with
// beliefs (and assigned utilities for incomplete models). Names are ignored.

namespace detail {

inline LexBelief relabel_types(const LexBelief& b, const std::vector<int>& type_map) {
  LexBelief out;
  for (const BeliefLevel& lvl : b.levels) {
    BeliefLevel nl;
    for (const auto& [pair, w] : lvl.weight) nl.weight[{pair.choice, type_map[pair.type]}] = w;
    out.levels.push_back(std::move(nl));
  }
  return out;
}

// Tries every player-preserving bijection; model sizes stay small enough
// that factorial search is fine.
template <typename PairCheck>
inline bool find_type_bijection(std::array<int, 2> n, PairCheck&& ok) {
  std::array<std::vector<int>, 2> perm;
  for (int p = 0; p < 2; ++p) {
    perm[p].resize(n[p]);
    std::iota(perm[p].begin(), perm[p].end(), 0);
  }
  do {
    std::sort(perm[1].begin(), perm[1].end());
    do {
      if (ok(perm)) return true;
    } while (std::next_permutation(perm[1].begin(), perm[1].end()));
  } while (std::next_permutation(perm[0].begin(), perm[0].end()));
  return false;
}

}  // namespace detail

inline bool isomorphic(const CompleteModel& a, const CompleteModel& b) {
  if (!(a.game.form == b.game.form)) return false;
  for (int p = 0; p < kPlayers; ++p) {
    if (!(a.game.utility[p] == b.game.utility[p])) return false;
    if (a.num_types(p) != b.num_types(p)) return false;
  }
  return detail::find_type_bijection(
      {a.num_types(0), a.num_types(1)}, [&](const std::array<std::vector<int>, 2>& perm) {
        for (int p = 0; p < kPlayers; ++p)
          for (int t = 0; t < a.num_types(p); ++t)
            if (!(detail::relabel_types(a.beliefs[p][t], perm[opponent(p)]) ==
                  b.beliefs[p][perm[p][t]]))
              return false;
        return true;
      });
}

inline bool isomorphic(const IncompleteModel& a, const IncompleteModel& b) {
  if (!(a.form == b.form)) return false;
  for (int p = 0; p < kPlayers; ++p) {
    if (!(a.reference_u[p] == b.reference_u[p])) return false;
    if (a.num_types(p) != b.num_types(p)) return false;
  }
  return detail::find_type_bijection(
      {a.num_types(0), a.num_types(1)}, [&](const std::array<std::vector<int>, 2>& perm) {
        for (int p = 0; p < kPlayers; ++p)
          for (int t = 0; t < a.num_types(p); ++t) {
            if (!(a.utility[p][t] == b.utility[p][perm[p][t]])) return false;
            if (!(detail::relabel_types(a.beliefs[p][t], perm[opponent(p)]) ==
                  b.beliefs[p][perm[p][t]]))
              return false;
          }
        return true;
      });
}

}  // namespace lexia
