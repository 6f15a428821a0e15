#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexia/errors.hpp"
#include "lexia/json_io.hpp"
#include "lexia/rational.hpp"

namespace lexia {

// Players are indexed 0 and 1 internally; files and reports use ids 1 and 2.
inline constexpr int kPlayers = 2;

inline int opponent(int player) { return 1 - player; }

// Choice sets of both players. Choices carry string labels; everything
// downstream works with their dense indices in file order.
struct GameForm {
  std::array<std::string, 2> player_names;
  std::array<std::vector<std::string>, 2> choices;

  int num_choices(int player) const { return static_cast<int>(choices[player].size()); }

  std::optional<int> choice_index(int player, std::string_view label) const {
    const auto& cs = choices[player];
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (cs[i] == label) return static_cast<int>(i);
    return std::nullopt;
  }

  const std::string& label(int player, int choice) const { return choices[player][choice]; }

  friend bool operator==(const GameForm& a, const GameForm& b) {
    return a.choices == b.choices;
  }
};

// One player's utility function, oriented from the owner's side:
// cells[own][opp]. For player 2 the own axis is C_2.
struct UtilityFn {
  std::vector<std::vector<Rational>> cells;

  const Rational& at(int own, int opp) const { return cells[own][opp]; }
  Rational& at(int own, int opp) { return cells[own][opp]; }

  static UtilityFn zeros(int own_n, int opp_n) {
    UtilityFn u;
    u.cells.assign(own_n, std::vector<Rational>(opp_n, Rational(0)));
    return u;
  }

  friend bool operator==(const UtilityFn& a, const UtilityFn& b) { return a.cells == b.cells; }
};

struct Game {
  GameForm form;
  std::array<UtilityFn, 2> utility;

  friend bool operator==(const Game& a, const Game& b) {
    return a.form == b.form && a.utility == b.utility;
  }
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline void check_label(const std::string& label, const std::string& ctx) {
  if (label.empty()) throw ParseError(ctx, "empty choice label");
  for (char c : label) {
    if (c == '(' || c == ')' || c == ',' || c == ' ' || c == '\t' || c == '\n')
      throw ParseError(ctx, "label \"" + label + "\" contains '(' ')' ',' or whitespace");
  }
}

}  // namespace detail

inline GameForm parse_game_form(const Json& players, const std::string& ctx) {
  if (!players.is_array() || players.size() != 2)
    throw ParseError(ctx, "\"players\" must be an array of exactly 2 players");
  GameForm form;
  for (int p = 0; p < kPlayers; ++p) {
    const Json& pj = players[p];
    std::string pctx = ctx + ": players[" + std::to_string(p) + "]";
    form.player_names[p] = jsonio::require_string(pj, "name", pctx);
    const Json& cj = jsonio::require_array(pj, "choices", pctx);
    if (cj.empty()) throw ParseError(pctx, "player needs at least one choice");
    for (const Json& c : cj) {
      if (!c.is_string()) throw ParseError(pctx, "choices must be strings");
      std::string label = c.get<std::string>();
      detail::check_label(label, pctx);
      if (form.choice_index(p, label))
        throw ParseError(pctx, "duplicate choice label \"" + label + "\"");
      form.choices[p].push_back(std::move(label));
    }
  }
  return form;
}

// A utility table for `owner` must contain exactly one "(own,opp)" cell per
// choice pair, with an exact rational value.
inline UtilityFn parse_utility_fn(const Json& table, const GameForm& form, int owner,
                                  const std::string& ctx) {
  if (!table.is_object()) throw ParseError(ctx, "utility table must be an object");
  int own_n = form.num_choices(owner);
  int opp_n = form.num_choices(opponent(owner));
  UtilityFn u = UtilityFn::zeros(own_n, opp_n);
  std::vector<std::vector<bool>> seen(own_n, std::vector<bool>(opp_n, false));
  for (auto it = table.begin(); it != table.end(); ++it) {
    auto [own_label, opp_label] = jsonio::split_pair_key(it.key(), ctx);
    auto own = form.choice_index(owner, own_label);
    auto opp = form.choice_index(opponent(owner), opp_label);
    if (!own || !opp)
      throw ParseError(ctx, "cell " + it.key() + " does not name a (own,opp) choice pair");
    if (seen[*own][*opp]) throw ParseError(ctx, "duplicate cell " + it.key());
    seen[*own][*opp] = true;
    if (!it.value().is_string())
      throw ParseError(ctx, "cell " + it.key() + " must hold a rational string");
    try {
      u.at(*own, *opp) = Rational::parse(it.value().get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(ctx, "cell " + it.key() + ": " + e.what());
    }
  }
  for (int a = 0; a < own_n; ++a)
    for (int b = 0; b < opp_n; ++b)
      if (!seen[a][b])
        throw ParseError(ctx, "missing cell (" + form.label(owner, a) + "," +
                                  form.label(opponent(owner), b) + ")");
  return u;
}

inline Game parse_game(const Json& j, const std::string& ctx) {
  Game g;
  g.form = parse_game_form(jsonio::require(j, "players", ctx), ctx);
  const Json& uj = jsonio::require_array(j, "utilities", ctx);
  if (uj.size() != 2) throw ParseError(ctx, "\"utilities\" must hold exactly 2 tables");
  for (int p = 0; p < kPlayers; ++p)
    g.utility[p] = parse_utility_fn(uj[p], g.form, p, ctx + ": utilities[" + std::to_string(p) + "]");
  return g;
}

inline Game load_game(const std::string& path) { return parse_game(load_json_file(path), path); }

// Label-based lookup; `player` is the 1-based file-facing id.
inline const Rational& utility(const Game& g, int player, std::string_view own,
                               std::string_view opp) {
  int p = player - 1;
  if (p < 0 || p >= kPlayers) throw ContractError("utility: player must be 1 or 2");
  auto a = g.form.choice_index(p, own);
  auto b = g.form.choice_index(opponent(p), opp);
  if (!a || !b) throw ContractError("utility: unknown choice label");
  return g.utility[p].at(*a, *b);
}

// ---------------------------------------------------------------------------
// Serialization

inline Json game_form_to_json(const GameForm& form) {
  Json players = Json::array();
  for (int p = 0; p < kPlayers; ++p) {
    players.push_back(Json{{"name", form.player_names[p].empty()
                                        ? "player" + std::to_string(p + 1)
                                        : form.player_names[p]},
                           {"choices", form.choices[p]}});
  }
  return players;
}

inline Json utility_fn_to_json(const UtilityFn& u, const GameForm& form, int owner) {
  Json table = Json::object();
  for (int a = 0; a < form.num_choices(owner); ++a)
    for (int b = 0; b < form.num_choices(opponent(owner)); ++b)
      table["(" + form.label(owner, a) + "," + form.label(opponent(owner), b) + ")"] =
          u.at(a, b).str();
  return table;
}

inline Json game_to_json(const Game& g) {
  return Json{{"players", game_form_to_json(g.form)},
              {"utilities", Json::array({utility_fn_to_json(g.utility[0], g.form, 0),
                                         utility_fn_to_json(g.utility[1], g.form, 1)})}};
}

}  // namespace lexia
