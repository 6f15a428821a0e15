#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "lexia/synthesis.hpp"
#include "support/random_support.hpp"

using lexia::CompleteModel;
using lexia::Game;
using lexia::Rational;
using lexia::UtilityFn;

namespace {

std::string data_path(const char* name) {
  return std::string(LEXIA_DATA_DIR) + "/" + name;
}

Game fixture_game() {
  return lexia::load_complete_model(data_path("ex32.complete.json")).game;
}

Game make_game(std::vector<std::vector<int>> u1, std::vector<std::vector<int>> u2) {
  Game g;
  g.form.player_names = {"player1", "player2"};
  int n1 = static_cast<int>(u1.size());
  int n2 = static_cast<int>(u1[0].size());
  for (int c = 0; c < n1; ++c) g.form.choices[0].push_back(std::string(1, char('a' + c)));
  for (int c = 0; c < n2; ++c) g.form.choices[1].push_back(std::string(1, char('x' + c)));
  g.utility[0] = UtilityFn::zeros(n1, n2);
  g.utility[1] = UtilityFn::zeros(n2, n1);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) g.utility[0].at(a, b) = Rational(u1[a][b]);
  for (int a = 0; a < n2; ++a)
    for (int b = 0; b < n1; ++b) g.utility[1].at(a, b) = Rational(u2[a][b]);
  return g;
}

int target_choice(const CompleteModel& m, int player, int type) {
  const std::string& name = m.type_names[player][type];
  auto idx = m.game.form.choice_index(player, name.substr(2));
  REQUIRE(idx.has_value());
  return *idx;
}

}  // namespace

TEST_CASE("synthesis on the fixture game mirrors the handwritten model") {
  Game g = fixture_game();
  CompleteModel m = lexia::synthesize_car_model(g);

  CHECK(m.type_names[0] == std::vector<std::string>{"t:A"});
  CHECK(m.type_names[1] == std::vector<std::string>{"t:D"});

  // Top level: point mass on the surviving pair; then the caution rectangle
  // and one point-mass level per column.
  const lexia::LexBelief& b1 = m.beliefs[0][0];
  REQUIRE(b1.num_levels() == 4);
  CHECK(b1.levels[0].at({1, 0}) == Rational(1));
  CHECK(b1.levels[1].at({0, 0}) == Rational(1, 2));
  CHECK(b1.levels[1].at({1, 0}) == Rational(1, 2));
  CHECK(b1.levels[2].at({0, 0}) == Rational(1));
  CHECK(b1.levels[3].at({1, 0}) == Rational(1));
  CHECK(m.beliefs[1][0].levels[0].at({0, 0}) == Rational(1));

  CHECK(lexia::optimal_choices_co(m, 0, 0) == std::vector<int>{0});
  CHECK(lexia::optimal_choices_co(m, 1, 0) == std::vector<int>{1});

  auto rep = lexia::common_assumption(m);
  CHECK(rep.common[0] == std::vector<char>{1});
  CHECK(rep.common[1] == std::vector<char>{1});

  // Verdict-equivalent to the handwritten two-type fixture model.
  CompleteModel fix = lexia::load_complete_model(data_path("ex32.complete.json"));
  auto fix_rep = lexia::common_assumption(fix);
  CHECK(fix_rep.common == rep.common);
  CHECK(lexia::optimal_choices_co(fix, 0, 0) == lexia::optimal_choices_co(m, 0, 0));
  CHECK(lexia::optimal_choices_co(fix, 1, 0) == lexia::optimal_choices_co(m, 1, 0));
}

TEST_CASE("synthesis covers every choice of an undominated game") {
  Game g = make_game({{1, -1}, {-1, 1}}, {{-1, 1}, {1, -1}});
  CompleteModel m = lexia::synthesize_car_model(g);
  REQUIRE(m.num_types(0) == 2);
  REQUIRE(m.num_types(1) == 2);
  auto rep = lexia::common_assumption(m);
  for (int p = 0; p < 2; ++p)
    for (int t = 0; t < 2; ++t) {
      CHECK(rep.common[p][t]);
      CHECK(lexia::optimal_choices_co(m, p, t) == std::vector<int>{target_choice(m, p, t)});
      CHECK(m.beliefs[p][t].num_levels() == 4);
    }
}

TEST_CASE("synthesis on a two-round game leaves the middle witness behind") {
  Game g = make_game({{3, 2, 2}, {2, 2, 1}, {1, 0, 4}}, {{2, 1, 0}, {2, 2, 1}, {0, 1, 1}});

  lexia::IARounds ia = lexia::iterated_admissibility(g);
  REQUIRE(ia.rounds.size() == 3);
  CHECK(ia.rounds[1] == lexia::ChoiceSets{{{0, 2}, {1}}});
  CHECK(ia.rounds[2] == lexia::ChoiceSets{{{0}, {1}}});

  CompleteModel m = lexia::synthesize_car_model(g);
  CHECK(m.type_names[0] == std::vector<std::string>{"t:a", "t:c"});
  CHECK(m.type_names[1] == std::vector<std::string>{"t:y"});

  // t:a leans only on the survivor; t:y needs a band level for the choice
  // that dies in round two; t:c rationalizes over the full board.
  CHECK(m.beliefs[0][0].num_levels() == 5);
  CHECK(m.beliefs[0][1].num_levels() == 5);
  CHECK(m.beliefs[1][0].num_levels() == 6);
  CHECK(m.beliefs[1][0].levels[0].at({0, 0}) == Rational(1));
  CHECK(m.beliefs[1][0].levels[1].at({2, 1}) == Rational(1));

  CHECK(lexia::optimal_choices_co(m, 0, 0) == std::vector<int>{0});
  CHECK(lexia::optimal_choices_co(m, 0, 1) == std::vector<int>{2});
  CHECK(lexia::optimal_choices_co(m, 1, 0) == std::vector<int>{1});

  auto rep = lexia::common_assumption(m);
  CHECK(rep.common[0] == std::vector<char>{1, 0});
  CHECK(rep.common[1] == std::vector<char>{1});
  // The witness type is cautious and holds fold 0, but its top level mixes
  // pairs that fold 1 classifies both ways.
  CHECK(rep.ladder.verdict[0][0][1] == lexia::Verdict::pass);
  CHECK(rep.ladder.verdict[1][0][1] == lexia::Verdict::fail);
}

TEST_CASE("synthesis of a one-cell game is a single trivially passing type") {
  Game g = make_game({{5}}, {{7}});
  CompleteModel m = lexia::synthesize_car_model(g);
  REQUIRE(m.num_types(0) == 1);
  REQUIRE(m.num_types(1) == 1);
  CHECK(m.beliefs[0][0].num_levels() == 3);
  auto rep = lexia::common_assumption(m);
  CHECK(rep.common[0][0]);
  CHECK(rep.common[1][0]);
  CHECK(lexia::optimal_choices_co(m, 0, 0) == std::vector<int>{0});
}

TEST_CASE("payoff twins stay optimal together") {
  Game g = make_game({{1, 0}, {1, 0}, {0, 1}}, {{0, 0}, {0, 0}});
  CompleteModel m = lexia::synthesize_car_model(g);
  REQUIRE(m.num_types(0) == 3);
  REQUIRE(m.num_types(1) == 2);
  CHECK(lexia::optimal_choices_co(m, 0, 0) == std::vector<int>{0, 1});
  CHECK(lexia::optimal_choices_co(m, 0, 1) == std::vector<int>{0, 1});
  CHECK(lexia::optimal_choices_co(m, 0, 2) == std::vector<int>{2});
  CHECK(lexia::optimal_choices_co(m, 1, 0) == std::vector<int>{0, 1});
  // Twin carriers split the believed weight of their shared choice.
  const lexia::LexBelief& b = m.beliefs[1][0];
  CHECK(b.levels[0].at({0, 0}) == b.levels[0].at({0, 1}));
  auto rep = lexia::common_assumption(m);
  for (int p = 0; p < 2; ++p)
    for (int t = 0; t < m.num_types(p); ++t) CHECK(rep.common[p][t]);
}

TEST_CASE("a target equal to an exact row mixture keeps the mixture optimal") {
  // Row b is the even mix of rows a and c, so no level can put b strictly
  // above both: whatever drops a raises c. The type for b carries all three
  // rows as optima, and they ride along with it in the opponent's beliefs.
  Game g = make_game({{0, 2}, {1, 1}, {2, 0}}, {{0, 0, 0}, {0, 0, 0}});
  CompleteModel m = lexia::synthesize_car_model(g);
  REQUIRE(m.num_types(0) == 3);
  REQUIRE(m.num_types(1) == 2);
  CHECK(lexia::optimal_choices_co(m, 0, 0) == std::vector<int>{0});
  CHECK(lexia::optimal_choices_co(m, 0, 1) == std::vector<int>{0, 1, 2});
  CHECK(lexia::optimal_choices_co(m, 0, 2) == std::vector<int>{2});
  // No point-mass tails for t:b; a tail would hand a or c the lead.
  CHECK(m.beliefs[0][1].num_levels() == 2);
  CHECK(m.beliefs[0][0].num_levels() == 4);
  const lexia::BeliefLevel& top = m.beliefs[1][0].levels[0];
  CHECK(top.weight.count({0, 1}) == 1);
  CHECK(top.weight.count({1, 1}) == 1);
  CHECK(top.weight.count({2, 1}) == 1);
  auto rep = lexia::common_assumption(m);
  for (int p = 0; p < 2; ++p)
    for (int t = 0; t < m.num_types(p); ++t) CHECK(rep.common[p][t]);
}

TEST_CASE("synthesized models validate on random games") {
  auto rng = testsupport::make_rng(0x51);
  for (int trial = 0; trial < 60; ++trial) {
    Game g = testsupport::random_game(rng, 2, 4);
    CompleteModel m = lexia::synthesize_car_model(g);  // self-validating
    lexia::IARounds ia = lexia::iterated_admissibility(g);
    auto rep = lexia::common_assumption(m);
    for (int p = 0; p < 2; ++p) {
      std::set<int> car_optimal;
      for (int t = 0; t < m.num_types(p); ++t) {
        REQUIRE(lexia::is_cautious_co(m, p, t));
        auto opt = lexia::optimal_choices_co(m, p, t);
        REQUIRE(std::find(opt.begin(), opt.end(), target_choice(m, p, t)) != opt.end());
        if (rep.common[p][t]) car_optimal.insert(opt.begin(), opt.end());
      }
      const auto& alive = ia.survivors()[p];
      REQUIRE(car_optimal == std::set<int>(alive.begin(), alive.end()));
    }
  }
}

TEST_CASE("synthesized models serialize and parse unchanged") {
  CompleteModel m = lexia::synthesize_car_model(fixture_game());
  lexia::Json j = lexia::complete_model_to_json(m);
  CompleteModel back = lexia::parse_complete_model(j, "round-trip");
  CHECK(back.type_names == m.type_names);
  CHECK(back.beliefs == m.beliefs);
}
