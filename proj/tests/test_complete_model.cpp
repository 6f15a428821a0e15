#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "lexia/complete_model.hpp"
#include "support/random_support.hpp"

using lexia::CompleteModel;
using lexia::Json;
using lexia::LexBelief;
using lexia::ParseError;
using lexia::Rational;
using lexia::Verdict;

namespace {

std::string data_path(const char* name) {
  return std::string(LEXIA_DATA_DIR) + "/" + name;
}

CompleteModel fixture() {
  return lexia::load_complete_model(data_path("ex32.complete.json"));
}

Json fixture_json() {
  return lexia::load_json_file(data_path("ex32.complete.json"));
}

}  // namespace

TEST_CASE("fixture model loads with the printed beliefs") {
  CompleteModel m = fixture();
  REQUIRE(m.num_types(0) == 1);
  REQUIRE(m.num_types(1) == 1);
  CHECK(m.type_names[0][0] == "t1");
  CHECK(m.type_names[1][0] == "t2");
  const LexBelief& b1 = m.beliefs[0][0];
  REQUIRE(b1.num_levels() == 2);
  // ((D,t2),(C,t2)): D first, C second, both point masses.
  CHECK(b1.levels[0].at({1, 0}) == Rational(1));
  CHECK(b1.levels[1].at({0, 0}) == Rational(1));
  CHECK(lexia::lex_belief_to_text(b1, m.game.form, 1, m.type_names[1]) == "((D,t2),(C,t2))");
}

TEST_CASE("optimal choices on the fixture") {
  CompleteModel m = fixture();
  CHECK(lexia::optimal_choices_co(m, 0, 0) == std::vector<int>{0});  // A
  CHECK(lexia::optimal_choices_co(m, 1, 0) == std::vector<int>{1});  // D
}

TEST_CASE("constant utility makes every choice optimal") {
  CompleteModel m = fixture();
  m.game.utility[0] = lexia::UtilityFn::zeros(2, 2);
  CHECK(lexia::optimal_choices_co(m, 0, 0) == std::vector<int>{0, 1});
}

TEST_CASE("caution on the fixture and a mutilated copy") {
  CompleteModel m = fixture();
  CHECK(lexia::is_cautious_co(m, 0, 0));
  CHECK(lexia::is_cautious_co(m, 1, 0));
  auto cc = lexia::common_caution_co(m);
  CHECK(cc[0] == std::vector<char>{1});
  CHECK(cc[1] == std::vector<char>{1});

  // Drop t1's second level: C never appears, caution gone.
  m.beliefs[0][0].levels.pop_back();
  CHECK_FALSE(lexia::is_cautious_co(m, 0, 0));
}

TEST_CASE("common caution drains chains of exposure to a careless type") {
  // t2bad sees only (A,t1). t1 is cautious but deems t2bad possible; t2 is
  // cautious but deems t1 possible. Everyone falls.
  Json j = fixture_json();
  j["types"][0]["belief"] = Json::array({
      Json::array({Json{{"choice", "D"}, {"type", "t2"}, {"p", "1"}}}),
      Json::array({Json{{"choice", "C"}, {"type", "t2"}, {"p", "1"}}}),
      Json::array({Json{{"choice", "D"}, {"type", "t2bad"}, {"p", "1"}}}),
      Json::array({Json{{"choice", "C"}, {"type", "t2bad"}, {"p", "1"}}}),
  });
  j["types"].push_back(Json{
      {"player", 2},
      {"name", "t2bad"},
      {"belief", Json::array({Json::array({Json{{"choice", "A"}, {"type", "t1"}, {"p", "1"}}})})}});
  CompleteModel m = lexia::parse_complete_model(j, "inline");
  CHECK(lexia::is_cautious_co(m, 0, 0));
  CHECK(lexia::is_cautious_co(m, 1, 0));
  CHECK_FALSE(lexia::is_cautious_co(m, 1, 1));
  auto cc = lexia::common_caution_co(m);
  CHECK(cc[0] == std::vector<char>{0});
  CHECK(cc[1] == std::vector<char>{0, 0});
}

TEST_CASE("assumption of rationality on the fixture") {
  CompleteModel m = fixture();
  // Good choices supplied as the solver would: admissible sets {A} and {D}.
  auto r1 = lexia::assumes_rationality(m, 0, 0, {1}, {0});
  CHECK(r1.holds);
  REQUIRE(r1.witnesses.size() == 1);
  CHECK(r1.witnesses[0] == std::pair<int, int>{1, 0});  // (D, t2)
  auto r2 = lexia::assumes_rationality(m, 1, 0, {0}, {0});
  CHECK(r2.holds);

  // Swapping t1's levels puts the bad pair (C,t2) in front of (D,t2).
  CompleteModel swapped = fixture();
  std::swap(swapped.beliefs[0][0].levels[0], swapped.beliefs[0][0].levels[1]);
  auto r3 = lexia::assumes_rationality(swapped, 0, 0, {1}, {0});
  CHECK_FALSE(r3.holds);
  CHECK(r3.detail ==
        "A2: good pair (D,t2) first at level 2 does not precede bad pair (C,t2) first at level 1");

  // Non-cautious callers are a precondition violation.
  CompleteModel bare = fixture();
  bare.beliefs[0][0].levels.pop_back();
  CHECK_THROWS_AS(lexia::assumes_rationality(bare, 0, 0, {1}, {0}), lexia::ContractError);
}

TEST_CASE("fold ladder on the fixture passes everything") {
  CompleteModel m = fixture();
  auto lad = lexia::n_fold_assumption(m, 5);
  REQUIRE(lad.max_fold == 5);
  for (int f = 0; f <= 5; ++f) {
    CHECK(lad.verdict[f][0][0] == Verdict::pass);
    CHECK(lad.verdict[f][1][0] == Verdict::pass);
  }
  CHECK(lad.stable_at == 2);

  auto rep = lexia::common_assumption(m);
  CHECK(rep.common[0] == std::vector<char>{1});
  CHECK(rep.common[1] == std::vector<char>{1});
}

TEST_CASE("reversing t2's belief breaks fold one and the failure propagates") {
  Json j = fixture_json();
  j["types"][1]["belief"] = Json::array({
      Json::array({Json{{"choice", "B"}, {"type", "t1"}, {"p", "1"}}}),
      Json::array({Json{{"choice", "A"}, {"type", "t1"}, {"p", "1"}}}),
  });
  CompleteModel m = lexia::parse_complete_model(j, "inline");
  auto lad = lexia::n_fold_assumption(m, 3);

  // t2 is cautious but orders the bad pair (B,t1) ahead of the good (A,t1).
  CHECK(lad.verdict[0][1][0] == Verdict::pass);
  CHECK(lad.verdict[1][1][0] == Verdict::fail);
  CHECK(lad.detail[1][1][0] ==
        "A2: good pair (A,t1) first at level 2 does not precede bad pair (B,t1) first at level 1");
  // t1 still passes fold 1 (its own belief orders (D,t2) first and t2 stays
  // cautious with D optimal), but fold 2 needs a witness for D that itself
  // passed fold 1, and there is none.
  CHECK(lad.verdict[1][0][0] == Verdict::pass);
  CHECK(lad.verdict[2][0][0] == Verdict::fail);
  CHECK(lad.detail[2][0][0] == "A1: no deemed-possible type has D optimal");
  CHECK(lad.verdict[2][1][0] == Verdict::fail);
  CHECK(lad.verdict[3][0][0] == Verdict::fail);
  CHECK(lad.stable_at == 3);

  auto rep = lexia::common_assumption(m);
  CHECK(rep.common[0] == std::vector<char>{0});
  CHECK(rep.common[1] == std::vector<char>{0});
  CHECK(rep.detail[1][0].substr(0, 7) == "fold 1:");
}

TEST_CASE("non-cautious types read not-applicable through the ladder") {
  Json j = fixture_json();
  j["types"][0]["belief"] = Json::array({
      Json::array({Json{{"choice", "D"}, {"type", "t2"}, {"p", "1"}}}),
  });
  CompleteModel m = lexia::parse_complete_model(j, "inline");
  auto lad = lexia::n_fold_assumption(m, 2);
  CHECK(lad.verdict[0][0][0] == Verdict::fail);
  CHECK(lad.detail[0][0][0] == "caution: (C,t2) never deemed possible");
  CHECK(lad.verdict[1][0][0] == Verdict::not_applicable);
  CHECK(lad.verdict[2][0][0] == Verdict::not_applicable);

  auto rep = lexia::common_assumption(m);
  CHECK(rep.common[0] == std::vector<char>{0});
  // t2 fails fold 2: its only witness candidate t1 lost caution.
  CHECK(rep.common[1] == std::vector<char>{0});
}

TEST_CASE("fold verdicts are monotone in the fold index") {
  auto rng = testsupport::make_rng(301);
  // Random small models over random games: every type's pass set can only
  // shrink as folds accumulate, and the ladder must stabilize in bound.
  std::uniform_int_distribution<int> ntypes(1, 3);
  std::uniform_int_distribution<int> nlevels(1, 3);
  std::uniform_int_distribution<int> pick(0, 1 << 20);
  for (int trial = 0; trial < 40; ++trial) {
    lexia::Game g = testsupport::random_game(rng, 2, 3);
    CompleteModel m;
    m.game = g;
    int count[2] = {ntypes(rng), ntypes(rng)};
    for (int p = 0; p < 2; ++p)
      for (int t = 0; t < count[p]; ++t)
        m.type_names[p].push_back("u" + std::to_string(p + 1) + std::to_string(t + 1));
    for (int p = 0; p < 2; ++p) {
      int opp = 1 - p;
      int nc = g.form.num_choices(opp);
      for (int t = 0; t < count[p]; ++t) {
        LexBelief b;
        int k = nlevels(rng);
        for (int lvl = 0; lvl < k; ++lvl) {
          lexia::BeliefLevel level;
          Rational total(0);
          std::vector<std::pair<lexia::PairKey, Rational>> entries;
          for (int c = 0; c < nc; ++c)
            for (int tj = 0; tj < count[opp]; ++tj)
              if (pick(rng) % 3 != 0) {
                Rational w(1 + pick(rng) % 5);
                entries.push_back({{c, tj}, w});
                total += w;
              }
          if (entries.empty()) {
            entries.push_back({{0, 0}, Rational(1)});
            total = Rational(1);
          }
          for (auto& [key, w] : entries) level.weight[key] = w / total;
          b.levels.push_back(std::move(level));
        }
        m.beliefs[p].push_back(std::move(b));
      }
    }
    auto rep = lexia::common_assumption(m);
    const auto& lad = rep.ladder;
    REQUIRE(lad.stable_at >= 2);
    for (int p = 0; p < 2; ++p)
      for (int t = 0; t < count[p]; ++t)
        for (int f = 1; f < lad.max_fold; ++f)
          if (lad.verdict[f + 1][p][t] == Verdict::pass)
            REQUIRE(lad.verdict[f][p][t] == Verdict::pass);
  }
}

TEST_CASE("model files are validated") {
  SECTION("level sum below one") {
    Json j = fixture_json();
    j["types"][0]["belief"][0][0]["p"] = "1/2";
    CHECK_THROWS_AS(lexia::parse_complete_model(j, "inline"), ParseError);
  }
  SECTION("duplicate pair within a level") {
    Json j = fixture_json();
    j["types"][0]["belief"][0] = Json::array({
        Json{{"choice", "D"}, {"type", "t2"}, {"p", "1/2"}},
        Json{{"choice", "D"}, {"type", "t2"}, {"p", "1/2"}},
    });
    CHECK_THROWS_AS(lexia::parse_complete_model(j, "inline"), ParseError);
  }
  SECTION("zero weights are dropped after validation") {
    Json j = fixture_json();
    j["types"][0]["belief"][0] = Json::array({
        Json{{"choice", "D"}, {"type", "t2"}, {"p", "1"}},
        Json{{"choice", "C"}, {"type", "t2"}, {"p", "0"}},
    });
    CompleteModel m = lexia::parse_complete_model(j, "inline");
    CHECK(m.beliefs[0][0].levels[0].weight.size() == 1);
  }
  SECTION("unknown type reference") {
    Json j = fixture_json();
    j["types"][0]["belief"][0][0]["type"] = "ghost";
    CHECK_THROWS_AS(lexia::parse_complete_model(j, "inline"), ParseError);
  }
  SECTION("unknown choice label") {
    Json j = fixture_json();
    j["types"][0]["belief"][0][0]["choice"] = "Z";
    CHECK_THROWS_AS(lexia::parse_complete_model(j, "inline"), ParseError);
  }
  SECTION("negative weight") {
    Json j = fixture_json();
    j["types"][0]["belief"] = Json::array({Json::array({
        Json{{"choice", "D"}, {"type", "t2"}, {"p", "3/2"}},
        Json{{"choice", "C"}, {"type", "t2"}, {"p", "-1/2"}},
    })});
    CHECK_THROWS_AS(lexia::parse_complete_model(j, "inline"), ParseError);
  }
  SECTION("duplicate type name") {
    Json j = fixture_json();
    j["types"].push_back(j["types"][0]);
    CHECK_THROWS_AS(lexia::parse_complete_model(j, "inline"), ParseError);
  }
  SECTION("player out of range") {
    Json j = fixture_json();
    j["types"][0]["player"] = 3;
    CHECK_THROWS_AS(lexia::parse_complete_model(j, "inline"), ParseError);
  }
  SECTION("a player without types") {
    Json j = fixture_json();
    j["types"].erase(1);
    CHECK_THROWS_AS(lexia::parse_complete_model(j, "inline"), ParseError);
  }
}

TEST_CASE("serialize then parse round-trips the model") {
  CompleteModel m = fixture();
  Json j = lexia::complete_model_to_json(m);
  CompleteModel m2 = lexia::parse_complete_model(j, "round-trip");
  CHECK(m2.game == m.game);
  CHECK(m2.type_names == m.type_names);
  CHECK(m2.beliefs == m.beliefs);
  CHECK(lexia::complete_model_to_json(m2) == j);
}

TEST_CASE("game can be referenced by path") {
  Json j = fixture_json();
  j["game"] = "ex32.game.json";
  // Write the model next to the game file so the relative path resolves.
  std::string path = data_path("tmp_byref.complete.json");
  {
    std::ofstream out(path);
    out << j.dump(2);
  }
  CompleteModel m = lexia::load_complete_model(path);
  CHECK(m.game == fixture().game);
  std::remove(path.c_str());
}
