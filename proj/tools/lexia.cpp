// lexia: exact checker, solver, and transformer for lexicographic epistemic
// models of finite 2-player games. Subcommands: ia, check-complete,
// check-incomplete, transform, verify-theorem. Reports print as JSON
// (default) or text; LEXIA_VERBOSITY=1 adds belief tables and fold grids to
// the text rendering. Exit 0 = all checks pass, 1 = some check failed,
// 2 = unusable input.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lexia/admissibility.hpp"
#include "lexia/complete_model.hpp"
#include "lexia/incomplete_model.hpp"
#include "lexia/report.hpp"
#include "lexia/synthesis.hpp"
#include "lexia/transform.hpp"

namespace {

using namespace lexia;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Reads the file once so the report's digest covers exactly what was parsed.
Json load_input(const std::string& path, RunReport& rep) {
  std::string content = slurp(path);
  rep.add_input(path, content);
  try {
    return Json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, e.what());
  }
}

std::vector<std::string> labels_of(const GameForm& form, int p, const std::vector<int>& cs) {
  std::vector<std::string> out;
  out.reserve(cs.size());
  for (int c : cs) out.push_back(form.label(p, c));
  return out;
}

std::string set_text(const std::vector<std::string>& labels) {
  std::string out = "{";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ", ";
    out += labels[i];
  }
  return out + "}";
}

std::string tag(int player, const std::string& type_name) {
  return "p" + std::to_string(player + 1) + ":" + type_name;
}

// First label in exactly one of the two sets; the sets are reported sorted,
// so this pick is deterministic.
std::string first_difference(const GameForm& form, int p, const std::set<int>& a,
                             const std::set<int>& b) {
  for (int c = 0; c < form.num_choices(p); ++c)
    if (a.count(c) != b.count(c)) return form.label(p, c);
  return "";
}

// ---------------------------------------------------------------------------
// ia

RunReport run_ia(const std::string& path) {
  RunReport rep;
  rep.command = "ia";
  Game g = parse_game(load_input(path, rep), path);
  IARounds ia = iterated_admissibility(g);

  Json rounds = Json::array();
  std::vector<std::array<std::string, 2>> cells;
  for (std::size_t k = 0; k < ia.rounds.size(); ++k) {
    Json sets = Json::array();
    std::array<std::string, 2> row;
    for (int p = 0; p < kPlayers; ++p) {
      auto labels = labels_of(g.form, p, ia.rounds[k][p]);
      sets.push_back(labels);
      row[p] = set_text(labels);
    }
    rounds.push_back(Json{{"round", k}, {"survivors", std::move(sets)}});
    cells.push_back(std::move(row));
  }
  rep.result = Json{{"rounds", std::move(rounds)}, {"stable_round", ia.stable_round()}};

  std::size_t width = 0;
  for (const auto& row : cells) width = std::max(width, row[0].size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    std::string line = "round " + std::to_string(k) + ": " + cells[k][0];
    line.append(width - cells[k][0].size(), ' ');
    rep.text_lines.push_back(line + " | " + cells[k][1]);
  }
  rep.text_lines.push_back("stable after round " + std::to_string(ia.stable_round()));
  return rep;
}

// ---------------------------------------------------------------------------
// check-complete

RunReport run_check_complete(const std::string& path, int folds, bool common) {
  RunReport rep;
  rep.command = "check-complete";
  CompleteModel m = parse_complete_model(load_input(path, rep), path);

  for (int p = 0; p < kPlayers; ++p)
    for (int t = 0; t < m.num_types(p); ++t)
      rep.add_check("cautious(" + tag(p, m.type_names[p][t]) + ")", is_cautious_co(m, p, t));

  Json types = Json::array();
  if (common) {
    CommonReport cr = common_assumption(m);
    for (int p = 0; p < kPlayers; ++p)
      for (int t = 0; t < m.num_types(p); ++t) {
        rep.add_check("common-assumption(" + tag(p, m.type_names[p][t]) + ")",
                      cr.common[p][t] != 0, cr.detail[p][t]);
        auto opt = labels_of(m.game.form, p, optimal_choices_co(m, p, t));
        types.push_back(Json{{"player", p + 1},
                             {"name", m.type_names[p][t]},
                             {"cautious", is_cautious_co(m, p, t)},
                             {"optimal", opt},
                             {"common_assumption", cr.common[p][t] != 0}});
        rep.text_lines.push_back("type " + tag(p, m.type_names[p][t]) + ": optimal " +
                                 set_text(opt));
      }
    rep.result = Json{{"types", std::move(types)}, {"stable_fold", cr.ladder.stable_at}};
    for (int f = 0; f <= cr.ladder.max_fold; ++f) {
      std::string line = "fold " + std::to_string(f) + ":";
      for (int p = 0; p < kPlayers; ++p)
        for (int t = 0; t < m.num_types(p); ++t)
          line += " " + tag(p, m.type_names[p][t]) + "=" +
                  to_string(cr.ladder.verdict[f][p][t]);
      rep.text_extras.push_back(line);
    }
  } else if (folds >= 1) {
    FoldLadder lad = n_fold_assumption(m, folds);
    for (int p = 0; p < kPlayers; ++p)
      for (int t = 0; t < m.num_types(p); ++t) {
        Verdict v = lad.verdict[folds][p][t];
        std::string name = "assumes-rationality-fold-" + std::to_string(folds) + "(" +
                           tag(p, m.type_names[p][t]) + ")";
        if (v == Verdict::not_applicable)
          rep.add_check_na(name, lad.detail[folds][p][t]);
        else
          rep.add_check(name, v == Verdict::pass, lad.detail[folds][p][t]);
        auto opt = labels_of(m.game.form, p, optimal_choices_co(m, p, t));
        types.push_back(Json{{"player", p + 1},
                             {"name", m.type_names[p][t]},
                             {"cautious", is_cautious_co(m, p, t)},
                             {"optimal", opt},
                             {"fold_verdict", to_string(v)}});
        rep.text_lines.push_back("type " + tag(p, m.type_names[p][t]) + ": optimal " +
                                 set_text(opt));
      }
    rep.result = Json{{"types", std::move(types)}, {"folds", folds}};
  } else {
    // --folds 0: caution only, already checked above.
    for (int p = 0; p < kPlayers; ++p)
      for (int t = 0; t < m.num_types(p); ++t) {
        auto opt = labels_of(m.game.form, p, optimal_choices_co(m, p, t));
        types.push_back(Json{{"player", p + 1},
                             {"name", m.type_names[p][t]},
                             {"cautious", is_cautious_co(m, p, t)},
                             {"optimal", opt}});
        rep.text_lines.push_back("type " + tag(p, m.type_names[p][t]) + ": optimal " +
                                 set_text(opt));
      }
    rep.result = Json{{"types", std::move(types)}, {"folds", 0}};
  }

  for (int p = 0; p < kPlayers; ++p)
    for (int t = 0; t < m.num_types(p); ++t)
      rep.text_extras.push_back(
          "belief " + tag(p, m.type_names[p][t]) + " = " +
          lex_belief_to_text(m.beliefs[p][t], m.game.form, opponent(p),
                             m.type_names[opponent(p)]));
  return rep;
}

// ---------------------------------------------------------------------------
// check-incomplete

RunReport run_check_incomplete(const std::string& path, int folds, bool common) {
  RunReport rep;
  rep.command = "check-incomplete";
  IncompleteModel m = parse_incomplete_model(load_input(path, rep), path);

  std::array<std::vector<char>, 2> ca, ra;
  for (int p = 0; p < kPlayers; ++p) {
    ca[p].resize(m.num_types(p));
    ra[p].resize(m.num_types(p));
    for (int t = 0; t < m.num_types(p); ++t) {
      ca[p][t] = is_cautious_in(m, p, t);
      ra[p][t] = believes_rationality(m, p, t);
      rep.add_check("cautious(" + tag(p, m.type_names[p][t]) + ")", ca[p][t] != 0);
      rep.add_check("believes-rationality(" + tag(p, m.type_names[p][t]) + ")", ra[p][t] != 0);
    }
  }

  Json types = Json::array();
  if (common) {
    CommonReport sp = common_supported_and_prior(m);
    auto cca = common_full_belief(m, CommonProperty::caution);
    auto cra = common_full_belief(m, CommonProperty::rationality);
    for (int p = 0; p < kPlayers; ++p)
      for (int t = 0; t < m.num_types(p); ++t) {
        const std::string id = tag(p, m.type_names[p][t]);
        rep.add_check("common-caution(" + id + ")", cca[p][t] != 0);
        rep.add_check("common-rationality(" + id + ")", cra[p][t] != 0);
        rep.add_check("common-supported-and-prior(" + id + ")", sp.common[p][t] != 0,
                      sp.detail[p][t]);
        bool carries_u = m.utility[p][t] == m.reference_u[p];
        bool cond_b = carries_u && cca[p][t] && cra[p][t] && sp.common[p][t];
        auto opt = labels_of(m.form, p, optimal_choices_in(m, p, t));
        types.push_back(Json{{"player", p + 1},
                             {"name", m.type_names[p][t]},
                             {"carries_u", carries_u},
                             {"cautious", ca[p][t] != 0},
                             {"believes_rationality", ra[p][t] != 0},
                             {"common_caution", cca[p][t] != 0},
                             {"common_rationality", cra[p][t] != 0},
                             {"common_supported_and_prior", sp.common[p][t] != 0},
                             {"condition_b", cond_b},
                             {"optimal", opt}});
        rep.text_lines.push_back("type " + id + ": optimal " + set_text(opt) +
                                 (cond_b ? ", satisfies condition (b)" : ""));
      }
    rep.result = Json{{"types", std::move(types)}, {"stable_fold", sp.ladder.stable_at}};
  } else {
    FoldLadder lad = n_fold_supported_and_prior(m, std::max(folds, 1));
    for (int p = 0; p < kPlayers; ++p)
      for (int t = 0; t < m.num_types(p); ++t) {
        const std::string id = tag(p, m.type_names[p][t]);
        Verdict v = lad.verdict[std::max(folds, 1)][p][t];
        std::string name =
            "supported-and-prior-fold-" + std::to_string(std::max(folds, 1)) + "(" + id + ")";
        if (v == Verdict::not_applicable)
          rep.add_check_na(name, lad.detail[std::max(folds, 1)][p][t]);
        else
          rep.add_check(name, v == Verdict::pass, lad.detail[std::max(folds, 1)][p][t]);
        auto opt = labels_of(m.form, p, optimal_choices_in(m, p, t));
        types.push_back(Json{{"player", p + 1},
                             {"name", m.type_names[p][t]},
                             {"cautious", ca[p][t] != 0},
                             {"believes_rationality", ra[p][t] != 0},
                             {"fold_verdict", to_string(v)},
                             {"optimal", opt}});
        rep.text_lines.push_back("type " + id + ": optimal " + set_text(opt));
      }
    rep.result = Json{{"types", std::move(types)}, {"folds", std::max(folds, 1)}};
  }

  for (int p = 0; p < kPlayers; ++p)
    for (int t = 0; t < m.num_types(p); ++t)
      rep.text_extras.push_back("belief " + tag(p, m.type_names[p][t]) + " = " +
                                lex_belief_to_text(m.beliefs[p][t], m.form, opponent(p),
                                                   m.type_names[opponent(p)]));
  return rep;
}

// ---------------------------------------------------------------------------
// transform

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path, "cannot write file");
  out << content;
  if (!out) throw ParseError(path, "write failed");
}

// Provenance note first, then the model keys; parsers ignore unknown fields.
Json with_comment(Json model_json, const std::string& note) {
  Json out = Json{{"comment", note}};
  for (auto& item : model_json.items()) out[item.key()] = std::move(item.value());
  return out;
}

RunReport run_transform(const std::string& path, const std::string& direction,
                        const std::string& out_path) {
  RunReport rep;
  rep.command = "transform";
  Json j = load_input(path, rep);

  if (direction == "co2in") {
    CompleteModel m = parse_complete_model(j, path);
    SplitModel split = complete_to_incomplete(m);
    rep.add_check("group-beliefs-equal", check_observation_redundancy(split.model, split.groups));
    bool ra_all = true;
    for (int p = 0; p < kPlayers && ra_all; ++p)
      for (int t = 0; t < split.model.num_types(p); ++t)
        if (!believes_rationality(split.model, p, t)) {
          ra_all = false;
          break;
        }
    rep.add_check("believes-rationality", ra_all);

    bool distinct = true;
    for (int p = 0; p < kPlayers && distinct; ++p)
      for (int a = 0; a < m.num_types(p) && distinct; ++a)
        for (int b = a + 1; b < m.num_types(p); ++b)
          if (m.beliefs[p][a] == m.beliefs[p][b]) {
            distinct = false;
            break;
          }
    if (distinct) {
      MergedModel merged = incomplete_to_complete(split.model);
      rep.add_check("round-trip-isomorphic", isomorphic(merged.model, m));
    } else {
      rep.add_check_na("round-trip-isomorphic", "input beliefs are not pairwise distinct");
    }

    write_file(out_path, with_comment(incomplete_model_to_json(split.model),
                                  "derived from " + path + " by lexia transform co2in")
                         .dump(2) +
                         "\n");
    Json groups = Json::array();
    for (int p = 0; p < kPlayers; ++p) groups.push_back(split.groups[p]);
    rep.result = Json{{"direction", "co2in"},
                      {"out", out_path},
                      {"output_types", {split.model.num_types(0), split.model.num_types(1)}},
                      {"groups", std::move(groups)}};
    rep.text_lines.push_back("wrote " + out_path + " (" +
                             std::to_string(split.model.num_types(0)) + "+" +
                             std::to_string(split.model.num_types(1)) + " types)");
  } else {
    IncompleteModel m = parse_incomplete_model(j, path);
    MergedModel merged = incomplete_to_complete(m);
    write_file(out_path, with_comment(complete_model_to_json(merged.model),
                                  "derived from " + path + " by lexia transform in2co")
                         .dump(2) +
                         "\n");
    Json class_of = Json::array();
    for (int p = 0; p < kPlayers; ++p) class_of.push_back(merged.class_of[p]);
    rep.result = Json{{"direction", "in2co"},
                      {"out", out_path},
                      {"output_types", {merged.model.num_types(0), merged.model.num_types(1)}},
                      {"class_of", std::move(class_of)}};
    rep.text_lines.push_back("wrote " + out_path + " (" +
                             std::to_string(merged.model.num_types(0)) + "+" +
                             std::to_string(merged.model.num_types(1)) + " types)");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// verify-theorem

RunReport run_verify_theorem(const std::string& path) {
  RunReport rep;
  rep.command = "verify-theorem";
  Game g = parse_game(load_input(path, rep), path);

  IARounds ia = iterated_admissibility(g);
  std::array<std::set<int>, 2> s_ia;
  for (int p = 0; p < kPlayers; ++p)
    s_ia[p] = {ia.survivors()[p].begin(), ia.survivors()[p].end()};

  // Complete-information side: a synthesized model whose CAR types exist for
  // exactly the survivors.
  CompleteModel w = synthesize_car_model(g);
  CommonReport car = common_assumption(w);
  std::array<std::set<int>, 2> s_car;
  for (int p = 0; p < kPlayers; ++p)
    for (int t = 0; t < w.num_types(p); ++t) {
      if (!car.common[p][t]) continue;
      auto opt = optimal_choices_co(w, p, t);
      s_car[p].insert(opt.begin(), opt.end());
    }

  // Incomplete-information side: split the witness and collect optima of
  // types that carry u and satisfy condition (b).
  SplitModel split = complete_to_incomplete(w);
  const IncompleteModel& im = split.model;
  CommonReport sp = common_supported_and_prior(im);
  auto cca = common_full_belief(im, CommonProperty::caution);
  auto cra = common_full_belief(im, CommonProperty::rationality);
  std::array<std::set<int>, 2> s_b;
  for (int p = 0; p < kPlayers; ++p)
    for (int t = 0; t < im.num_types(p); ++t) {
      if (!(im.utility[p][t] == im.reference_u[p])) continue;
      if (!(cca[p][t] && cra[p][t] && sp.common[p][t])) continue;
      auto opt = optimal_choices_in(im, p, t);
      s_b[p].insert(opt.begin(), opt.end());
    }

  // Converse direction: merge back and re-run the complete-side checks.
  MergedModel merged = incomplete_to_complete(im);
  CommonReport back = common_assumption(merged.model);
  std::array<std::set<int>, 2> s_back;
  for (int p = 0; p < kPlayers; ++p)
    for (int t = 0; t < merged.model.num_types(p); ++t) {
      if (!back.common[p][t]) continue;
      auto opt = optimal_choices_co(merged.model, p, t);
      s_back[p].insert(opt.begin(), opt.end());
    }

  Json players = Json::array();
  for (int p = 0; p < kPlayers; ++p) {
    auto named = [&](const std::set<int>& s) {
      return labels_of(g.form, p, std::vector<int>(s.begin(), s.end()));
    };
    std::string who = "p" + std::to_string(p + 1);
    auto check_set = [&](const std::string& name, const std::set<int>& s) {
      std::string detail;
      if (s != s_ia[p]) detail = "differs at " + first_difference(g.form, p, s, s_ia[p]);
      rep.add_check(name + "(" + who + ")", s == s_ia[p], detail);
    };
    check_set("car-optimal-matches-ia", s_car[p]);
    check_set("condition-b-matches-ia", s_b[p]);
    check_set("round-trip-matches-ia", s_back[p]);
    players.push_back(Json{{"player", p + 1},
                           {"ia_survivors", named(s_ia[p])},
                           {"car_optimal", named(s_car[p])},
                           {"condition_b_optimal", named(s_b[p])},
                           {"round_trip_optimal", named(s_back[p])}});
    rep.text_lines.push_back(who + " survivors " + set_text(named(s_ia[p])));
  }
  rep.result = Json{{"players", std::move(players)}};
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact checks and transforms for lexicographic epistemic game models"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "report rendering: json or text")
      ->check(CLI::IsMember({"json", "text"}));

  std::string ia_path;
  CLI::App* cmd_ia = app.add_subcommand("ia", "iterated admissibility rounds of a game");
  cmd_ia->add_option("game", ia_path, "game file")->required();

  std::string cc_path;
  int cc_folds = -1;
  bool cc_common = false;
  CLI::App* cmd_cc = app.add_subcommand("check-complete", "check a complete-information model");
  cmd_cc->add_option("model", cc_path, "complete model file")->required();
  CLI::Option* cc_folds_opt =
      cmd_cc->add_option("--folds", cc_folds, "stop the assumption ladder at this fold");
  cmd_cc->add_flag("--common", cc_common, "run the ladder to stabilization (default)")
      ->excludes(cc_folds_opt);

  std::string ci_path;
  int ci_folds = -1;
  bool ci_common = false;
  CLI::App* cmd_ci =
      app.add_subcommand("check-incomplete", "check an incomplete-information model");
  cmd_ci->add_option("model", ci_path, "incomplete model file")->required();
  CLI::Option* ci_folds_opt =
      cmd_ci->add_option("--folds", ci_folds, "stop the supported-and-prior ladder at this fold");
  cmd_ci->add_flag("--common", ci_common, "run the ladder to stabilization (default)")
      ->excludes(ci_folds_opt);

  std::string tr_path, tr_direction, tr_out;
  CLI::App* cmd_tr = app.add_subcommand("transform", "convert between model kinds");
  cmd_tr->add_option("model", tr_path, "model file")->required();
  cmd_tr->add_option("--direction", tr_direction, "co2in or in2co")
      ->required()
      ->check(CLI::IsMember({"co2in", "in2co"}));
  cmd_tr->add_option("--out", tr_out, "output model file")->required();

  std::string vt_path;
  CLI::App* cmd_vt = app.add_subcommand(
      "verify-theorem", "solver, synthesis, and transform agree on a game's survivors");
  cmd_vt->add_option("game", vt_path, "game file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const char* verb_env = std::getenv("LEXIA_VERBOSITY");
  const bool verbose = verb_env && std::atoi(verb_env) >= 1;

  try {
    RunReport rep;
    if (cmd_ia->parsed()) {
      rep = run_ia(ia_path);
    } else if (cmd_cc->parsed()) {
      if (cc_folds_opt->count() && cc_folds < 0)
        throw ContractError("check-complete: --folds must be >= 0");
      rep = run_check_complete(cc_path, cc_folds, !cc_folds_opt->count());
    } else if (cmd_ci->parsed()) {
      if (ci_folds_opt->count() && ci_folds < 1)
        throw ContractError("check-incomplete: --folds must be >= 1");
      rep = run_check_incomplete(ci_path, ci_folds, !ci_folds_opt->count());
    } else if (cmd_tr->parsed()) {
      rep = run_transform(tr_path, tr_direction, tr_out);
    } else {
      rep = run_verify_theorem(vt_path);
    }
    if (format == "json")
      std::cout << rep.to_json().dump(2) << "\n";
    else
      std::cout << rep.to_text(verbose);
    return rep.exit_status;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
