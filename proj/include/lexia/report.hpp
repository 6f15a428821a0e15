#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lexia/json_io.hpp"

namespace lexia {

// FNV-1a over raw bytes, 64-bit, rendered as 16 hex digits. Reports carry it
// so two runs can be compared without shipping the inputs around.
inline std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = hex[h & 0xf];
  return out;
}

// Record of one CLI invocation. Deterministic for identical inputs: no
// timestamps, no environment capture, witnesses chosen by fixed tie-breaks.
// The JSON and text renderings carry the same check names and verdicts.
struct RunReport {
  static constexpr const char* kSchema = "lexia/report/v1";

  struct Check {
    std::string name;
    std::string verdict;  // pass | fail | not-applicable
    std::string detail;   // empty when there is nothing to add
  };

  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::vector<Check> checks;
  Json result = Json::object();          // command-specific payload
  std::vector<std::string> text_lines;   // text rendering of the payload
  std::vector<std::string> text_extras;  // verbose-only additions
  int exit_status = 0;

  void add_input(const std::string& path, std::string_view content) {
    inputs.emplace_back(path, fnv1a64(content));
  }

  void add_check(const std::string& name, bool pass, const std::string& detail = "") {
    checks.push_back({name, pass ? "pass" : "fail", detail});
    if (!pass) exit_status = 1;
  }

  void add_check_na(const std::string& name, const std::string& detail = "") {
    checks.push_back({name, "not-applicable", detail});
  }

  bool all_passed() const {
    for (const Check& c : checks)
      if (c.verdict == "fail") return false;
    return true;
  }

  Json to_json() const {
    Json in = Json::array();
    for (const auto& [path, digest] : inputs)
      in.push_back(Json{{"path", path}, {"fnv1a64", digest}});
    Json ch = Json::array();
    for (const Check& c : checks) {
      Json e = Json{{"name", c.name}, {"verdict", c.verdict}};
      if (!c.detail.empty()) e["detail"] = c.detail;
      ch.push_back(std::move(e));
    }
    return Json{{"schema", kSchema}, {"command", command},   {"inputs", std::move(in)},
                {"checks", std::move(ch)}, {"result", result}, {"exit", exit_status}};
  }

  // One line per fact; `verbose` appends the extras (belief tables, fold
  // grids) that would drown the default view.
  std::string to_text(bool verbose) const {
    std::string out = "lexia " + command + "\n";
    for (const auto& [path, digest] : inputs)
      out += "input " + path + " fnv1a64=" + digest + "\n";
    for (const Check& c : checks) {
      out += "check " + c.name + ": " + c.verdict;
      if (!c.detail.empty()) out += " (" + c.detail + ")";
      out += "\n";
    }
    for (const std::string& line : text_lines) out += line + "\n";
    if (verbose)
      for (const std::string& line : text_extras) out += line + "\n";
    out += "exit " + std::to_string(exit_status) + "\n";
    return out;
  }
};

}  // namespace lexia
