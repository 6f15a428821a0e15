#pragma once

#include <json.hpp>

#include <fstream>
#include <string>
#include <utility>

#include "lexia/errors.hpp"

// Single include point for JSON. The vendored single header defines
// nlohmann::json; ordered_json keeps object keys in insertion order so
// serialized reports and models are byte-stable.

namespace lexia {

using Json = nlohmann::ordered_json;

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, e.what());
  }
}

namespace jsonio {

inline const Json& require(const Json& j, const char* key, const std::string& ctx) {
  if (!j.is_object()) throw ParseError(ctx, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(ctx, std::string("missing field \"") + key + "\"");
  return *it;
}

inline std::string require_string(const Json& j, const char* key, const std::string& ctx) {
  const Json& v = require(j, key, ctx);
  if (!v.is_string()) throw ParseError(ctx, std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

inline const Json& require_array(const Json& j, const char* key, const std::string& ctx) {
  const Json& v = require(j, key, ctx);
  if (!v.is_array()) throw ParseError(ctx, std::string("field \"") + key + "\" must be an array");
  return v;
}

// "(own,opp)" -> {own, opp}. Labels may not contain '(', ')' or ','.
inline std::pair<std::string, std::string> split_pair_key(const std::string& key,
                                                          const std::string& ctx) {
  if (key.size() < 3 || key.front() != '(' || key.back() != ')')
    throw ParseError(ctx, "cell key \"" + key + "\" is not of the form \"(own,opp)\"");
  std::string inner = key.substr(1, key.size() - 2);
  auto comma = inner.find(',');
  if (comma == std::string::npos || inner.find(',', comma + 1) != std::string::npos)
    throw ParseError(ctx, "cell key \"" + key + "\" is not of the form \"(own,opp)\"");
  std::string own = inner.substr(0, comma);
  std::string opp = inner.substr(comma + 1);
  if (own.empty() || opp.empty())
    throw ParseError(ctx, "cell key \"" + key + "\" has an empty label");
  return {own, opp};
}

}  // namespace jsonio
}  // namespace lexia
