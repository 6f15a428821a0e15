#pragma once

#include <stdexcept>
#include <string>

namespace lexia {

// Malformed input file or string. `where` names the offending file,
// JSON path, or token so the CLI can point at the problem.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// A caller broke a documented precondition (mismatched lengths,
// fold count below one, type not cautious, ...).
class ContractError : public std::logic_error {
  using std::logic_error::logic_error;
};

// "Cannot happen" conditions, e.g. a synthesized model rejected by
// the checker that defines it.
class InternalError : public std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace lexia
