#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fpl {

// Parsed form of "name(key=value, value2, ...)". Positional arguments get an
// empty key. Used by the condition and gallery constructors-by-name.
struct CallExpr {
  std::string name;
  std::vector<std::pair<std::string, std::string>> args;

  // Returns the value for `key`, accepting a positional argument when the
  // expression has exactly one and `positional_ok` is set. Empty when absent.
  std::string arg(std::string_view key, bool positional_ok = false) const;
};

CallExpr parse_call_expr(std::string_view text);

}  // namespace fpl
