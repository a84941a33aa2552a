#include "call_expr.hpp"

#include "errors.hpp"

#include <cctype>

namespace fpl {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace

std::string CallExpr::arg(std::string_view key, bool positional_ok) const {
  for (const auto& [k, v] : args)
    if (k == key) return v;
  if (positional_ok && args.size() == 1 && args[0].first.empty())
    return args[0].second;
  return "";
}

CallExpr parse_call_expr(std::string_view text) {
  std::string_view s = trim(text);
  CallExpr out;
  auto open = s.find('(');
  if (open == std::string_view::npos) {
    out.name = std::string(trim(s));
    if (!valid_name(out.name)) throw ParseError("bad expression name: " + out.name);
    return out;
  }
  if (s.back() != ')') throw ParseError("expected ')' at end of: " + std::string(s));
  out.name = std::string(trim(s.substr(0, open)));
  if (!valid_name(out.name)) throw ParseError("bad expression name: " + out.name);
  std::string_view inner = s.substr(open + 1, s.size() - open - 2);
  if (trim(inner).empty()) return out;
  std::size_t start = 0;
  while (start <= inner.size()) {
    auto comma = inner.find(',', start);
    std::string_view item = trim(
        inner.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (item.empty()) throw ParseError("empty argument in: " + std::string(s));
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      out.args.emplace_back("", std::string(item));
    } else {
      std::string key(trim(item.substr(0, eq)));
      std::string val(trim(item.substr(eq + 1)));
      if (key.empty() || val.empty())
        throw ParseError("bad key=value argument: " + std::string(item));
      out.args.emplace_back(std::move(key), std::move(val));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace fpl
