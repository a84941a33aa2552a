#include "rational.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cctype>

namespace fpl {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) {
    throw ParseError("empty integer in rational '" + std::string(whole) + "'");
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) {
    throw ParseError("missing digits in rational '" + std::string(whole) + "'");
  }
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw ParseError("bad digit in rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (text[pos] - '0');
  }
  return negative ? BigInt(-value) : value;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  const auto dot = text.find('.');
  std::string_view head = text.substr(0, dot);
  std::string_view tail = text.substr(dot + 1);
  if (tail.find('.') != std::string_view::npos) {
    throw ParseError("multiple decimal points in '" + std::string(whole) + "'");
  }
  bool negative = false;
  if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
    negative = head[0] == '-';
    head.remove_prefix(1);
  }
  if (head.empty() && tail.empty()) {
    throw ParseError("missing digits in '" + std::string(whole) + "'");
  }
  BigInt numerator = head.empty() ? BigInt(0) : parse_integer(head, whole);
  BigInt denominator = 1;
  for (char c : tail) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("bad digit in '" + std::string(whole) + "'");
    }
    numerator = numerator * 10 + (c - '0');
    denominator *= 10;
  }
  Rational value(numerator, denominator);
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) {
    trimmed.remove_prefix(1);
  }
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) {
    trimmed.remove_suffix(1);
  }
  if (trimmed.empty()) {
    throw ParseError("empty rational string");
  }
  const auto slash = trimmed.find('/');
  if (slash != std::string_view::npos) {
    if (trimmed.find('/', slash + 1) != std::string_view::npos) {
      throw ParseError("multiple '/' in rational '" + std::string(text) + "'");
    }
    if (trimmed.find('.') != std::string_view::npos) {
      throw ParseError("mixed decimal and fraction in '" + std::string(text) + "'");
    }
    BigInt num = parse_integer(trimmed.substr(0, slash), text);
    BigInt den = parse_integer(trimmed.substr(slash + 1), text);
    if (den == 0) {
      throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
  }
  if (trimmed.find('.') != std::string_view::npos) {
    return parse_decimal(trimmed, text);
  }
  return Rational(parse_integer(trimmed, text));
}

std::string format_rational(const Rational& value) {
  const BigInt num = numerator(value);
  const BigInt den = denominator(value);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

bool is_power_of_two(const BigInt& value) {
  if (value <= 0) {
    return false;
  }
  return (value & (value - 1)) == 0;
}

BigInt pow2(unsigned exponent) {
  return BigInt(1) << exponent;
}

}  // namespace fpl
