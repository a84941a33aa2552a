#pragma once

#include "rational.hpp"

#include <string>
#include <variant>

namespace fpl {

// Scalar carries every real-valued quantity in the lab: distances, ratios,
// condition parameters, diagnostic thresholds. Two backends are supported:
//
//   * exact rationals, for gallery constructions whose strict inequalities
//     must be decided without tolerance ambiguity;
//   * binary floats with an explicit comparison tolerance, for analytic
//     rule-backed maps whose exact orbits would blow up.
//
// Comparison policy. Exact compares by value identity and strict order.
// Epsilon(e) uses one fixed convention:
//
//   a <  b   means   a < b - e
//   a <= b   means   a <= b + e
//   a == b   means   |a - b| <= e
//
// Mixing two scalars takes the larger tolerance; mixing a rational with a
// float demotes the rational to a float.
class Scalar {
public:
  enum class Policy { Exact, Epsilon };

  Scalar() : value_(Rational(0)) {}
  Scalar(int v) : value_(Rational(v)) {}  // NOLINT: literals in formulas

  static Scalar exact(Rational value);
  static Scalar exact(std::string_view text);
  static Scalar with_eps(Rational value, double eps);
  static Scalar floating(double value, double eps);

  bool is_rational() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const;  // DomainError on a float scalar
  double as_double() const;
  Policy policy() const { return policy_; }
  double eps() const { return eps_; }

  Scalar operator+(const Scalar& other) const;
  Scalar operator-(const Scalar& other) const;
  Scalar operator*(const Scalar& other) const;
  Scalar operator/(const Scalar& other) const;  // DomainError on zero divisor
  Scalar operator-() const;
  Scalar abs() const;

  // Policy-aware predicates.
  bool lt(const Scalar& other) const;
  bool le(const Scalar& other) const;
  bool gt(const Scalar& other) const { return other.lt(*this); }
  bool ge(const Scalar& other) const { return other.le(*this); }
  bool eq(const Scalar& other) const;

  // Raw value predicates, independent of any tolerance. Used where identity
  // or the sign of a stored quantity is meant, not a fuzzy comparison.
  int raw_cmp(const Scalar& other) const;  // -1, 0, +1
  bool raw_zero() const;
  bool identical(const Scalar& other) const;  // same backend, same value

  std::string str() const;

private:
  Scalar(std::variant<Rational, double> value, Policy policy, double eps)
      : value_(std::move(value)), policy_(policy), eps_(eps) {}

  static Scalar combine(const Scalar& a, const Scalar& b,
                        std::variant<Rational, double> value);

  std::variant<Rational, double> value_;
  Policy policy_ = Policy::Exact;
  double eps_ = 0.0;
};

inline bool operator==(const Scalar& a, const Scalar& b) { return a.eq(b); }
inline bool operator!=(const Scalar& a, const Scalar& b) { return !a.eq(b); }

std::string format_double(double value);  // shortest round-trip form

}  // namespace fpl
