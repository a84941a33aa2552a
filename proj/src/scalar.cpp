#include "scalar.hpp"

#include "errors.hpp"

#include <charconv>
#include <cmath>

namespace fpl {

std::string format_double(double value) {
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

Scalar Scalar::exact(Rational value) {
  return Scalar(std::move(value), Policy::Exact, 0.0);
}

Scalar Scalar::exact(std::string_view text) {
  return exact(parse_rational(text));
}

Scalar Scalar::with_eps(Rational value, double eps) {
  if (eps < 0.0) {
    throw ParamError("comparison tolerance must be nonnegative");
  }
  return Scalar(std::move(value), Policy::Epsilon, eps);
}

Scalar Scalar::floating(double value, double eps) {
  if (eps < 0.0) {
    throw ParamError("comparison tolerance must be nonnegative");
  }
  return Scalar(value, Policy::Epsilon, eps);
}

const Rational& Scalar::rational() const {
  if (!is_rational()) {
    throw DomainError("float-backed scalar has no exact rational value");
  }
  return std::get<Rational>(value_);
}

double Scalar::as_double() const {
  if (is_rational()) {
    return static_cast<double>(std::get<Rational>(value_));
  }
  return std::get<double>(value_);
}

Scalar Scalar::combine(const Scalar& a, const Scalar& b,
                       std::variant<Rational, double> value) {
  const Policy policy = (a.policy_ == Policy::Exact && b.policy_ == Policy::Exact)
                            ? Policy::Exact
                            : Policy::Epsilon;
  return Scalar(std::move(value), policy, std::max(a.eps_, b.eps_));
}

Scalar Scalar::operator+(const Scalar& other) const {
  if (is_rational() && other.is_rational()) {
    return combine(*this, other, Rational(rational() + other.rational()));
  }
  return combine(*this, other, as_double() + other.as_double());
}

Scalar Scalar::operator-(const Scalar& other) const {
  if (is_rational() && other.is_rational()) {
    return combine(*this, other, Rational(rational() - other.rational()));
  }
  return combine(*this, other, as_double() - other.as_double());
}

Scalar Scalar::operator*(const Scalar& other) const {
  if (is_rational() && other.is_rational()) {
    return combine(*this, other, Rational(rational() * other.rational()));
  }
  return combine(*this, other, as_double() * other.as_double());
}

Scalar Scalar::operator/(const Scalar& other) const {
  if (other.raw_zero()) {
    throw DomainError("division by zero scalar");
  }
  if (is_rational() && other.is_rational()) {
    return combine(*this, other, Rational(rational() / other.rational()));
  }
  return combine(*this, other, as_double() / other.as_double());
}

Scalar Scalar::operator-() const {
  if (is_rational()) {
    return Scalar(Rational(-rational()), policy_, eps_);
  }
  return Scalar(-std::get<double>(value_), policy_, eps_);
}

Scalar Scalar::abs() const {
  if (is_rational()) {
    return Scalar(Rational(boost::multiprecision::abs(rational())), policy_, eps_);
  }
  return Scalar(std::fabs(std::get<double>(value_)), policy_, eps_);
}

bool Scalar::lt(const Scalar& other) const {
  const double eps = std::max(eps_, other.eps_);
  if (is_rational() && other.is_rational()) {
    if (eps == 0.0) {
      return rational() < other.rational();
    }
    return rational() < other.rational() - Rational(eps);
  }
  return as_double() < other.as_double() - eps;
}

bool Scalar::le(const Scalar& other) const {
  const double eps = std::max(eps_, other.eps_);
  if (is_rational() && other.is_rational()) {
    if (eps == 0.0) {
      return rational() <= other.rational();
    }
    return rational() <= other.rational() + Rational(eps);
  }
  return as_double() <= other.as_double() + eps;
}

bool Scalar::eq(const Scalar& other) const {
  const double eps = std::max(eps_, other.eps_);
  if (is_rational() && other.is_rational()) {
    if (eps == 0.0) {
      return rational() == other.rational();
    }
    return boost::multiprecision::abs(Rational(rational() - other.rational())) <=
           Rational(eps);
  }
  return std::fabs(as_double() - other.as_double()) <= eps;
}

int Scalar::raw_cmp(const Scalar& other) const {
  if (is_rational() && other.is_rational()) {
    return rational().compare(other.rational());
  }
  const double a = as_double();
  const double b = other.as_double();
  if (a < b) return -1;
  if (a > b) return 1;
  return 0;
}

bool Scalar::raw_zero() const {
  if (is_rational()) {
    return rational() == 0;
  }
  return std::get<double>(value_) == 0.0;
}

bool Scalar::identical(const Scalar& other) const {
  if (is_rational() != other.is_rational()) {
    return false;
  }
  if (is_rational()) {
    return rational() == other.rational();
  }
  return std::get<double>(value_) == std::get<double>(other.value_);
}

std::string Scalar::str() const {
  if (is_rational()) {
    return format_rational(rational());
  }
  return format_double(std::get<double>(value_));
}

}  // namespace fpl
