#pragma once

#include <stdexcept>

namespace fpl {

// Error taxonomy used throughout the core. The C API maps each class to a
// status code, the CLI maps them to exit code 2.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Invalid parameter (out-of-range condition constant, bad truncation size).
class ParamError : public Error {
public:
  using Error::Error;
};

// Unknown point identifier or index outside the carrier.
class DomainError : public Error {
public:
  using Error::Error;
};

// A map application left the materialized part of a truncated carrier.
// Callers are expected to shrink their certification scope or raise the
// truncation bound.
class BoundaryError : public Error {
public:
  using Error::Error;
};

// Malformed rational string, JSON document, or spec expression.
class ParseError : public Error {
public:
  using Error::Error;
};

// A test function left its declared codomain; certification aborts rather
// than reporting a violation of the condition under test.
class TestFunctionError : public Error {
public:
  using Error::Error;
};

// Degenerate input (fewer than two points where a ratio sweep needs pairs).
class DegenerateInputError : public Error {
public:
  using Error::Error;
};

}  // namespace fpl
