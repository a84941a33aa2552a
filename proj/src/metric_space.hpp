#pragma once

#include "scalar.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace fpl {

// A carrier point. Finite carriers address points by index; lazily
// materialized line carriers address them by their exact coordinate.
// Identity is by identifier (index or coordinate representation), never by
// tolerance-blurred value comparison.
class Point {
public:
  static Point at(std::size_t index) { return Point(index); }
  static Point coord(Scalar c) { return Point(std::move(c)); }

  bool is_index() const { return std::holds_alternative<std::size_t>(rep_); }
  std::size_t index() const;
  const Scalar& coordinate() const;

  friend bool operator==(const Point& a, const Point& b);
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

private:
  explicit Point(std::size_t index) : rep_(index) {}
  explicit Point(Scalar c) : rep_(std::move(c)) {}
  std::variant<std::size_t, Scalar> rep_;
};

// A metric space over one of three carriers:
//
//   FiniteExplicit  n points with an n-by-n distance matrix
//   LineEmbedded    n points with distinct coordinates, d(x,y) = |x - y|
//   LineLazy        a membership predicate over line coordinates plus a
//                   seeded sampler; carrier points are materialized on demand
//
// Construction does not verify the metric axioms; verify_metric_axioms is
// the explicit gate (the CLI runs it before certifying file-loaded spaces).
class MetricSpace {
public:
  enum class Kind { FiniteExplicit, LineEmbedded, LineLazy };

  using Membership = std::function<bool(const Scalar&)>;
  using Sampler = std::function<Scalar(std::mt19937_64&)>;

  static MetricSpace finite_explicit(std::string label,
                                     std::vector<std::string> ids,
                                     std::vector<Scalar> matrix_row_major);
  static MetricSpace line_embedded(std::string label,
                                   std::vector<std::string> ids,
                                   std::vector<Scalar> coords);
  static MetricSpace line_lazy(std::string label, Membership member,
                               Sampler sampler, bool float_convertible = true);

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  bool is_finite() const { return kind_ != Kind::LineLazy; }
  bool float_backend() const { return float_backend_; }
  double comparison_eps() const { return eps_; }

  std::size_t size() const;
  const std::vector<std::string>& ids() const;

  // Resolves an identifier: a declared id on finite carriers, a coordinate
  // literal ("5/16", "2.5") on lazy ones. DomainError when unknown.
  Point point(std::string_view id) const;
  std::string id_of(const Point& p) const;
  bool contains(const Point& p) const;
  Scalar coordinate(const Point& p) const;  // line kinds only
  Scalar distance(const Point& x, const Point& y) const;
  Point sample(std::mt19937_64& rng) const;

  // Same carrier viewed through the float backend with tolerance eps.
  // Lazy carriers that depend on exact arithmetic refuse the conversion.
  MetricSpace to_float(double eps) const;

  // {"label": ..., "points": [ids], "matrix": [["p/q", ...], ...]}
  static MetricSpace from_json_text(const std::string& text);
  std::string to_json_text() const;  // finite kinds

private:
  MetricSpace() = default;

  std::size_t index_of(std::string_view id) const;
  void check_point(const Point& p) const;

  Kind kind_ = Kind::FiniteExplicit;
  std::string label_;
  std::vector<std::string> ids_;
  std::vector<Scalar> matrix_;  // FiniteExplicit, row-major
  std::vector<Scalar> coords_;  // LineEmbedded
  Membership member_;           // LineLazy
  Sampler sampler_;             // LineLazy
  bool float_convertible_ = true;
  bool float_backend_ = false;
  double eps_ = 0.0;
};

struct AxiomViolation {
  std::string axiom;                  // identity, symmetry, positivity, triangle
  std::vector<std::string> witness;   // point ids, in axiom order
  Scalar lhs;
  Scalar rhs;
};

struct AxiomReport {
  bool passed = true;
  std::uint64_t pairs_checked = 0;
  std::uint64_t triples_checked = 0;
  std::vector<AxiomViolation> violations;  // first max_violations found
};

// Checks the four metric axioms over every pair/triple of `subset`
// (identity, symmetry, positivity off the diagonal, triangle inequality).
// Reports at most max_violations witnesses.
AxiomReport verify_metric_axioms(const MetricSpace& space,
                                 std::span<const Point> subset,
                                 std::size_t max_violations = 16);

// Full-carrier overload for finite spaces.
AxiomReport verify_metric_axioms(const MetricSpace& space,
                                 std::size_t max_violations = 16);

std::string to_json_text(const AxiomReport& report);

}  // namespace fpl
