#pragma once

#include "self_map.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fpl {

// Record of a forward iteration x0, x1 = T x0, x2 = T x1, ...
// deltas[n] = d(points[n], points[n+1]), one fewer entry than points.
//
// Termination cases:
//   MaxSteps         the step budget ran out; terminal_index = last index
//   FixedPointHit    deltas[terminal_index] compared equal to 0, so
//                    points[terminal_index] is fixed under the active policy
//   CarrierBoundary  applying the map at points[terminal_index] left the
//                    carrier (truncated galleries); not an error
struct OrbitTrace {
  enum class Termination { MaxSteps, FixedPointHit, CarrierBoundary };

  std::vector<Point> points;
  std::vector<Scalar> deltas;
  Termination termination = Termination::MaxSteps;
  std::size_t terminal_index = 0;
};

OrbitTrace iterate(const MetricSpace& space, const SelfMap& map, const Point& x0,
                   std::size_t max_steps);

// Post-map gap ratio of trace positions p and q:
// 0 when d(x_p, x_q) = 0, else d(x_{p+1}, x_{q+1}) / d(x_p, x_q).
// Both successors must be materialized in the trace.
Scalar capital_delta(const MetricSpace& space, const OrbitTrace& trace,
                     std::size_t p, std::size_t q);

struct SequentialWitness {
  std::size_t p = 0;
  std::size_t q = 0;  // p < q
  Scalar delta{0};    // d(x_p, x_q)
  Scalar Delta{0};    // d(x_{p+1}, x_{q+1}) / delta
  bool premise_ok = false;  // d(x_p, x_{p+1}) <= d(x_p, x_q)
};

struct DiagnosticThresholds {
  Scalar eps_Delta;  // how close Delta must come to 1; in (0, 1)
  Scalar eps_delta;  // how far delta must stay from 0; > 0
  std::size_t horizon = 5000;
  std::size_t max_witnesses = 100;  // cap on returned list; all matches counted

  DiagnosticThresholds(Scalar eps_Delta_, Scalar eps_delta_, std::size_t horizon_)
      : eps_Delta(std::move(eps_Delta_)), eps_delta(std::move(eps_delta_)),
        horizon(horizon_) {}
};

struct DiagnosticResult {
  std::vector<SequentialWitness> witnesses;
  std::uint64_t total_matches = 0;   // may exceed witnesses.size()
  std::uint64_t pairs_scanned = 0;
  std::size_t horizon_used = 0;
  bool horizon_clamped = false;
};

// Finite-horizon evidence against the iterate-Cauchy criterion: scans index
// pairs p < q <= horizon where d(x_p, Tx_p) <= d(x_p, x_q), returning those
// with Delta >= 1 - eps_Delta while delta >= eps_delta. An empty list means
// the trace shows no such evidence at this horizon.
DiagnosticResult sequential_diagnostic(const MetricSpace& space,
                                       const OrbitTrace& trace,
                                       const DiagnosticThresholds& thresholds);

// Finite-horizon version of the orbit test function at level s:
// sup of d(x_{n+1}, x_{m+1}) / d(x_n, x_m) over pairs with
// d(x_n, x_{n+1}) <= s <= d(x_n, x_m); 0 when no pair qualifies.
Scalar extract_psi(const MetricSpace& space, const OrbitTrace& trace,
                   const Scalar& s, std::size_t horizon);

std::vector<std::pair<Scalar, Scalar>> extract_psi_curve(
    const MetricSpace& space, const OrbitTrace& trace,
    std::span<const Scalar> grid, std::size_t horizon);

// Largest pairwise distance among the last tail_window trace points.
Scalar cauchy_estimate(const MetricSpace& space, const OrbitTrace& trace,
                       std::size_t tail_window);

// The terminal point and its residual gap when the trace ended on a fixed
// point; absent otherwise.
std::optional<std::pair<Point, Scalar>> fixed_point_of(const OrbitTrace& trace);

// CSV columns: n, point_id, coordinate (blank for matrix-backed carriers),
// delta_n (blank on the last row).
std::string orbit_csv(const MetricSpace& space, const OrbitTrace& trace);

std::string to_json_text(const MetricSpace& space, const OrbitTrace& trace);
std::string to_json_text(const DiagnosticResult& result);

}  // namespace fpl
