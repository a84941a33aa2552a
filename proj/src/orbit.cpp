#include "orbit.hpp"

#include "errors.hpp"

#include <sstream>

#include "json.hpp"

namespace fpl {

using nlohmann::ordered_json;

OrbitTrace iterate(const MetricSpace& space, const SelfMap& map, const Point& x0,
                   std::size_t max_steps) {
  if (!space.contains(x0)) throw DomainError("start point is not in the carrier");
  OrbitTrace trace;
  trace.points.push_back(x0);
  const Scalar zero{0};
  for (std::size_t n = 0; n < max_steps; ++n) {
    Point next{trace.points.back()};
    try {
      next = map.apply(space, trace.points.back());
    } catch (const BoundaryError&) {
      trace.termination = OrbitTrace::Termination::CarrierBoundary;
      trace.terminal_index = trace.points.size() - 1;
      return trace;
    }
    Scalar delta = space.distance(trace.points.back(), next);
    trace.points.push_back(std::move(next));
    trace.deltas.push_back(delta);
    if (delta.eq(zero)) {
      trace.termination = OrbitTrace::Termination::FixedPointHit;
      trace.terminal_index = trace.points.size() - 2;
      return trace;
    }
  }
  trace.termination = OrbitTrace::Termination::MaxSteps;
  trace.terminal_index = trace.points.size() - 1;
  return trace;
}

Scalar capital_delta(const MetricSpace& space, const OrbitTrace& trace,
                     std::size_t p, std::size_t q) {
  if (p + 1 >= trace.points.size() || q + 1 >= trace.points.size())
    throw DomainError("trace index lacks a materialized successor");
  Scalar delta = space.distance(trace.points[p], trace.points[q]);
  if (delta.eq(Scalar{0})) return Scalar{0};
  return space.distance(trace.points[p + 1], trace.points[q + 1]) / delta;
}

DiagnosticResult sequential_diagnostic(const MetricSpace& space,
                                       const OrbitTrace& trace,
                                       const DiagnosticThresholds& thresholds) {
  const Scalar zero{0}, one{1};
  if (thresholds.eps_Delta.raw_cmp(zero) <= 0 || thresholds.eps_Delta.raw_cmp(one) >= 0)
    throw ParamError("eps_Delta must lie in (0, 1)");
  if (thresholds.eps_delta.raw_cmp(zero) <= 0)
    throw ParamError("eps_delta must be positive");
  if (trace.points.size() < 2) throw ParamError("trace needs at least two points");

  DiagnosticResult result;
  std::size_t last_with_successor = trace.points.size() - 2;
  result.horizon_used = std::min(thresholds.horizon, last_with_successor);
  result.horizon_clamped = thresholds.horizon > last_with_successor;

  Scalar bar = one - thresholds.eps_Delta;
  for (std::size_t p = 0; p + 1 <= result.horizon_used; ++p) {
    for (std::size_t q = p + 1; q <= result.horizon_used; ++q) {
      ++result.pairs_scanned;
      Scalar delta = space.distance(trace.points[p], trace.points[q]);
      if (!trace.deltas[p].le(delta)) continue;
      if (!delta.ge(thresholds.eps_delta)) continue;
      Scalar Delta = capital_delta(space, trace, p, q);
      if (!Delta.ge(bar)) continue;
      ++result.total_matches;
      if (result.witnesses.size() < thresholds.max_witnesses)
        result.witnesses.push_back({p, q, delta, Delta, true});
    }
  }
  return result;
}

Scalar extract_psi(const MetricSpace& space, const OrbitTrace& trace,
                   const Scalar& s, std::size_t horizon) {
  if (s.raw_cmp(Scalar{0}) < 0) throw ParamError("s must be nonnegative");
  std::size_t last = trace.points.size() >= 2 ? trace.points.size() - 2 : 0;
  std::size_t h = std::min(horizon, last);
  std::optional<Scalar> sup;
  if (trace.points.size() < 2) return Scalar{0};
  for (std::size_t n = 0; n <= h; ++n) {
    if (!trace.deltas[n].le(s)) continue;
    for (std::size_t m = 0; m <= h; ++m) {
      if (m == n) continue;
      Scalar dnm = space.distance(trace.points[n], trace.points[m]);
      if (dnm.raw_zero()) continue;
      if (!s.le(dnm)) continue;
      Scalar ratio =
          space.distance(trace.points[n + 1], trace.points[m + 1]) / dnm;
      if (!sup || sup->lt(ratio)) sup = ratio;
    }
  }
  return sup ? *sup : Scalar{0};
}

std::vector<std::pair<Scalar, Scalar>> extract_psi_curve(
    const MetricSpace& space, const OrbitTrace& trace,
    std::span<const Scalar> grid, std::size_t horizon) {
  std::vector<std::pair<Scalar, Scalar>> curve;
  curve.reserve(grid.size());
  for (const Scalar& s : grid)
    curve.emplace_back(s, extract_psi(space, trace, s, horizon));
  return curve;
}

Scalar cauchy_estimate(const MetricSpace& space, const OrbitTrace& trace,
                       std::size_t tail_window) {
  if (tail_window < 1 || tail_window > trace.points.size())
    throw ParamError("tail_window must lie in [1, trace length]");
  std::size_t begin = trace.points.size() - tail_window;
  Scalar worst{0};
  for (std::size_t i = begin; i < trace.points.size(); ++i)
    for (std::size_t j = i + 1; j < trace.points.size(); ++j) {
      Scalar d = space.distance(trace.points[i], trace.points[j]);
      if (worst.lt(d)) worst = d;
    }
  return worst;
}

std::optional<std::pair<Point, Scalar>> fixed_point_of(const OrbitTrace& trace) {
  if (trace.termination != OrbitTrace::Termination::FixedPointHit)
    return std::nullopt;
  return std::make_pair(trace.points[trace.terminal_index],
                        trace.deltas[trace.terminal_index]);
}

namespace {

std::string termination_text(OrbitTrace::Termination t) {
  switch (t) {
    case OrbitTrace::Termination::MaxSteps: return "max_steps";
    case OrbitTrace::Termination::FixedPointHit: return "fixed_point";
    case OrbitTrace::Termination::CarrierBoundary: return "carrier_boundary";
  }
  return "?";
}

bool has_coordinates(const MetricSpace& space) {
  return space.kind() != MetricSpace::Kind::FiniteExplicit;
}

}  // namespace

std::string orbit_csv(const MetricSpace& space, const OrbitTrace& trace) {
  std::ostringstream out;
  out << "n,point_id,coordinate,delta_n\n";
  for (std::size_t n = 0; n < trace.points.size(); ++n) {
    out << n << ',' << space.id_of(trace.points[n]) << ',';
    if (has_coordinates(space)) out << space.coordinate(trace.points[n]).str();
    out << ',';
    if (n < trace.deltas.size()) out << trace.deltas[n].str();
    out << '\n';
  }
  return out.str();
}

std::string to_json_text(const MetricSpace& space, const OrbitTrace& trace) {
  ordered_json j;
  j["label"] = space.label();
  j["termination"] = termination_text(trace.termination);
  j["terminal_index"] = trace.terminal_index;
  ordered_json pts = ordered_json::array();
  for (const auto& p : trace.points) pts.push_back(space.id_of(p));
  j["points"] = std::move(pts);
  ordered_json deltas = ordered_json::array();
  for (const auto& d : trace.deltas) deltas.push_back(d.str());
  j["deltas"] = std::move(deltas);
  return j.dump(2);
}

std::string to_json_text(const DiagnosticResult& result) {
  ordered_json j;
  j["horizon_used"] = result.horizon_used;
  j["horizon_clamped"] = result.horizon_clamped;
  j["pairs_scanned"] = result.pairs_scanned;
  j["total_matches"] = result.total_matches;
  ordered_json ws = ordered_json::array();
  for (const auto& w : result.witnesses) {
    ordered_json e;
    e["p"] = w.p;
    e["q"] = w.q;
    e["delta"] = w.delta.str();
    e["Delta"] = w.Delta.str();
    e["premise_ok"] = w.premise_ok;
    ws.push_back(std::move(e));
  }
  j["witnesses"] = std::move(ws);
  return j.dump(2);
}

}  // namespace fpl
