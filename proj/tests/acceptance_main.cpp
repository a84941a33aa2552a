// Acceptance gate: one timed line per criterion, exit code counts failures.
#include "conditions.hpp"
#include "enumerator.hpp"
#include "errors.hpp"
#include "gallery.hpp"
#include "metric_space.hpp"
#include "orbit.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace fpl;

namespace {

struct Check {
  bool ok = true;
  std::string reason;

  void expect(bool cond, const std::string& why) {
    if (!cond && ok) {
      ok = false;
      reason = why;
    }
  }
};

bool feasible_psi_is_half(const MetricSpace& space, const OrbitTrace& trace,
                          const char* s) {
  return extract_psi(space, trace, Scalar::exact(s), 58).rational() ==
         Rational(1, 2);
}

// -- criterion 1: breakpoint function ---------------------------------------

void theta_suite(Check& c) {
  c.expect(theta(Scalar{0}).rational() == Rational(1), "theta(0) != 1");
  c.expect(theta(Scalar::exact("3/4")).rational() == Rational(4, 7),
           "theta(3/4) != 4/7");
  double golden = (std::sqrt(5.0) - 1.0) / 2.0;  // r^2 = 1 - r
  c.expect(std::fabs(theta_branch(1, golden) - theta_branch(2, golden)) < 1e-12,
           "branch mismatch at the golden point");
  double root_half = 1.0 / std::sqrt(2.0);
  c.expect(std::fabs(theta_branch(2, root_half) - theta_branch(3, root_half)) <
               1e-12,
           "branch mismatch at 1/sqrt(2)");
  const Scalar half = Scalar::exact("1/2"), one{1};
  for (int k = 0; k < 10000; ++k) {
    Scalar v = theta(Scalar::exact(Rational(k, 10000)));
    if (half.raw_cmp(v) >= 0 || v.raw_cmp(one) > 0) {
      c.expect(false, "theta grid value left (1/2, 1] at k=" + std::to_string(k));
      return;
    }
  }
}

// -- criterion 2: metric axioms ---------------------------------------------

void axiom_suite(Check& c) {
  for (std::size_t N : {2u, 10u, 50u, 200u}) {
    auto [space, map] = suzuki_space(Rational(3, 5), N, Rational(3, 4));
    (void)map;
    AxiomReport r = verify_metric_axioms(space, 1);
    c.expect(r.passed, "suzuki truncation N=" + std::to_string(N) + " failed");
    if (!c.ok) return;
  }
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      AxiomReport r = verify_metric_axioms(random_finite_metric(n, seed), 1);
      c.expect(r.passed, "random space n=" + std::to_string(n) + " seed=" +
                             std::to_string(seed) + " failed");
      if (!c.ok) return;
    }
}

// -- criterion 3: implication chain -----------------------------------------

void chain_suite(Check& c) {
  std::vector<Scalar> etas = {Scalar::exact("1/8"), Scalar::exact("1/4"),
                              Scalar::exact("1/2")};
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      MetricSpace space = random_finite_metric(n, seed);
      AuditReport audit = implication_audit(space);
      c.expect(audit.chain_violations == 0,
               "chain violation at n=" + std::to_string(n) + " seed=" +
                   std::to_string(seed));
      EtaAudit eta = eta_monotonicity_audit(space, etas);
      c.expect(eta.violations == 0, "eta monotonicity broke at n=" +
                                        std::to_string(n) + " seed=" +
                                        std::to_string(seed));
      if (!c.ok) return;
    }
}

// -- criterion 4: fixed-point census ----------------------------------------

void census_suite(Check& c) {
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      MetricSpace space = random_finite_metric(n, seed);
      CensusReport r = fixed_point_census(space, ConditionKind::suzuki_half_strict());
      c.expect(r.maps_satisfying >= n, "fewer satisfying maps than constants");
      c.expect(r.maps_satisfying == r.maps_satisfying_with_unique_fixed_point,
               "satisfying map without a unique fixed point, n=" +
                   std::to_string(n) + " seed=" + std::to_string(seed));
      c.expect(r.guarantee_failures == 0,
               "orbit missed the fixed point, n=" + std::to_string(n) +
                   " seed=" + std::to_string(seed));
      if (!c.ok) return;
    }

  MetricSpace d3 = random_finite_metric(3, 0);
  SelfMap identity = SelfMap::table(d3, {0, 1, 2}, "identity");
  Certificate cert =
      certify(d3, identity, ConditionKind::half_nonstrict(), Scope::exhaustive());
  c.expect(cert.satisfied(), "identity fails half_nonstrict");
  std::size_t fixed = 0;
  for (std::size_t i = 0; i < 3; ++i)
    if (identity.apply(d3, Point::at(i)) == Point::at(i)) ++fixed;
  c.expect(fixed == 3, "identity lost fixed points");
}

// -- criterion 5: truncated shift reconstruction ----------------------------

void shift_suite(Check& c) {
  auto [space, map] = suzuki_space(Rational(3, 5), 40, Rational(3, 4));

  auto domain = map.certification_domain(space);
  c.expect(domain.has_value() && domain->size() == 42, "unexpected domain size");
  for (const Point& p : *domain)
    if (map.apply(space, p) == p) {
      c.expect(false, "fixed point at " + space.id_of(p));
      break;
    }

  Certificate cert = certify(space, map, ConditionKind::eta_nonstrict(Scalar::exact("3/5")),
                             Scope::exhaustive());
  c.expect(cert.satisfied(), "eta_nonstrict(3/5) not satisfied");
  c.expect(cert.pairs_checked == 42u * 42u, "wrong exhaustive pair count");

  OrbitTrace orbit = iterate(space, map, space.point("0"), 1000);
  c.expect(orbit.termination == OrbitTrace::Termination::CarrierBoundary,
           "orbit should end at the truncation");
  c.expect(orbit.deltas.size() == 42, "orbit gap count");
  const Rational r(3, 4);
  Rational gap = (1 - r) * (1 + r);
  for (std::size_t k = 2; k < orbit.deltas.size(); ++k) {
    if (orbit.deltas[k].rational() != gap) {
      c.expect(false, "gap " + std::to_string(k) + " is not (1-r)(1+r)r^n");
      break;
    }
    gap *= r;
  }

  c.expect(Scalar{1}.lt(minimal_lipschitz(space, map)),
           "minimal Lipschitz constant should exceed 1");
}

// -- criterion 6: dyadic probe reconstruction -------------------------------

void probe_suite(Check& c) {
  DyadicProbe probe(64);
  const MetricSpace& space = probe.space();
  const SelfMap& map = probe.map();

  for (std::size_t k = 0; k + 2 < probe.u_terms().size(); ++k) {
    Point image = map.apply(space, Point::coord(probe.u(k)));
    if (!space.coordinate(image).eq(probe.u(k + 2))) {
      c.expect(false, "T(u_" + std::to_string(k) + ") != u_" + std::to_string(k + 2));
      break;
    }
  }

  ProbeBattery battery = probe_battery(probe, 2026, 10000, 1000);
  c.expect(battery.rho_violations == 0, "rho contraction breached");
  c.expect(battery.orbit_violations == 0, "an orbit left the u-ladder");
  c.expect(battery.t_of_one == "1/4", "T(1) != 1/4");
  c.expect(battery.t_of_quarter == "21/64", "T(1/4) != u_2");

  Certificate cert = certify(space, map, ConditionKind::suzuki_half_strict(),
                             Scope::sampled(7, 10000));
  c.expect(cert.satisfied(), "sampled suzuki_half_strict violated");
  c.expect(cert.pairs_checked == 10000, "sampled pair count");
}

// -- criterion 7: sequential diagnostic contrast -----------------------------

void diagnostic_suite(Check& c) {
  DiagnosticThresholds calm(Scalar::exact("1/100"), Scalar::exact("1/100"), 500);

  GalleryItem halving = make_gallery("halving");
  OrbitTrace down = iterate(halving.space, halving.map, Point::coord(Scalar{1}), 520);
  DiagnosticResult r1 = sequential_diagnostic(halving.space, down, calm);
  c.expect(!r1.horizon_clamped && r1.total_matches == 0,
           "halving orbit produced counterevidence");

  auto [shift_space, shift_map] = suzuki_space(Rational(3, 5), 40, Rational(3, 4));
  OrbitTrace along = iterate(shift_space, shift_map, shift_space.point("0"), 1000);
  DiagnosticResult r2 = sequential_diagnostic(shift_space, along, calm);
  c.expect(r2.total_matches == 0, "truncated shift orbit produced counterevidence");

  GalleryItem divergent = make_gallery("divergent");
  MetricSpace fspace = divergent.space.to_float(1e-9);
  OrbitTrace up = iterate(fspace, divergent.map,
                          Point::coord(Scalar::floating(1.0, 1e-9)), 5000);
  DiagnosticThresholds loud(Scalar::exact("1/100"), Scalar::exact("1/2"), 5000);
  DiagnosticResult r3 = sequential_diagnostic(fspace, up, loud);
  c.expect(r3.total_matches > 0, "divergent orbit produced no counterevidence");
  c.expect(!r3.witnesses.empty(), "empty witness list");
  Scalar bar = Scalar{1} - loud.eps_Delta;
  for (const auto& w : r3.witnesses) {
    Scalar delta = fspace.distance(up.points[w.p], up.points[w.q]);
    Scalar Delta = capital_delta(fspace, up, w.p, w.q);
    bool replayed = delta.identical(w.delta) && Delta.identical(w.Delta) &&
                    up.deltas[w.p].le(delta) && delta.ge(loud.eps_delta) &&
                    Delta.ge(bar);
    if (!replayed) {
      c.expect(false, "witness (" + std::to_string(w.p) + "," +
                          std::to_string(w.q) + ") failed replay");
      break;
    }
  }
}

// -- criterion 8: empirical orbit test function ------------------------------

void psi_suite(Check& c) {
  GalleryItem halving = make_gallery("halving");
  OrbitTrace down = iterate(halving.space, halving.map, Point::coord(Scalar{1}), 80);
  for (const char* s : {"1/2", "1/4", "1/8", "3/8", "1/3", "9/10",
                        "1/576460752303423488"})
    if (!feasible_psi_is_half(halving.space, down, s)) {
      c.expect(false, std::string("psi(") + s + ") != 1/2");
      break;
    }
  for (const char* s : {"2", "5", "1/2305843009213693952"})
    if (!extract_psi(halving.space, down, Scalar::exact(s), 58).raw_zero()) {
      c.expect(false, std::string("psi(") + s + ") != 0");
      break;
    }

  std::vector<Scalar> grid = {Scalar{0},
                              Scalar::exact("1/8"),
                              Scalar::exact("1/4"),
                              Scalar::exact("1/2"),
                              Scalar::exact("3/4"),
                              Scalar{1},
                              Scalar{2}};
  const Scalar zero{0}, one{1};
  for (std::uint64_t seed = 0; seed < 5 && c.ok; ++seed) {
    MetricSpace space = random_finite_metric(3, seed);
    SelfMapEnumerator maps(3);
    while (auto images = maps.next()) {
      SelfMap map = SelfMap::table(space, *images);
      if (!certify(space, map, ConditionKind::suzuki_half_strict(),
                   Scope::exhaustive())
               .satisfied())
        continue;
      for (std::size_t start = 0; start < 3; ++start) {
        OrbitTrace orbit = iterate(space, map, Point::at(start), 10);
        for (const auto& [s, value] :
             extract_psi_curve(space, orbit, grid, 10))
          if (value.raw_cmp(zero) < 0 || value.raw_cmp(one) > 0) {
            c.expect(false, "psi left [0,1] on a certified orbit");
            break;
          }
      }
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_ms;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "breakpoint function suite", 1000, theta_suite},
      {2, "metric axiom sweep", 10000, axiom_suite},
      {3, "implication chain audit", 60000, chain_suite},
      {4, "fixed-point census", 60000, census_suite},
      {5, "truncated shift reconstruction", 5000, shift_suite},
      {6, "dyadic probe reconstruction", 10000, probe_suite},
      {7, "sequential diagnostic contrast", 30000, diagnostic_suite},
      {8, "empirical orbit test function", 5000, psi_suite},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Check check;
    auto begin = std::chrono::steady_clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    auto end = std::chrono::steady_clock::now();
    double ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(
            end - begin)
            .count();
    if (ms > criterion.budget_ms)
      check.expect(false, "over budget (" + std::to_string(criterion.budget_ms) +
                              " ms)");
    std::printf("criterion %d (%s): %s in %.0f ms%s%s\n", criterion.id,
                criterion.name, check.ok ? "PASS" : "FAIL", ms,
                check.ok ? "" : " -- ", check.ok ? "" : check.reason.c_str());
    if (!check.ok) ++failures;
  }
  return failures;
}
