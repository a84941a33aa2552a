#include "doctest.h"

#include "conditions.hpp"
#include "errors.hpp"
#include "gallery.hpp"
#include "orbit.hpp"

#include <string>
#include <vector>

using namespace fpl;

namespace {

struct Pull {
  MetricSpace space = MetricSpace::line_embedded(
      "pull3", {"a", "b", "c"},
      {Scalar::exact("0"), Scalar::exact("1/4"), Scalar::exact("1")});
  SelfMap map = SelfMap::table(space, {0, 0, 1}, "pull");
};

OrbitTrace halving_trace(const GalleryItem& g, std::size_t steps) {
  return iterate(g.space, g.map, Point::coord(Scalar{1}), steps);
}

}  // namespace

TEST_CASE("orbit reaching a fixed point stops with the repeat recorded") {
  Pull f;
  OrbitTrace t = iterate(f.space, f.map, f.space.point("c"), 50);
  REQUIRE(t.points.size() == 4);
  CHECK(f.space.id_of(t.points[0]) == "c");
  CHECK(f.space.id_of(t.points[1]) == "b");
  CHECK(f.space.id_of(t.points[2]) == "a");
  CHECK(f.space.id_of(t.points[3]) == "a");
  REQUIRE(t.deltas.size() == 3);
  CHECK(t.deltas[0].rational() == Rational(3, 4));
  CHECK(t.deltas[1].rational() == Rational(1, 4));
  CHECK(t.deltas[2].raw_zero());
  CHECK(t.termination == OrbitTrace::Termination::FixedPointHit);
  CHECK(t.terminal_index == 2);
  auto fp = fixed_point_of(t);
  REQUIRE(fp.has_value());
  CHECK(f.space.id_of(fp->first) == "a");
  CHECK(fp->second.raw_zero());
}

TEST_CASE("orbit exhausting its budget reports max_steps") {
  GalleryItem g = make_gallery("halving");
  OrbitTrace t = halving_trace(g, 10);
  REQUIRE(t.points.size() == 11);
  CHECK(t.termination == OrbitTrace::Termination::MaxSteps);
  CHECK(t.terminal_index == 10);
  CHECK(g.space.coordinate(t.points[10]).rational() == Rational(1, 1024));
  CHECK(t.deltas[9].rational() == Rational(1, 1024));
  for (std::size_t i = 0; i + 1 < t.deltas.size(); ++i)
    CHECK(t.deltas[i + 1].lt(t.deltas[i]));
  CHECK_FALSE(fixed_point_of(t).has_value());
}

TEST_CASE("orbit walking off a truncated carrier reports the boundary") {
  GalleryItem g = make_gallery("suzuki(eta=3/5, N=3, r=3/4)");
  OrbitTrace t = iterate(g.space, g.map, g.space.point("0"), 100);
  REQUIRE(t.points.size() == 6);
  CHECK(t.termination == OrbitTrace::Termination::CarrierBoundary);
  CHECK(t.terminal_index == 5);
  CHECK(g.space.id_of(t.points[5]) == "u3");
  std::vector<Rational> expect = {Rational(1), Rational(3, 4), Rational(7, 16),
                                  Rational(21, 64), Rational(63, 256)};
  REQUIRE(t.deltas.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK(t.deltas[i].rational() == expect[i]);
}

TEST_CASE("orbit start must lie in the carrier") {
  GalleryItem g = make_gallery("divergent");
  CHECK_THROWS_AS(iterate(g.space, g.map, Point::coord(Scalar::exact("1/2")), 5),
                  DomainError);
}

TEST_CASE("divergent map iterates exactly and its gap ratio is 24/29") {
  GalleryItem g = make_gallery("divergent");
  OrbitTrace t = iterate(g.space, g.map, Point::coord(Scalar{1}), 4);
  std::vector<Rational> expect = {Rational(1), Rational(2), Rational(5, 2),
                                  Rational(29, 10), Rational(941, 290)};
  REQUIRE(t.points.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK(g.space.coordinate(t.points[i]).rational() == expect[i]);
  CHECK(capital_delta(g.space, t, 1, 3).rational() == Rational(24, 29));
}

TEST_CASE("capital_delta handles coincident points and missing successors") {
  GalleryItem g = make_gallery("halving");
  OrbitTrace t = halving_trace(g, 6);
  CHECK(capital_delta(g.space, t, 1, 3).rational() == Rational(1, 2));
  CHECK(capital_delta(g.space, t, 0, 5).rational() == Rational(1, 2));
  CHECK(capital_delta(g.space, t, 2, 2).raw_zero());
  CHECK_THROWS_AS(capital_delta(g.space, t, 0, 6), DomainError);
  CHECK_THROWS_AS(capital_delta(g.space, t, 6, 0), DomainError);
}

TEST_CASE("halving orbit carries no evidence against the Cauchy criterion") {
  GalleryItem g = make_gallery("halving");
  OrbitTrace t = halving_trace(g, 120);
  DiagnosticThresholds th(Scalar::exact("1/100"), Scalar::exact("1/100"), 500);
  DiagnosticResult r = sequential_diagnostic(g.space, t, th);
  CHECK(r.total_matches == 0);
  CHECK(r.witnesses.empty());
  CHECK(r.horizon_used == 119);
  CHECK(r.horizon_clamped);
  CHECK(r.pairs_scanned == 119u * 120u / 2u);
}

TEST_CASE("divergent orbit yields replayable diagnostic witnesses") {
  GalleryItem g = make_gallery("divergent");
  OrbitTrace t = iterate(g.space, g.map, Point::coord(Scalar{1}), 10);
  DiagnosticThresholds th(Scalar::exact("1/2"), Scalar::exact("1/2"), 10);
  DiagnosticResult r = sequential_diagnostic(g.space, t, th);
  CHECK(r.horizon_used == 9);
  CHECK(r.horizon_clamped);
  REQUIRE(r.total_matches > 0);
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.witnesses.size() <= 100);
  Scalar bar = Scalar{1} - Scalar::exact("1/2");
  for (const auto& w : r.witnesses) {
    CHECK(w.p < w.q);
    CHECK(w.premise_ok);
    Scalar delta = g.space.distance(t.points[w.p], t.points[w.q]);
    CHECK(delta.identical(w.delta));
    CHECK(t.deltas[w.p].le(delta));
    CHECK(delta.ge(Scalar::exact("1/2")));
    Scalar Delta = capital_delta(g.space, t, w.p, w.q);
    CHECK(Delta.identical(w.Delta));
    CHECK(Delta.ge(bar));
  }
}

TEST_CASE("diagnostic witness list is capped but the count is not") {
  GalleryItem g = make_gallery("divergent");
  OrbitTrace t = iterate(g.space, g.map, Point::coord(Scalar{1}), 12);
  DiagnosticThresholds th(Scalar::exact("1/2"), Scalar::exact("1/2"), 12);
  th.max_witnesses = 3;
  DiagnosticResult r = sequential_diagnostic(g.space, t, th);
  CHECK(r.witnesses.size() == 3);
  CHECK(r.total_matches > 3);
}

TEST_CASE("diagnostic thresholds are validated") {
  GalleryItem g = make_gallery("halving");
  OrbitTrace t = halving_trace(g, 5);
  CHECK_THROWS_AS(sequential_diagnostic(
                      g.space, t,
                      DiagnosticThresholds(Scalar{1}, Scalar::exact("1/2"), 5)),
                  ParamError);
  CHECK_THROWS_AS(sequential_diagnostic(
                      g.space, t,
                      DiagnosticThresholds(Scalar::exact("1/2"), Scalar{0}, 5)),
                  ParamError);
  OrbitTrace stub;
  stub.points.push_back(Point::coord(Scalar{1}));
  CHECK_THROWS_AS(
      sequential_diagnostic(
          g.space, stub,
          DiagnosticThresholds(Scalar::exact("1/2"), Scalar::exact("1/2"), 5)),
      ParamError);
}

TEST_CASE("orbit test function level sweep on the halving trace") {
  GalleryItem g = make_gallery("halving");
  OrbitTrace t = halving_trace(g, 100);
  auto psi = [&](const char* s, std::size_t h) {
    return extract_psi(g.space, t, Scalar::exact(s), h);
  };
  const Rational half(1, 2);
  CHECK(psi("1/2", 58).rational() == half);
  CHECK(psi("1/4", 58).rational() == half);
  CHECK(psi("1/8", 58).rational() == half);
  CHECK(psi("3/8", 58).rational() == half);
  CHECK(psi("1/3", 58).rational() == half);
  CHECK(psi("9/10", 58).rational() == half);
  CHECK(psi("1/576460752303423488", 58).rational() == half);
  CHECK(psi("288230376151711743/576460752303423488", 58).rational() == half);
  CHECK(psi("2", 58).raw_zero());
  CHECK(psi("1/2305843009213693952", 58).raw_zero());
  CHECK(psi("0", 58).raw_zero());
  CHECK(psi("1/576460752303423488", 10).raw_zero());
  CHECK_THROWS_AS(psi("-1/2", 58), ParamError);
}

TEST_CASE("orbit test function curve matches pointwise evaluation") {
  GalleryItem g = make_gallery("halving");
  OrbitTrace t = halving_trace(g, 40);
  std::vector<Scalar> grid = {Scalar::exact("1/2"), Scalar::exact("1/3"),
                              Scalar{2}};
  auto curve = extract_psi_curve(g.space, t, grid, 30);
  REQUIRE(curve.size() == 3);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(curve[i].first.identical(grid[i]));
    CHECK(curve[i].second.eq(extract_psi(g.space, t, grid[i], 30)));
  }
  CHECK(curve[0].second.rational() == Rational(1, 2));
  CHECK(curve[2].second.raw_zero());
}

TEST_CASE("tail spread of a halving orbit is the outermost tail gap") {
  GalleryItem g = make_gallery("halving");
  OrbitTrace t = halving_trace(g, 20);
  CHECK(cauchy_estimate(g.space, t, 5).rational() == Rational(15, 1048576));
  CHECK(cauchy_estimate(g.space, t, 1).raw_zero());
  CHECK(cauchy_estimate(g.space, t, 21).rational() ==
        Rational(1) - Rational(1, 1 << 20));
  CHECK_THROWS_AS(cauchy_estimate(g.space, t, 0), ParamError);
  CHECK_THROWS_AS(cauchy_estimate(g.space, t, 22), ParamError);
}

TEST_CASE("consecutive gaps shrink strictly whenever the weak premise holds") {
  MetricSpace s = MetricSpace::line_embedded(
      "line4", {"p0", "p1", "p2", "p3"},
      {Scalar::exact("0"), Scalar::exact("1/4"), Scalar::exact("5/8"),
       Scalar::exact("2")});
  ConditionKind weak = ConditionKind::weak_contractive();
  std::vector<std::size_t> images(4, 0);
  std::size_t certified = 0;
  for (std::size_t code = 0; code < 256; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < 4; ++i, c /= 4) images[i] = c % 4;
    SelfMap t = SelfMap::table(s, images);
    if (!certify(s, t, weak, Scope::exhaustive()).satisfied()) continue;
    ++certified;
    for (std::size_t start = 0; start < 4; ++start) {
      OrbitTrace orbit = iterate(s, t, Point::at(start), 12);
      for (std::size_t i = 0; i + 1 < orbit.deltas.size(); ++i)
        CHECK(orbit.deltas[i + 1].lt(orbit.deltas[i]));
    }
  }
  CHECK(certified > 0);
}

TEST_CASE("orbit CSV lists coordinates and leaves the last gap blank") {
  GalleryItem g = make_gallery("halving");
  OrbitTrace t = halving_trace(g, 3);
  CHECK(orbit_csv(g.space, t) ==
        "n,point_id,coordinate,delta_n\n"
        "0,1,1,1/2\n"
        "1,1/2,1/2,1/4\n"
        "2,1/4,1/4,1/8\n"
        "3,1/8,1/8,\n");

  MetricSpace disc = MetricSpace::finite_explicit(
      "d2", {"a", "b"},
      {Scalar{0}, Scalar{1}, Scalar{1}, Scalar{0}});
  SelfMap to_a = SelfMap::table(disc, {0, 0}, "collapse");
  OrbitTrace u = iterate(disc, to_a, disc.point("b"), 5);
  CHECK(orbit_csv(disc, u) ==
        "n,point_id,coordinate,delta_n\n"
        "0,b,,1\n"
        "1,a,,0\n"
        "2,a,,\n");
}

TEST_CASE("trace and diagnostic JSON carry the documented fields") {
  Pull f;
  OrbitTrace t = iterate(f.space, f.map, f.space.point("c"), 50);
  std::string j = to_json_text(f.space, t);
  CHECK(j.find("\"termination\": \"fixed_point\"") != std::string::npos);
  CHECK(j.find("\"terminal_index\": 2") != std::string::npos);
  CHECK(j.find("\"points\"") != std::string::npos);
  CHECK(j.find("\"deltas\"") != std::string::npos);
  CHECK(j.find("\"3/4\"") != std::string::npos);

  GalleryItem g = make_gallery("divergent");
  OrbitTrace d = iterate(g.space, g.map, Point::coord(Scalar{1}), 8);
  DiagnosticResult r = sequential_diagnostic(
      g.space, d, DiagnosticThresholds(Scalar::exact("1/2"), Scalar::exact("1/2"), 8));
  std::string dj = to_json_text(r);
  CHECK(dj.find("\"horizon_used\": 7") != std::string::npos);
  CHECK(dj.find("\"horizon_clamped\": true") != std::string::npos);
  CHECK(dj.find("\"total_matches\"") != std::string::npos);
  CHECK(dj.find("\"premise_ok\": true") != std::string::npos);
}
