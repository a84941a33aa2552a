#include "gallery.hpp"

#include "call_expr.hpp"
#include "errors.hpp"
#include "orbit.hpp"

#include <charconv>

#include "json.hpp"

namespace fpl {

using nlohmann::ordered_json;

namespace {

const Rational& one_third() {
  static const Rational v(1, 3);
  return v;
}

std::size_t parse_size(const std::string& text, const char* what) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(std::string(what) + " must be a nonnegative integer, got " + text);
  return out;
}

}  // namespace

Rational suzuki_default_r(const Rational& eta) {
  if (eta <= Rational(1, 2)) throw ParamError("eta must exceed 1/2, got " + format_rational(eta));
  Rational floor = (1 - eta) / eta;
  const Rational analytic(4420, 6250);  // 0.7072, just above 1/sqrt(2)
  if (floor < analytic) floor = analytic;
  for (int k = 1; k < 64; ++k) {
    Rational r(k, 64);
    if (r > floor) return r;
  }
  throw ParamError("no 1/64-grid constant fits eta = " + format_rational(eta));
}

std::pair<MetricSpace, SelfMap> suzuki_space(const Rational& eta, std::size_t N,
                                             std::optional<Rational> r_override) {
  if (eta <= Rational(1, 2))
    throw ParamError("eta must exceed 1/2, got " + format_rational(eta));
  if (N < 2) throw ParamError("truncation needs N >= 2");
  Rational r = r_override ? *r_override : suzuki_default_r(eta);
  if (r <= 0 || r >= 1)
    throw ParamError("r must lie in (0, 1), got " + format_rational(r));
  if (r * r <= Rational(1, 2))
    throw ParamError("r must exceed 1/sqrt(2): need r^2 > 1/2, got " +
                     format_rational(r));
  if (Rational(1) / (1 + r) >= eta)
    throw ParamError("need (1+r)^-1 < eta; got r = " + format_rational(r) +
                     ", eta = " + format_rational(eta));

  std::vector<std::string> ids = {"0", "1"};
  std::vector<Scalar> coords = {Scalar{0}, Scalar{1}};
  Rational u = 1 - r;  // u_0 = (1-r)(-r)^0
  for (std::size_t n = 0; n <= N; ++n) {
    ids.push_back("u" + std::to_string(n));
    coords.push_back(Scalar::exact(u));
    u *= -r;
  }
  MetricSpace space = MetricSpace::line_embedded(
      "suzuki(eta=" + format_rational(eta) + ",r=" + format_rational(r) +
          ",N=" + std::to_string(N) + ")",
      std::move(ids), std::move(coords));

  std::vector<std::size_t> images(space.size(), SelfMap::kNoImage);
  images[0] = 1;      // T0 = 1
  images[1] = 2;      // T1 = u0
  for (std::size_t n = 0; n < N; ++n) images[2 + n] = 2 + n + 1;
  SelfMap map = SelfMap::table(space, std::move(images), "shift");
  return {std::move(space), std::move(map)};
}

namespace {

std::shared_ptr<const std::vector<Rational>> probe_u_terms(unsigned B) {
  if (B < 4) throw ParamError("bound must satisfy B >= 4");
  auto u = std::make_shared<std::vector<Rational>>();
  Rational pow4(4);  // 4^(n+1)
  while (pow4 <= pow2(B)) {
    u->push_back((1 - Rational(1) / pow4) / 3);
    pow4 *= 4;
  }
  return u;
}

MetricSpace probe_carrier(unsigned B) {
  const BigInt den_cap = pow2(B);
  auto member = [den_cap](const Scalar& c) {
    if (!c.is_rational()) return false;
    const Rational& q = c.rational();
    if (q < 0 || q > 1) return false;
    const BigInt den = boost::multiprecision::denominator(q);
    return is_power_of_two(den) && den <= den_cap;
  };
  // samples stay well inside the truncation so single map applications
  // always land on a materialized term
  const unsigned sample_exp = std::min(B, 32u);
  auto sampler = [sample_exp](std::mt19937_64& rng) {
    unsigned e = static_cast<unsigned>(rng() % (sample_exp + 1));
    std::uint64_t k = rng() % ((static_cast<std::uint64_t>(1) << e) + 1);
    return Scalar::exact(Rational(BigInt(k), pow2(e)));
  };
  return MetricSpace::line_lazy("dyadic_probe(B=" + std::to_string(B) + ")",
                                member, sampler, /*float_convertible=*/false);
}

SelfMap probe_rule(const MetricSpace& space,
                   std::shared_ptr<const std::vector<Rational>> terms) {
  auto rule = [terms](const Scalar& x) -> Scalar {
    const Rational& q = x.rational();
    Rational bar = boost::multiprecision::abs(q - one_third()) / 7;
    std::size_t start = 0;
    for (std::size_t k = 0; k < terms->size(); ++k)
      if ((*terms)[k] == q) { start = k + 1; break; }
    for (std::size_t m = start; m < terms->size(); ++m) {
      Rational rho_um = boost::multiprecision::abs((*terms)[m] - one_third());
      if (rho_um < bar) return Scalar::exact((*terms)[m]);
    }
    throw BoundaryError("no materialized term below rho(x)/7; raise B");
  };
  return SelfMap::rule(space, rule, "probe");
}

}  // namespace

DyadicProbe::DyadicProbe(unsigned B)
    : B_(B), u_(probe_u_terms(B)), space_(probe_carrier(B)),
      map_(probe_rule(space_, u_)) {}

Scalar DyadicProbe::u(std::size_t n) const {
  if (n >= u_->size()) throw DomainError("u index past the materialized terms");
  return Scalar::exact((*u_)[n]);
}

Scalar DyadicProbe::rho(const Scalar& coord) const {
  return Scalar::exact(boost::multiprecision::abs(coord.rational() - one_third()));
}

std::optional<std::size_t> DyadicProbe::u_index(const Scalar& coord) const {
  if (!coord.is_rational()) return std::nullopt;
  for (std::size_t k = 0; k < u_->size(); ++k)
    if ((*u_)[k] == coord.rational()) return k;
  return std::nullopt;
}

std::pair<MetricSpace, SelfMap> divergent_contractive_map() {
  auto member = [](const Scalar& c) { return c.raw_cmp(Scalar{1}) >= 0; };
  auto sampler = [](std::mt19937_64& rng) {
    return Scalar::exact(Rational(1) + Rational(rng() % 9901, 100));
  };
  MetricSpace space = MetricSpace::line_lazy("divergent", member, sampler);
  SelfMap map = SelfMap::rule(
      space, [](const Scalar& x) { return x + Scalar{1} / x; }, "x+1/x");
  return {std::move(space), std::move(map)};
}

std::pair<MetricSpace, SelfMap> halving_map() {
  auto member = [](const Scalar&) { return true; };
  auto sampler = [](std::mt19937_64& rng) {
    return Scalar::exact(Rational(rng() % 10001, 100));
  };
  MetricSpace space = MetricSpace::line_lazy("halving", member, sampler);
  SelfMap map =
      SelfMap::rule(space, [](const Scalar& x) { return x / Scalar{2}; }, "x/2");
  return {std::move(space), std::move(map)};
}

GalleryItem make_gallery(std::string_view expr) {
  CallExpr call = parse_call_expr(expr);
  if (call.name == "suzuki") {
    std::string eta = call.arg("eta");
    std::string N = call.arg("N");
    if (eta.empty() || N.empty())
      throw ParseError("suzuki needs eta= and N= parameters");
    std::optional<Rational> r;
    if (std::string rv = call.arg("r"); !rv.empty()) r = parse_rational(rv);
    auto [space, map] =
        suzuki_space(parse_rational(eta), parse_size(N, "N"), std::move(r));
    return {std::move(space), std::move(map), std::nullopt};
  }
  if (call.name == "dyadic_probe") {
    std::string B = call.arg("B", true);
    if (B.empty()) throw ParseError("dyadic_probe needs a B= parameter");
    DyadicProbe probe(static_cast<unsigned>(parse_size(B, "B")));
    MetricSpace space = probe.space();
    SelfMap map = probe.map();
    return {std::move(space), std::move(map), std::move(probe)};
  }
  if (call.name == "divergent") {
    if (!call.args.empty()) throw ParseError("divergent takes no parameters");
    auto [space, map] = divergent_contractive_map();
    return {std::move(space), std::move(map), std::nullopt};
  }
  if (call.name == "halving") {
    if (!call.args.empty()) throw ParseError("halving takes no parameters");
    auto [space, map] = halving_map();
    return {std::move(space), std::move(map), std::nullopt};
  }
  throw ParseError("unknown gallery: " + call.name);
}

ProbeBattery probe_battery(const DyadicProbe& probe, std::uint64_t seed,
                           std::uint64_t samples, std::uint64_t orbits) {
  ProbeBattery battery;
  const MetricSpace& space = probe.space();
  const SelfMap& map = probe.map();
  std::mt19937_64 rng(seed);

  battery.samples = samples;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Point x = space.sample(rng);
    Point tx = map.apply(space, x);
    Scalar lhs = probe.rho(space.coordinate(tx));
    Scalar rhs = probe.rho(space.coordinate(x)) / Scalar{7};
    if (!lhs.lt(rhs)) ++battery.rho_violations;
  }

  battery.t_of_one = space.id_of(map.apply(space, space.point("1")));
  battery.t_of_quarter = space.id_of(map.apply(space, space.point("1/4")));

  battery.orbits_checked = orbits;
  for (std::uint64_t i = 0; i < orbits; ++i) {
    Point x0 = space.sample(rng);
    OrbitTrace trace = iterate(space, map, x0, 64);
    std::optional<std::size_t> prev;
    for (std::size_t n = 1; n < trace.points.size(); ++n) {
      auto k = probe.u_index(space.coordinate(trace.points[n]));
      if (!k || (prev && *k <= *prev)) {
        ++battery.orbit_violations;
        break;
      }
      prev = k;
    }
  }
  return battery;
}

std::string to_json_text(const ProbeBattery& battery) {
  ordered_json j;
  j["samples"] = battery.samples;
  j["rho_violations"] = battery.rho_violations;
  j["t_of_one"] = battery.t_of_one;
  j["t_of_quarter"] = battery.t_of_quarter;
  j["orbits_checked"] = battery.orbits_checked;
  j["orbit_violations"] = battery.orbit_violations;
  return j.dump(2);
}

}  // namespace fpl
