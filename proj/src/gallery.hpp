#pragma once

#include "self_map.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fpl {

// Truncated best-constant carrier: the line points {0, 1, u0..uN} with
// u_n = (1-r)(-r)^n, and the shift map T0 = 1, T1 = u0, Tu_n = u_{n+1}.
// u_N stays carrier-only (no image), so the cut fabricates no fixed point.
//
// eta must exceed 1/2. When r is not supplied it is picked as the smallest
// multiple of 1/64 strictly above max((1-eta)/eta, 0.7072); an explicit r
// must satisfy r^2 > 1/2 (so r > 1/sqrt(2)) and (1+r)^-1 < eta.
std::pair<MetricSpace, SelfMap> suzuki_space(
    const Rational& eta, std::size_t N,
    std::optional<Rational> r_override = std::nullopt);

Rational suzuki_default_r(const Rational& eta);

// Incomplete-space probe: dyadic rationals in [0,1] with denominator at most
// 2^B, which exclude the limit 1/3 of the increasing sequence
// u_n = (1 - 4^-(n+1))/3. rho(x) = |x - 1/3| plays the role of the distance
// to the missing limit; it is positive on the whole carrier and rho(u_n) -> 0.
// The probe map sends x to u_m for the minimal m with rho(u_m) < rho(x)/7,
// additionally requiring m > k when x = u_k; so rho(Tx) < rho(x)/7 and the
// map has no fixed point. Requests past the materialized u terms raise
// BoundaryError (raise B).
class DyadicProbe {
public:
  explicit DyadicProbe(unsigned B);  // B >= 4

  const MetricSpace& space() const { return space_; }
  const SelfMap& map() const { return map_; }
  unsigned bound() const { return B_; }

  const std::vector<Rational>& u_terms() const { return *u_; }
  Scalar u(std::size_t n) const;
  Scalar rho(const Scalar& coord) const;
  std::optional<std::size_t> u_index(const Scalar& coord) const;

private:
  unsigned B_;
  std::shared_ptr<const std::vector<Rational>> u_;
  MetricSpace space_;
  SelfMap map_;
};

// The lazy line carrier [1, oo) with the rule x -> x + 1/x: contractive on
// every sampled pair yet divergent along every orbit. Converts to the float
// backend for long horizons.
std::pair<MetricSpace, SelfMap> divergent_contractive_map();

// The lazy full line with x -> x/2, the textbook geometric contraction used
// as the well-behaved contrast case.
std::pair<MetricSpace, SelfMap> halving_map();

// Gallery constructions by name: "suzuki(eta=3/5,N=40)" (optional r=3/4),
// "dyadic_probe(B=64)", "divergent", "halving".
struct GalleryItem {
  MetricSpace space;
  SelfMap map;
  std::optional<DyadicProbe> probe;  // set for dyadic_probe
};

GalleryItem make_gallery(std::string_view expr);

// Seeded spot-check battery over the probe construction: the contraction of
// rho under the map, the two pinned images T(1) and T(1/4), and whether
// sampled orbits climb the u-sequence with strictly increasing indices.
struct ProbeBattery {
  std::uint64_t samples = 0;
  std::uint64_t rho_violations = 0;  // rho(Tx) >= rho(x)/7 occurrences
  std::string t_of_one;
  std::string t_of_quarter;
  std::uint64_t orbits_checked = 0;
  std::uint64_t orbit_violations = 0;  // orbits leaving the u-ladder
};

ProbeBattery probe_battery(const DyadicProbe& probe, std::uint64_t seed,
                           std::uint64_t samples, std::uint64_t orbits);

std::string to_json_text(const ProbeBattery& battery);

}  // namespace fpl
