#pragma once

#include "conditions.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fpl {

// Lexicographic stream of all n^n self-map image tables on n points.
class SelfMapEnumerator {
public:
  explicit SelfMapEnumerator(std::size_t n);  // 1 <= n <= 6

  std::optional<std::vector<std::size_t>> next();
  std::uint64_t total() const { return total_; }

private:
  std::size_t n_;
  std::uint64_t total_;
  std::vector<std::size_t> current_;
  bool done_ = false;
  bool started_ = false;
};

// All-pairs shortest-path repair: keeps the diagonal and shrinks entries
// until every triangle closes. Input is a row-major n-by-n matrix.
std::vector<Scalar> metric_closure(std::vector<Scalar> matrix, std::size_t n);

// A seeded random finite metric space: symmetric positive entries on the
// 1/8 grid in [1/8, 8], repaired by metric_closure. Always passes
// verify_metric_axioms (a degenerate draw is redrawn, then rejected).
MetricSpace random_finite_metric(std::size_t n, std::uint64_t seed);

// Exhaustive audit of the implication chain
// banach => contractive => suzuki_half_strict => weak_contractive
// over every self-map of the space. The banach representative per map is its
// minimal_lipschitz constant when that is below 1, else a near-1 stand-in,
// so the banach verdict matches "some r in [0,1) works".
struct AuditReport {
  std::string space_label;
  std::uint64_t maps_total = 0;
  std::uint64_t banach_count = 0;
  std::uint64_t contractive_count = 0;
  std::uint64_t suzuki_half_strict_count = 0;
  std::uint64_t weak_contractive_count = 0;
  std::uint64_t chain_violations = 0;
  std::vector<std::vector<std::size_t>> violating_maps;  // first 16
};

AuditReport implication_audit(const MetricSpace& space);

// Per-map verdict monotonicity of eta_strict along an ascending eta list:
// once satisfied at some eta, it must stay satisfied at every larger eta.
struct EtaAudit {
  std::uint64_t maps_total = 0;
  std::vector<std::uint64_t> satisfied_counts;  // one per eta, ascending
  std::uint64_t violations = 0;
};

EtaAudit eta_monotonicity_audit(const MetricSpace& space,
                                std::span<const Scalar> etas_ascending);

// Census of one condition over all self-maps: how many satisfy it, how many
// of those have exactly one fixed point. For suzuki_half_strict the census
// additionally drives every orbit of every satisfying map and records any
// map whose orbits fail to reach its unique fixed point; other conditions
// make no such claim and leave those fields at zero.
struct CensusReport {
  std::string space_label;
  std::string condition;
  std::vector<std::pair<std::string, std::string>> params;
  std::uint64_t maps_total = 0;
  std::uint64_t maps_satisfying = 0;
  std::uint64_t maps_satisfying_with_unique_fixed_point = 0;
  std::uint64_t guarantee_failures = 0;  // suzuki_half_strict only
  std::vector<std::vector<std::size_t>> counterexamples;  // first 16
};

CensusReport fixed_point_census(const MetricSpace& space,
                                const ConditionKind& condition);

std::string to_json_text(const AuditReport& report);
std::string to_json_text(const CensusReport& report);

}  // namespace fpl
