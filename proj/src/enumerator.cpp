#include "enumerator.hpp"

#include "errors.hpp"
#include "orbit.hpp"

#include "json.hpp"

namespace fpl {

using nlohmann::ordered_json;

SelfMapEnumerator::SelfMapEnumerator(std::size_t n) : n_(n) {
  if (n < 1 || n > 6) throw ParamError("map enumeration supports 1 <= n <= 6");
  total_ = 1;
  for (std::size_t i = 0; i < n; ++i) total_ *= n;
  current_.assign(n, 0);
}

std::optional<std::vector<std::size_t>> SelfMapEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return current_;
  }
  for (std::size_t i = n_; i-- > 0;) {
    if (++current_[i] < n_) return current_;
    current_[i] = 0;
  }
  done_ = true;
  return std::nullopt;
}

std::vector<Scalar> metric_closure(std::vector<Scalar> matrix, std::size_t n) {
  if (matrix.size() != n * n) throw ParamError("matrix is not n-by-n");
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Scalar via = matrix[i * n + k] + matrix[k * n + j];
        if (via.lt(matrix[i * n + j])) matrix[i * n + j] = via;
      }
  return matrix;
}

MetricSpace random_finite_metric(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw ParamError("need n >= 2");
  if (n > 26) throw ParamError("need n <= 26");
  static const char* names = "abcdefghijklmnopqrstuvwxyz";
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.emplace_back(1, names[i]);

  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<Scalar> m(n * n, Scalar{0});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Scalar d = Scalar::exact(Rational(1 + rng() % 64, 8));
        m[i * n + j] = d;
        m[j * n + i] = d;
      }
    m = metric_closure(std::move(m), n);
    bool positive = true;
    for (std::size_t i = 0; i < n && positive; ++i)
      for (std::size_t j = i + 1; j < n && positive; ++j)
        if (m[i * n + j].raw_zero()) positive = false;
    if (!positive) continue;
    return MetricSpace::finite_explicit(
        "random(n=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")",
        ids, std::move(m));
  }
  throw DegenerateInputError("random draws kept collapsing off-diagonal entries");
}

namespace {

std::size_t count_fixed_points(const std::vector<std::size_t>& images) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < images.size(); ++i)
    if (images[i] == i) ++count;
  return count;
}

}  // namespace

AuditReport implication_audit(const MetricSpace& space) {
  if (!space.is_finite() || space.size() > 5)
    throw ParamError("audit needs a finite space with n <= 5");
  AuditReport report;
  report.space_label = space.label();
  const Scalar one{1};
  const Scalar near_one = Scalar::exact(Rational(63, 64));

  SelfMapEnumerator maps(space.size());
  while (auto images = maps.next()) {
    ++report.maps_total;
    SelfMap map = SelfMap::table(space, *images);
    Scalar ml = minimal_lipschitz(space, map);
    Scalar banach_r = ml.raw_cmp(one) < 0 ? ml : near_one;
    bool banach =
        certify(space, map, ConditionKind::banach(banach_r), Scope::exhaustive())
            .satisfied();
    bool contractive =
        certify(space, map, ConditionKind::contractive(), Scope::exhaustive())
            .satisfied();
    bool shs = certify(space, map, ConditionKind::suzuki_half_strict(),
                       Scope::exhaustive())
                   .satisfied();
    bool weak = certify(space, map, ConditionKind::weak_contractive(),
                        Scope::exhaustive())
                    .satisfied();
    report.banach_count += banach;
    report.contractive_count += contractive;
    report.suzuki_half_strict_count += shs;
    report.weak_contractive_count += weak;
    // monotone along the chain: each verdict implies every later one
    bool ok = (!banach || contractive) && (!banach || shs) && (!banach || weak) &&
              (!contractive || shs) && (!contractive || weak) && (!shs || weak);
    if (!ok) {
      ++report.chain_violations;
      if (report.violating_maps.size() < 16) report.violating_maps.push_back(*images);
    }
  }
  return report;
}

EtaAudit eta_monotonicity_audit(const MetricSpace& space,
                                std::span<const Scalar> etas_ascending) {
  if (!space.is_finite() || space.size() > 5)
    throw ParamError("audit needs a finite space with n <= 5");
  for (std::size_t i = 1; i < etas_ascending.size(); ++i)
    if (etas_ascending[i - 1].raw_cmp(etas_ascending[i]) > 0)
      throw ParamError("eta list must ascend");
  EtaAudit audit;
  audit.satisfied_counts.assign(etas_ascending.size(), 0);

  SelfMapEnumerator maps(space.size());
  while (auto images = maps.next()) {
    ++audit.maps_total;
    SelfMap map = SelfMap::table(space, *images);
    bool seen_satisfied = false;
    bool violated_after_satisfied = false;
    for (std::size_t i = 0; i < etas_ascending.size(); ++i) {
      bool sat = certify(space, map, ConditionKind::eta_strict(etas_ascending[i]),
                         Scope::exhaustive())
                     .satisfied();
      audit.satisfied_counts[i] += sat;
      if (seen_satisfied && !sat) violated_after_satisfied = true;
      seen_satisfied = seen_satisfied || sat;
    }
    if (violated_after_satisfied) ++audit.violations;
  }
  return audit;
}

CensusReport fixed_point_census(const MetricSpace& space,
                                const ConditionKind& condition) {
  if (!space.is_finite() || space.size() > 5)
    throw ParamError("census needs a finite space with n <= 5");
  CensusReport report;
  report.space_label = space.label();
  report.condition = condition.name();
  report.params = condition.params();
  const bool guarantees_unique =
      condition.tag() == ConditionKind::Tag::SuzukiHalfStrict;
  const std::size_t n = space.size();

  SelfMapEnumerator maps(n);
  while (auto images = maps.next()) {
    ++report.maps_total;
    SelfMap map = SelfMap::table(space, *images);
    if (!certify(space, map, condition, Scope::exhaustive()).satisfied()) continue;
    ++report.maps_satisfying;
    std::size_t fps = count_fixed_points(*images);
    if (fps == 1) ++report.maps_satisfying_with_unique_fixed_point;
    if (!guarantees_unique) continue;
    bool ok = fps == 1;
    if (ok) {
      std::size_t fp = 0;
      while ((*images)[fp] != fp) ++fp;
      for (std::size_t start = 0; start < n && ok; ++start) {
        OrbitTrace trace = iterate(space, map, Point::at(start), 2 * n + 2);
        ok = trace.termination == OrbitTrace::Termination::FixedPointHit &&
             trace.points[trace.terminal_index] == Point::at(fp);
      }
    }
    if (!ok) {
      ++report.guarantee_failures;
      if (report.counterexamples.size() < 16) report.counterexamples.push_back(*images);
    }
  }
  return report;
}

namespace {

ordered_json tables_json(const std::vector<std::vector<std::size_t>>& tables) {
  ordered_json arr = ordered_json::array();
  for (const auto& t : tables) arr.push_back(t);
  return arr;
}

}  // namespace

std::string to_json_text(const AuditReport& report) {
  ordered_json j;
  j["space"] = report.space_label;
  j["maps_total"] = report.maps_total;
  ordered_json counts;
  counts["banach"] = report.banach_count;
  counts["contractive"] = report.contractive_count;
  counts["suzuki_half_strict"] = report.suzuki_half_strict_count;
  counts["weak_contractive"] = report.weak_contractive_count;
  j["satisfying"] = std::move(counts);
  j["chain_violations"] = report.chain_violations;
  j["violating_maps"] = tables_json(report.violating_maps);
  return j.dump(2);
}

std::string to_json_text(const CensusReport& report) {
  ordered_json j;
  j["space"] = report.space_label;
  j["condition"] = report.condition;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : report.params) params[k] = v;
  j["params"] = std::move(params);
  j["maps_total"] = report.maps_total;
  j["maps_satisfying"] = report.maps_satisfying;
  j["maps_satisfying_with_unique_fixed_point"] =
      report.maps_satisfying_with_unique_fixed_point;
  j["guarantee_failures"] = report.guarantee_failures;
  j["counterexamples"] = tables_json(report.counterexamples);
  return j.dump(2);
}

}  // namespace fpl
