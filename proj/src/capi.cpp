#include "fpl.h"

#include "conditions.hpp"
#include "enumerator.hpp"
#include "errors.hpp"
#include "gallery.hpp"
#include "orbit.hpp"

#include <cstring>
#include <memory>
#include <string>

#include "json.hpp"

struct fpl_space {
  std::shared_ptr<const fpl::MetricSpace> impl;
};

struct fpl_map {
  std::shared_ptr<const fpl::SelfMap> impl;
};

struct fpl_trace {
  std::shared_ptr<const fpl::MetricSpace> space;
  fpl::OrbitTrace impl;
};

namespace {

thread_local std::string g_last_error;

char* copy_out(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out) std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

template <typename Fn>
fpl_status guarded(Fn&& fn) {
  try {
    fn();
    return FPL_OK;
  } catch (const fpl::ParamError& e) {
    g_last_error = e.what();
    return FPL_ERR_PARAM;
  } catch (const fpl::BoundaryError& e) {
    g_last_error = e.what();
    return FPL_ERR_BOUNDARY;
  } catch (const fpl::ParseError& e) {
    g_last_error = e.what();
    return FPL_ERR_PARSE;
  } catch (const fpl::TestFunctionError& e) {
    g_last_error = e.what();
    return FPL_ERR_TEST_FUNCTION;
  } catch (const fpl::DegenerateInputError& e) {
    g_last_error = e.what();
    return FPL_ERR_DEGENERATE;
  } catch (const fpl::DomainError& e) {
    g_last_error = e.what();
    return FPL_ERR_DOMAIN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FPL_ERR_INTERNAL;
  }
}

fpl_status check_args(bool ok) { return ok ? FPL_OK : FPL_ERR_PARAM; }

bool bad(const void* p) { return p == nullptr; }

fpl::Scope make_scope(const char* scope, uint64_t seed, uint64_t count) {
  std::string s(scope);
  if (s == "exhaustive") return fpl::Scope::exhaustive();
  if (s == "sampled") return fpl::Scope::sampled(seed, count);
  throw fpl::ParseError("scope must be exhaustive or sampled, got " + s);
}

}  // namespace

extern "C" {

const char* fpl_version(void) { return "0.1.0"; }

const char* fpl_last_error(void) { return g_last_error.c_str(); }

void fpl_string_free(char* text) { std::free(text); }

void fpl_space_free(fpl_space* space) { delete space; }
void fpl_map_free(fpl_map* map) { delete map; }
void fpl_trace_free(fpl_trace* trace) { delete trace; }

fpl_status fpl_space_from_json(const char* text, fpl_space** out) {
  if (bad(text) || bad(out)) return check_args(false);
  return guarded([&] {
    *out = new fpl_space{std::make_shared<fpl::MetricSpace>(
        fpl::MetricSpace::from_json_text(text))};
  });
}

fpl_status fpl_space_to_json(const fpl_space* space, char** out) {
  if (bad(space) || bad(out)) return check_args(false);
  return guarded([&] { *out = copy_out(space->impl->to_json_text()); });
}

fpl_status fpl_space_describe(const fpl_space* space, char** out) {
  if (bad(space) || bad(out)) return check_args(false);
  return guarded([&] {
    nlohmann::ordered_json j;
    j["label"] = space->impl->label();
    switch (space->impl->kind()) {
      case fpl::MetricSpace::Kind::FiniteExplicit: j["kind"] = "finite_explicit"; break;
      case fpl::MetricSpace::Kind::LineEmbedded: j["kind"] = "line_embedded"; break;
      case fpl::MetricSpace::Kind::LineLazy: j["kind"] = "line_lazy"; break;
    }
    if (space->impl->is_finite()) j["size"] = space->impl->size();
    j["float_backend"] = space->impl->float_backend();
    *out = copy_out(j.dump(2));
  });
}

fpl_status fpl_space_to_float(const fpl_space* space, double eps, fpl_space** out) {
  if (bad(space) || bad(out)) return check_args(false);
  return guarded([&] {
    *out = new fpl_space{
        std::make_shared<fpl::MetricSpace>(space->impl->to_float(eps))};
  });
}

fpl_status fpl_random_space(size_t n, uint64_t seed, fpl_space** out) {
  if (bad(out)) return check_args(false);
  return guarded([&] {
    *out = new fpl_space{
        std::make_shared<fpl::MetricSpace>(fpl::random_finite_metric(n, seed))};
  });
}

fpl_status fpl_verify_axioms(const fpl_space* space, size_t max_violations,
                             char** report_json, int* passed) {
  if (bad(space) || bad(report_json) || bad(passed)) return check_args(false);
  return guarded([&] {
    fpl::AxiomReport report =
        fpl::verify_metric_axioms(*space->impl, max_violations);
    *report_json = copy_out(fpl::to_json_text(report));
    *passed = report.passed ? 1 : 0;
  });
}

fpl_status fpl_map_from_json(const fpl_space* space, const char* text,
                             fpl_map** out) {
  if (bad(space) || bad(text) || bad(out)) return check_args(false);
  return guarded([&] {
    *out = new fpl_map{std::make_shared<fpl::SelfMap>(
        fpl::SelfMap::from_json_text(*space->impl, text))};
  });
}

fpl_status fpl_map_to_json(const fpl_space* space, const fpl_map* map, char** out) {
  if (bad(space) || bad(map) || bad(out)) return check_args(false);
  return guarded([&] { *out = copy_out(map->impl->to_json_text(*space->impl)); });
}

fpl_status fpl_gallery_make(const char* expr, fpl_space** space_out,
                            fpl_map** map_out) {
  if (bad(expr) || bad(space_out) || bad(map_out)) return check_args(false);
  return guarded([&] {
    fpl::GalleryItem item = fpl::make_gallery(expr);
    *space_out = new fpl_space{
        std::make_shared<fpl::MetricSpace>(std::move(item.space))};
    *map_out = new fpl_map{std::make_shared<fpl::SelfMap>(std::move(item.map))};
  });
}

fpl_status fpl_theta(const char* r, char** value_out) {
  if (bad(r) || bad(value_out)) return check_args(false);
  return guarded([&] {
    *value_out = copy_out(fpl::theta(fpl::Scalar::exact(r)).str());
  });
}

fpl_status fpl_certify(const fpl_space* space, const fpl_map* map,
                       const char* condition, const char* scope, uint64_t seed,
                       uint64_t count, char** certificate_json, int* satisfied) {
  if (bad(space) || bad(map) || bad(condition) || bad(scope) ||
      bad(certificate_json) || bad(satisfied))
    return check_args(false);
  return guarded([&] {
    fpl::Certificate cert =
        fpl::certify(*space->impl, *map->impl, fpl::parse_condition(condition),
                     make_scope(scope, seed, count));
    *certificate_json = copy_out(fpl::to_json_text(cert));
    *satisfied = cert.satisfied() ? 1 : 0;
  });
}

fpl_status fpl_minimal_lipschitz(const fpl_space* space, const fpl_map* map,
                                 char** value_out) {
  if (bad(space) || bad(map) || bad(value_out)) return check_args(false);
  return guarded([&] {
    *value_out = copy_out(fpl::minimal_lipschitz(*space->impl, *map->impl).str());
  });
}

fpl_status fpl_orbit(const fpl_space* space, const fpl_map* map, const char* from,
                     size_t max_steps, fpl_trace** out) {
  if (bad(space) || bad(map) || bad(from) || bad(out)) return check_args(false);
  return guarded([&] {
    fpl::Point x0 = space->impl->point(from);
    *out = new fpl_trace{space->impl,
                         fpl::iterate(*space->impl, *map->impl, x0, max_steps)};
  });
}

fpl_status fpl_trace_to_json(const fpl_trace* trace, char** out) {
  if (bad(trace) || bad(out)) return check_args(false);
  return guarded(
      [&] { *out = copy_out(fpl::to_json_text(*trace->space, trace->impl)); });
}

fpl_status fpl_trace_to_csv(const fpl_trace* trace, char** out) {
  if (bad(trace) || bad(out)) return check_args(false);
  return guarded([&] { *out = copy_out(fpl::orbit_csv(*trace->space, trace->impl)); });
}

fpl_status fpl_trace_termination(const fpl_trace* trace, int* termination,
                                 size_t* index) {
  if (bad(trace) || bad(termination) || bad(index)) return check_args(false);
  using T = fpl::OrbitTrace::Termination;
  switch (trace->impl.termination) {
    case T::MaxSteps: *termination = 0; break;
    case T::FixedPointHit: *termination = 1; break;
    case T::CarrierBoundary: *termination = 2; break;
  }
  *index = trace->impl.terminal_index;
  return FPL_OK;
}

fpl_status fpl_sequential_diagnostic(const fpl_trace* trace, const char* eps_Delta,
                                     const char* eps_delta, size_t horizon,
                                     size_t max_witnesses, char** report_json,
                                     uint64_t* matches) {
  if (bad(trace) || bad(eps_Delta) || bad(eps_delta) || bad(report_json) ||
      bad(matches))
    return check_args(false);
  return guarded([&] {
    fpl::DiagnosticThresholds thresholds(fpl::Scalar::exact(eps_Delta),
                                         fpl::Scalar::exact(eps_delta), horizon);
    thresholds.max_witnesses = max_witnesses;
    fpl::DiagnosticResult result =
        fpl::sequential_diagnostic(*trace->space, trace->impl, thresholds);
    *report_json = copy_out(fpl::to_json_text(result));
    *matches = result.total_matches;
  });
}

fpl_status fpl_extract_psi(const fpl_trace* trace, const char* s, size_t horizon,
                           char** value_out) {
  if (bad(trace) || bad(s) || bad(value_out)) return check_args(false);
  return guarded([&] {
    *value_out = copy_out(
        fpl::extract_psi(*trace->space, trace->impl, fpl::Scalar::exact(s), horizon)
            .str());
  });
}

fpl_status fpl_implication_audit(const fpl_space* space, char** report_json,
                                 uint64_t* chain_violations) {
  if (bad(space) || bad(report_json) || bad(chain_violations))
    return check_args(false);
  return guarded([&] {
    fpl::AuditReport report = fpl::implication_audit(*space->impl);
    *report_json = copy_out(fpl::to_json_text(report));
    *chain_violations = report.chain_violations;
  });
}

fpl_status fpl_census(const fpl_space* space, const char* condition,
                      char** report_json, uint64_t* guarantee_failures) {
  if (bad(space) || bad(condition) || bad(report_json) || bad(guarantee_failures))
    return check_args(false);
  return guarded([&] {
    fpl::CensusReport report =
        fpl::fixed_point_census(*space->impl, fpl::parse_condition(condition));
    *report_json = copy_out(fpl::to_json_text(report));
    *guarantee_failures = report.guarantee_failures;
  });
}

fpl_status fpl_probe_battery(unsigned bound, uint64_t seed, uint64_t samples,
                             uint64_t orbits, char** report_json,
                             uint64_t* violations) {
  if (bad(report_json) || bad(violations)) return check_args(false);
  return guarded([&] {
    fpl::DyadicProbe probe(bound);
    fpl::ProbeBattery battery = fpl::probe_battery(probe, seed, samples, orbits);
    *report_json = copy_out(fpl::to_json_text(battery));
    *violations = battery.rho_violations + battery.orbit_violations;
  });
}

}  // extern "C"
