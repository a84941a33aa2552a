#include "fpl.h"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

// Exit codes: 0 satisfied/success, 1 violated/witness found, 2 usage or input
// error. Everything below talks to the library through the C interface only.

namespace {

constexpr int kExitWitness = 1;
constexpr int kExitUsage = 2;

struct UsageError {
  std::string message;
};

struct Space {
  fpl_space* h = nullptr;
  Space() = default;
  Space(const Space&) = delete;
  Space& operator=(const Space&) = delete;
  ~Space() { fpl_space_free(h); }
};

struct Map {
  fpl_map* h = nullptr;
  Map() = default;
  Map(const Map&) = delete;
  Map& operator=(const Map&) = delete;
  ~Map() { fpl_map_free(h); }
};

struct Trace {
  fpl_trace* h = nullptr;
  Trace() = default;
  Trace(const Trace&) = delete;
  Trace& operator=(const Trace&) = delete;
  ~Trace() { fpl_trace_free(h); }
};

struct StringOut {
  char* text = nullptr;
  StringOut() = default;
  StringOut(const StringOut&) = delete;
  StringOut& operator=(const StringOut&) = delete;
  ~StringOut() { fpl_string_free(text); }
  std::string str() const { return text ? text : ""; }
};

void check(fpl_status status, const std::string& context) {
  if (status != FPL_OK) throw UsageError{context + ": " + fpl_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot read " + path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError{"cannot write " + out_path};
  out << text << "\n";
}

struct Config {
  std::string space_path;
  std::string gallery;
  std::string map_path;
  std::string condition;
  std::string scope = "exhaustive";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::uint64_t count = 10000;
  std::string backend = "exact";
  double eps = 0.0;
  bool eps_given = false;
  std::string out;

  std::string from;
  std::size_t steps = 100;
  std::string csv;
  bool diagnose = false;
  std::string eps_Delta = "1/100";
  std::string eps_delta = "1/100";
  std::size_t horizon = 0;
  std::size_t max_witnesses = 100;
  std::string psi;

  std::size_t random_n = 0;
  bool audit = false;

  unsigned probe_B = 64;
  std::uint64_t samples = 10000;
  std::uint64_t orbits = 100;
};

// File-loaded carriers pass the metric axiom sweep before any run; gallery
// carriers are constructed valid.
void load_space(Config& cfg, Space& space) {
  if (cfg.space_path.empty() == cfg.gallery.empty())
    throw UsageError{"provide exactly one of --space or --gallery"};
  if (!cfg.gallery.empty()) return;
  check(fpl_space_from_json(read_file(cfg.space_path).c_str(), &space.h),
        cfg.space_path);
  StringOut report;
  int passed = 0;
  check(fpl_verify_axioms(space.h, 1, &report.text, &passed), cfg.space_path);
  if (!passed)
    throw UsageError{cfg.space_path + " fails the metric axioms: " + report.str()};
}

void apply_backend(const Config& cfg, Space& space) {
  if (cfg.backend == "float" && !cfg.eps_given)
    throw UsageError{"--backend float needs --eps"};
  if (cfg.eps_given && cfg.backend != "float")
    throw UsageError{"--eps applies only to --backend float"};
  if (cfg.backend != "float") return;
  Space demoted;
  check(fpl_space_to_float(space.h, cfg.eps, &demoted.h), "--backend float");
  std::swap(space.h, demoted.h);
}

void load_space_and_map(Config& cfg, Space& space, Map& map) {
  load_space(cfg, space);
  if (!cfg.gallery.empty()) {
    if (!cfg.map_path.empty())
      throw UsageError{"--map conflicts with --gallery (the gallery supplies it)"};
    Space fresh;
    check(fpl_gallery_make(cfg.gallery.c_str(), &fresh.h, &map.h), cfg.gallery);
    std::swap(space.h, fresh.h);
  } else {
    if (cfg.map_path.empty()) throw UsageError{"--space needs --map"};
  }
  apply_backend(cfg, space);
  if (!cfg.map_path.empty())
    check(fpl_map_from_json(space.h, read_file(cfg.map_path).c_str(), &map.h),
          cfg.map_path);
}

int run_certify(Config& cfg) {
  if (cfg.scope == "sampled" && !cfg.seed_given)
    throw UsageError{"--scope sampled needs --seed"};
  Space space;
  Map map;
  load_space_and_map(cfg, space, map);
  StringOut certificate;
  int satisfied = 0;
  check(fpl_certify(space.h, map.h, cfg.condition.c_str(), cfg.scope.c_str(),
                    cfg.seed, cfg.count, &certificate.text, &satisfied),
        "certify");
  emit(cfg.out, certificate.str());
  return satisfied ? 0 : kExitWitness;
}

int run_orbit(Config& cfg) {
  Space space;
  Map map;
  load_space_and_map(cfg, space, map);
  Trace trace;
  check(fpl_orbit(space.h, map.h, cfg.from.c_str(), cfg.steps, &trace.h),
        "orbit");
  if (!cfg.csv.empty()) {
    StringOut csv;
    check(fpl_trace_to_csv(trace.h, &csv.text), "csv");
    std::ofstream out(cfg.csv, std::ios::binary);
    if (!out) throw UsageError{"cannot write " + cfg.csv};
    out << csv.str();
  }
  std::size_t horizon = cfg.horizon ? cfg.horizon : cfg.steps;
  if (cfg.diagnose) {
    StringOut report;
    std::uint64_t matches = 0;
    check(fpl_sequential_diagnostic(trace.h, cfg.eps_Delta.c_str(),
                                    cfg.eps_delta.c_str(), horizon,
                                    cfg.max_witnesses, &report.text, &matches),
          "diagnostic");
    emit(cfg.out, report.str());
    return matches > 0 ? kExitWitness : 0;
  }
  if (!cfg.psi.empty()) {
    StringOut value;
    check(fpl_extract_psi(trace.h, cfg.psi.c_str(), horizon, &value.text),
          "psi");
    nlohmann::ordered_json j;
    j["s"] = cfg.psi;
    j["psi"] = value.str();
    emit(cfg.out, j.dump(2));
    return 0;
  }
  StringOut j;
  check(fpl_trace_to_json(trace.h, &j.text), "trace");
  emit(cfg.out, j.str());
  return 0;
}

int run_gallery(Config& cfg) {
  Space space;
  Map map;
  check(fpl_gallery_make(cfg.gallery.c_str(), &space.h, &map.h), cfg.gallery);
  nlohmann::ordered_json j;
  StringOut space_json;
  if (fpl_space_to_json(space.h, &space_json.text) == FPL_OK) {
    j["space"] = nlohmann::ordered_json::parse(space_json.str());
  } else {
    StringOut described;
    check(fpl_space_describe(space.h, &described.text), "describe");
    j["space"] = nlohmann::ordered_json::parse(described.str());
  }
  StringOut map_json;
  if (fpl_map_to_json(space.h, map.h, &map_json.text) == FPL_OK)
    j["map"] = nlohmann::ordered_json::parse(map_json.str());
  else
    j["map"] = "rule";
  emit(cfg.out, j.dump(2));
  return 0;
}

int run_census(Config& cfg) {
  Space space;
  if (!cfg.space_path.empty() && cfg.random_n > 0)
    throw UsageError{"provide exactly one of --space or --random"};
  if (!cfg.space_path.empty()) {
    Config gate = cfg;
    gate.gallery.clear();
    load_space(gate, space);
  } else if (cfg.random_n > 0) {
    if (!cfg.seed_given) throw UsageError{"--random needs --seed"};
    check(fpl_random_space(cfg.random_n, cfg.seed, &space.h), "--random");
  } else {
    throw UsageError{"provide exactly one of --space or --random"};
  }
  if (cfg.audit) {
    StringOut report;
    std::uint64_t violations = 0;
    check(fpl_implication_audit(space.h, &report.text, &violations), "audit");
    emit(cfg.out, report.str());
    return violations > 0 ? kExitWitness : 0;
  }
  if (cfg.condition.empty())
    throw UsageError{"census needs --condition (or --audit)"};
  StringOut report;
  std::uint64_t failures = 0;
  check(fpl_census(space.h, cfg.condition.c_str(), &report.text, &failures),
        "census");
  emit(cfg.out, report.str());
  return failures > 0 ? kExitWitness : 0;
}

int run_probe(Config& cfg) {
  StringOut report;
  std::uint64_t violations = 0;
  check(fpl_probe_battery(cfg.probe_B, cfg.seed, cfg.samples, cfg.orbits,
                          &report.text, &violations),
        "probe");
  emit(cfg.out, report.str());
  return violations > 0 ? kExitWitness : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric fixed-point laboratory"};
  app.require_subcommand(1);
  Config cfg;

  auto add_carrier = [&cfg](CLI::App* cmd, bool with_map) {
    cmd->add_option("--space", cfg.space_path, "metric space JSON file");
    cmd->add_option("--gallery", cfg.gallery,
                    "gallery expression: suzuki(eta=3/5,N=40), "
                    "dyadic_probe(B=64), divergent, halving");
    if (with_map)
      cmd->add_option("--map", cfg.map_path, "self-map JSON file");
    cmd->add_option("--backend", cfg.backend, "exact (default) or float")
        ->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--eps", cfg.eps,
                    "comparison tolerance, float backend only");
    cmd->add_option("--out", cfg.out, "write the JSON report to this file");
  };

  CLI::App* certify =
      app.add_subcommand("certify", "check a condition over a carrier");
  add_carrier(certify, true);
  certify->add_option("--condition", cfg.condition,
                      "condition expression, e.g. eta_nonstrict(3/5)")
      ->required();
  certify->add_option("--scope", cfg.scope, "exhaustive (default) or sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  certify->add_option("--seed", cfg.seed, "RNG seed, sampled scope only");
  certify->add_option("--count", cfg.count, "sampled pair count");

  CLI::App* orbit = app.add_subcommand("orbit", "iterate a map and report");
  add_carrier(orbit, true);
  orbit->add_option("--from", cfg.from, "starting point id or coordinate")
      ->required();
  orbit->add_option("--steps", cfg.steps, "maximum applications");
  orbit->add_option("--csv", cfg.csv, "also write the orbit as CSV here");
  orbit->add_flag("--diagnose", cfg.diagnose,
                  "report iterate-Cauchy counterevidence instead of the trace");
  orbit->add_option("--eps-Delta", cfg.eps_Delta,
                    "post-map ratio tolerance for --diagnose");
  orbit->add_option("--eps-delta", cfg.eps_delta,
                    "gap floor for --diagnose");
  orbit->add_option("--horizon", cfg.horizon,
                    "index horizon for --diagnose and --psi (default: --steps)");
  orbit->add_option("--max-witnesses", cfg.max_witnesses,
                    "witness list cap for --diagnose");
  orbit->add_option("--psi", cfg.psi,
                    "report the orbit test function at this level instead");

  CLI::App* gallery =
      app.add_subcommand("gallery", "print a gallery construction");
  gallery->add_option("expr", cfg.gallery, "gallery expression")->required();
  gallery->add_option("--out", cfg.out, "write the JSON to this file");

  CLI::App* census =
      app.add_subcommand("census", "enumerate all self-maps of a finite space");
  census->add_option("--space", cfg.space_path, "metric space JSON file");
  census->add_option("--random", cfg.random_n,
                     "use a random n-point space instead");
  census->add_option("--seed", cfg.seed, "seed for --random");
  census->add_option("--condition", cfg.condition, "condition to census");
  census->add_flag("--audit", cfg.audit,
                   "run the implication-chain audit instead");
  census->add_option("--out", cfg.out, "write the JSON report to this file");

  CLI::App* probe =
      app.add_subcommand("probe", "spot-check the dyadic probe construction");
  probe->add_option("--B", cfg.probe_B, "denominator bound exponent");
  probe->add_option("--seed", cfg.seed, "RNG seed");
  probe->add_option("--samples", cfg.samples, "carrier points to sample");
  probe->add_option("--orbits", cfg.orbits, "orbits to replay");
  probe->add_option("--out", cfg.out, "write the JSON report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  cfg.seed_given = certify->count("--seed") > 0 || census->count("--seed") > 0 ||
                   probe->count("--seed") > 0;
  cfg.eps_given = certify->count("--eps") > 0 || orbit->count("--eps") > 0;

  try {
    if (certify->parsed()) return run_certify(cfg);
    if (orbit->parsed()) return run_orbit(cfg);
    if (gallery->parsed()) return run_gallery(cfg);
    if (census->parsed()) return run_census(cfg);
    if (probe->parsed()) return run_probe(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
