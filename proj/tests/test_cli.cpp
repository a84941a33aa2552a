#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#ifndef FPL_CLI_PATH
#error "FPL_CLI_PATH must point at the CLI binary"
#endif

namespace {

namespace fs = std::filesystem;

struct Run {
  int exit_code = -1;
  std::string out;
  std::string err;
};

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("fpl_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

Run cli(const std::string& args) {
  fs::path out = scratch() / "stdout.txt";
  fs::path err = scratch() / "stderr.txt";
  std::string cmd = std::string(FPL_CLI_PATH) + " " + args + " >" +
                    out.string() + " 2>" + err.string();
  int raw = std::system(cmd.c_str());
  Run r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

const std::string& swap_space() {
  static const std::string path = [] {
    fs::path p = scratch() / "d2.json";
    spit(p,
         R"({"label":"d2","points":["a","b"],"matrix":[["0","1"],["1","0"]]})");
    return p.string();
  }();
  return path;
}

const std::string& swap_map() {
  static const std::string path = [] {
    fs::path p = scratch() / "swap.json";
    spit(p, R"({"label":"swap","images":{"a":"b","b":"a"}})");
    return p.string();
  }();
  return path;
}

const std::string& pull_space() {
  static const std::string path = [] {
    fs::path p = scratch() / "pull3.json";
    spit(p,
         R"({"label":"pull3","points":["a","b","c"],"coordinates":["0","1/4","1"]})");
    return p.string();
  }();
  return path;
}

const std::string& pull_map() {
  static const std::string path = [] {
    fs::path p = scratch() / "pull.json";
    spit(p, R"({"label":"pull","images":{"a":"a","b":"a","c":"b"}})");
    return p.string();
  }();
  return path;
}

}  // namespace

TEST_CASE("satisfied certification exits 0 with a satisfied report") {
  Run r = cli("certify --gallery \"suzuki(eta=3/5,N=5,r=3/4)\" "
              "--condition \"eta_nonstrict(3/5)\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"verdict\": \"satisfied\"") != std::string::npos);
  CHECK(r.out.find("\"scope\": \"exhaustive\"") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("violated certification exits 1 and carries the witness") {
  Run r = cli("certify --space " + swap_space() + " --map " + swap_map() +
              " --condition weak_contractive");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("\"verdict\": \"violated\"") != std::string::npos);
  CHECK(r.out.find("\"x\": \"a\"") != std::string::npos);
}

TEST_CASE("usage problems exit 2 before any verdict") {
  CHECK(cli("nonsense").exit_code == 2);
  CHECK(cli("certify").exit_code == 2);
  CHECK(cli("certify --condition contractive").exit_code == 2);
  CHECK(cli("certify --gallery halving --space " + swap_space() +
            " --condition contractive")
            .exit_code == 2);
  CHECK(cli("certify --space " + swap_space() + " --condition contractive")
            .exit_code == 2);
  CHECK(cli("certify --gallery mystery --condition contractive").exit_code == 2);
  CHECK(cli("certify --gallery halving --condition \"banach(2)\"").exit_code == 2);
  Run sampled = cli("certify --gallery \"suzuki(eta=3/5,N=4,r=3/4)\" "
                    "--condition contractive --scope sampled --count 10");
  CHECK(sampled.exit_code == 2);
  CHECK_FALSE(sampled.err.empty());
}

TEST_CASE("a space failing the axiom sweep is rejected with exit 2") {
  fs::path bad = scratch() / "bad.json";
  spit(bad, R"({"label":"bad","points":["a","b"],"matrix":[["0","1"],["2","0"]]})");
  Run r = cli("certify --space " + bad.string() + " --map " + swap_map() +
              " --condition contractive");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("symmetry") != std::string::npos);
}

TEST_CASE("float backend and tolerance flags must travel together") {
  std::string base = "certify --space " + pull_space() + " --map " + pull_map() +
                     " --condition contractive";
  CHECK(cli(base + " --eps 1e-9").exit_code == 2);
  CHECK(cli(base + " --backend float").exit_code == 2);
  Run ok = cli(base + " --backend float --eps 1e-9");
  CHECK(ok.exit_code == 0);
}

TEST_CASE("identical configuration reproduces byte-identical reports") {
  std::string cmd = "certify --space " + pull_space() + " --map " + pull_map() +
                    " --condition contractive --scope sampled --seed 9 --count 100";
  Run a = cli(cmd);
  Run b = cli(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"seed\": 9") != std::string::npos);
}

TEST_CASE("--out routes the report to the file instead of stdout") {
  fs::path side = scratch() / "report.json";
  std::string base = "certify --gallery \"suzuki(eta=3/5,N=4,r=3/4)\" "
                     "--condition \"eta_nonstrict(3/5)\"";
  Run plain = cli(base);
  Run filed = cli(base + " --out " + side.string());
  CHECK(plain.exit_code == 0);
  CHECK(filed.exit_code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp(side) == plain.out);
}

TEST_CASE("orbit subcommand prints the trace and optionally a CSV file") {
  fs::path csv = scratch() / "orbit.csv";
  Run r = cli("orbit --space " + pull_space() + " --map " + pull_map() +
              " --from c --steps 50 --csv " + csv.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"termination\": \"fixed_point\"") != std::string::npos);
  std::string csv_text = slurp(csv);
  CHECK(csv_text.rfind("n,point_id,coordinate,delta_n\n", 0) == 0);
  CHECK(csv_text.find("0,c,1,3/4\n") != std::string::npos);

  CHECK(cli("orbit --space " + pull_space() + " --map " + pull_map() +
            " --from zz --steps 5")
            .exit_code == 2);
}

TEST_CASE("quiet diagnostics exit 0 and noisy ones exit 1") {
  Run calm = cli("orbit --gallery halving --from 1 --steps 120 --diagnose "
                 "--horizon 500");
  CHECK(calm.exit_code == 0);
  CHECK(calm.out.find("\"total_matches\": 0") != std::string::npos);
  CHECK(calm.out.find("\"horizon_clamped\": true") != std::string::npos);

  Run noisy = cli("orbit --gallery divergent --from 1 --steps 200 --diagnose "
                  "--eps-Delta 99/100 --eps-delta 1/100 --backend float "
                  "--eps 1e-9");
  CHECK(noisy.exit_code == 1);
  CHECK(noisy.out.find("\"total_matches\": 0") == std::string::npos);
  CHECK(noisy.out.find("\"witnesses\"") != std::string::npos);
}

TEST_CASE("orbit test function level query prints a level and value pair") {
  Run r = cli("orbit --gallery halving --from 1 --steps 80 --psi 1/2 "
              "--horizon 58");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"s\": \"1/2\"") != std::string::npos);
  CHECK(r.out.find("\"psi\": \"1/2\"") != std::string::npos);
}

TEST_CASE("census and audit run over files and random spaces") {
  Run census = cli("census --random 3 --seed 5 --condition suzuki_half_strict");
  CHECK(census.exit_code == 0);
  CHECK(census.out.find("\"maps_satisfying\": 5") != std::string::npos);
  CHECK(census.out.find("\"guarantee_failures\": 0") != std::string::npos);

  Run audit = cli("census --space " + swap_space() + " --audit");
  CHECK(audit.exit_code == 0);
  CHECK(audit.out.find("\"chain_violations\": 0") != std::string::npos);

  CHECK(cli("census --random 3 --seed 1").exit_code == 2);
  CHECK(cli("census --random 3 --condition contractive").exit_code == 2);
  CHECK(cli("census --space " + swap_space() + " --random 3 --seed 1 "
            "--condition contractive")
            .exit_code == 2);
}

TEST_CASE("probe battery subcommand reports zero violations") {
  Run r = cli("probe --B 64 --seed 11 --samples 500 --orbits 25");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"rho_violations\": 0") != std::string::npos);
  CHECK(r.out.find("\"orbit_violations\": 0") != std::string::npos);
  CHECK(cli("probe --B 3").exit_code == 2);
}

TEST_CASE("gallery subcommand dumps finite constructions and describes lazy ones") {
  Run s = cli("gallery \"suzuki(eta=3/5,N=2,r=3/4)\"");
  CHECK(s.exit_code == 0);
  CHECK(s.out.find("\"-3/16\"") != std::string::npos);
  CHECK(s.out.find("\"images\"") != std::string::npos);

  Run lazy = cli("gallery halving");
  CHECK(lazy.exit_code == 0);
  CHECK(lazy.out.find("\"kind\": \"line_lazy\"") != std::string::npos);

  CHECK(cli("gallery mystery").exit_code == 2);
}
