// Drives the shipped command-line binary as a subprocess: argument parsing,
// exit codes, JSON/CSV/SVG emission. GEOPLAN_CLI_PATH is injected by the
// build so the tests always exercise the binary they were built with.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;  // stdout and stderr, interleaved
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(GEOPLAN_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  r.exit_code = WEXITSTATUS(status);
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

constexpr const char* kHexSpec = "'torus:basis=2,0;1,1.7320508075688772'";
constexpr const char* kSkewSpec = "'torus:basis=2,0;0.6,1.9'";

}  // namespace

TEST_CASE("plan: corner pair on the standard two-torus") {
  const auto r = run_cli("--json plan torus:std:n=2 --from 0,0 --to 1,1");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["manifold"] == "torus:std:n=2");
  CHECK(j["domain"] == 2);
  CHECK(std::abs(j["length"].get<double>() - std::sqrt(2.0)) < 1e-9);
  REQUIRE(j["velocity"].size() == 2);
  CHECK(j["velocity"][0].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["velocity"][1].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(j["end"].size() == 2);
  CHECK(j["end"][0].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("plan: identical endpoints on the circle") {
  const auto r = run_cli("--json plan torus:std:n=1 --from 0 --to 0");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["domain"] == 0);
  CHECK(j["length"].get<double>() == 0.0);
}

TEST_CASE("plan: --polyline N adds N+1 sampled curve points") {
  const auto r = run_cli(
      "--json plan torus:std:n=2 --from 0,0 --to 1,1 --polyline 4");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["polyline"].size() == 5);
  CHECK(j["polyline"][0][0].get<double>() == 0.0);
  CHECK(j["polyline"][2][0].get<double>() == doctest::Approx(0.5));
  CHECK(j["polyline"][4][0].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("plan: plain-text output mode") {
  const auto r = run_cli("plan torus:std:n=2 --from 0,0 --to 1,1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("domain 2") != std::string::npos);
  CHECK(r.out.find("length 1.414213562") != std::string::npos);
}

TEST_CASE("plan: round-sphere antipode lands in the cut-point domain") {
  const auto r = run_cli(
      "--json plan berger:alpha=1.5707963 --from 1,0,0,0 --to -1,0,0,0");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["domain"] == 1);
  CHECK(std::abs(j["length"].get<double>() - M_PI) < 1e-3);
}

TEST_CASE("certify: skew torus basis gives three domains and a clean suite") {
  const auto r =
      run_cli("--json certify " + std::string(kSkewSpec) + " --samples 120");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["certificate"] == 3);
  CHECK(j["expected"] == 3);
  CHECK(j["suite_passed"] == true);
  CHECK(j["match"] == true);
  CHECK(!j.contains("report"));
}

TEST_CASE("certify: standard four-torus gives five domains") {
  const auto r = run_cli("--json certify torus:std:n=4 --samples 80");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["certificate"] == 5);
  CHECK(j["expected"] == 5);
  CHECK(j["suite_passed"] == true);
  CHECK(j["match"] == true);
}

TEST_CASE("certify: Berger sphere alpha=0.4 gives two domains") {
  const auto r = run_cli("--json certify berger:alpha=0.4 --samples 40");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["certificate"] == 2);
  CHECK(j["expected"] == 2);
  CHECK(j["suite_passed"] == true);
  CHECK(j["match"] == true);
}

TEST_CASE("verify: plain text reports every check and the overall verdict") {
  const auto r = run_cli("verify torus:std:n=2 --samples 60");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("[ok]") != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
  CHECK(r.out.find("all checks passed") != std::string::npos);
}

TEST_CASE("verify: JSON report carries named checks") {
  const auto r = run_cli("--json verify torus:std:n=2 --samples 60");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["manifold"] == "torus:std:n=2");
  CHECK(j["all_passed"] == true);
  REQUIRE(j["checks"].is_array());
  REQUIRE(!j["checks"].empty());
  bool saw_partition = false, saw_negative = false;
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("passed"));
    CHECK(c.contains("detail"));
    const std::string name = c["name"].get<std::string>();
    saw_partition |= name.find("partition") != std::string::npos;
    saw_negative |= name.find("negative") != std::string::npos;
  }
  CHECK(saw_partition);
  CHECK(saw_negative);
}

TEST_CASE("oracle: torus brute force, no grid resolution to report") {
  const auto r = run_cli("--json oracle torus:std:n=2 --from 0,0 --to 1,1");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["distance"].get<double>() - std::sqrt(2.0)) < 1e-12);
  CHECK(!j.contains("resolution"));
}

TEST_CASE("oracle: Berger fiber antipode with grid resolution") {
  const auto r = run_cli("--json oracle berger:alpha=0.7 --from 1,0,0,0 --to -1,0,0,0");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["distance"].get<double>() - M_PI * std::sin(0.7)) < 1e-6);
  CHECK(j["resolution"].get<double>() == doctest::Approx(1e-7).epsilon(1e-9));
}

TEST_CASE("cutlocus: hexagonal cell geometry") {
  const auto r = run_cli("--json cutlocus " + std::string(kHexSpec));
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["shape"] == "hexagon");
  CHECK(j["vertices"].size() == 6);
  CHECK(j["edge_normals"].size() == 6);
  CHECK(j["edge_partner"].size() == 6);
  CHECK(j["vertex_labels"].size() == 6);
  REQUIRE(j["strata"].size() == 2);  // edges, then vertices
  CHECK(j["strata"][0]["index"] == 1);
  CHECK(j["strata"][1]["index"] == 2);
  CHECK(j["strata"][0]["components"].size() == 3);
  CHECK(j["strata"][1]["components"].size() == 2);
}

TEST_CASE("cutlocus: cube cell for the standard three-torus") {
  const auto r = run_cli("--json cutlocus torus:std:n=3");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["cell"] == "cube");
  CHECK(j["n"] == 3);
  CHECK(j["halfwidth"] == 1.0);
  CHECK(j["strata"].size() == 3);
}

TEST_CASE("cutlocus: SVG output is byte-stable across runs") {
  const std::string a = "/tmp/geoplan_cli_hex_a.svg";
  const std::string b = "/tmp/geoplan_cli_hex_b.svg";
  const auto ra =
      run_cli("--svg " + a + " --json cutlocus " + std::string(kHexSpec));
  const auto rb =
      run_cli("--svg " + b + " --json cutlocus " + std::string(kHexSpec));
  CHECK(ra.exit_code == 0);
  CHECK(rb.exit_code == 0);
  const std::string sa = slurp(a);
  CHECK(sa == slurp(b));
  CHECK(sa.rfind("<svg", 0) == 0);
  CHECK(sa.find("polygon") != std::string::npos);
}

TEST_CASE("cutlocus: Berger cut curve as JSON, CSV, and SVG") {
  const std::string csv = "/tmp/geoplan_cli_berger.csv";
  const std::string svg = "/tmp/geoplan_cli_berger.svg";
  const auto r = run_cli("--json --csv " + csv + " --svg " + svg +
                         " cutlocus berger:alpha=0.7");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["manifold"].get<std::string>().rfind("berger:alpha=", 0) == 0);
  REQUIRE(j["beta"].size() == 65);
  REQUIRE(j["t_cut"].size() == j["beta"].size());
  for (std::size_t i = 1; i < j["beta"].size(); ++i)
    CHECK(j["beta"][i].get<double>() > j["beta"][i - 1].get<double>());
  for (const auto& t : j["t_cut"]) CHECK(t.get<double>() > 1.0);
  CHECK(slurp(csv).rfind("beta,t_cut,w,x1,x2,x3", 0) == 0);
  CHECK(slurp(svg).rfind("<svg", 0) == 0);
}

TEST_CASE("errors: unrecognized manifold spec exits 1") {
  const auto r = run_cli("plan nonsense:foo --from 0 --to 0");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("unrecognized manifold spec") != std::string::npos);
}

TEST_CASE("errors: zero-dimensional torus exits 1") {
  const auto r = run_cli("plan torus:std:n=0 --from 0 --to 0");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("n >= 1") != std::string::npos);
}

TEST_CASE("errors: point dimension mismatch exits 1") {
  const auto r = run_cli("plan torus:std:n=2 --from 0,0 --to 1");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("dimension mismatch") != std::string::npos);
}

TEST_CASE("errors: non-unit quaternion exits 1") {
  const auto r = run_cli(
      "--grid-dir 64 --grid-t 128 plan berger:alpha=0.7 "
      "--from 1,0,0,0 --to 0.5,0,0,0");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("unit quaternion") != std::string::npos);
}

TEST_CASE("errors: alpha outside (0, pi/2] exits 1") {
  const auto r =
      run_cli("plan berger:alpha=2.0 --from 1,0,0,0 --to 1,0,0,0");
  CHECK(r.exit_code == 1);
}
