#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "zlab/experiment.hpp"

using namespace zlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("zlab-test-" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config parsing round trip") {
  std::string text =
      "# demo\n"
      "domain = disk 0 0 1\n"
      "V = point 0 0 alpha=3\n"
      "data = const 1\n"
      "n = 33\n"
      "ladder = 1,2,20,1e-8\n"
      "tol_z = 0.05\n"
      "out = /tmp/demo\n";
  ExperimentConfig cfg = parse_config_text(text, "demo.cfg");
  CHECK(cfg.domain_text == "disk 0 0 1");
  CHECK(cfg.n == 33);
  CHECK(cfg.ladder.max_rungs == 20);
  CHECK(cfg.ladder.stop_tol == 1e-8);
  CHECK(cfg.tol_z == 0.05);
}

TEST_CASE("config errors carry the line number") {
  try {
    parse_config_text("domain = disk 0 0 1\nwhat now\n", "bad.cfg");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
    CHECK(std::string(e.what()).find("bad.cfg:2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text("frob = 1\n", "bad.cfg"), Error);
  CHECK_THROWS_AS(parse_config_text("n = many\n", "bad.cfg"), Error);
}

TEST_CASE("preset catalog") {
  auto presets = list_presets();
  bool twin = false, oned = false;
  for (const auto& [name, desc] : presets) {
    if (name == "example-twin") twin = true;
    if (name == "oned-sweep") oned = true;
    CHECK(!desc.empty());
  }
  CHECK(twin);
  CHECK(oned);
  CHECK(!presets.empty());
}

TEST_CASE("generic experiment writes the artifact set and passes its checks") {
  fs::path dir = fresh_dir("generic");
  ExperimentConfig cfg;
  cfg.domain_text = "disk 0 0 1";
  cfg.potential_text = "point 0 0 alpha=3";
  cfg.data_text = "const 1";
  cfg.n = 33;
  cfg.out_dir = dir.string();
  RunOutcome out = run_experiment(cfg);
  CHECK(out.exit_code() == 0);
  for (const char* name : {"torsion.csv", "solution.csv", "ladder.csv", "zeroset.csv",
                           "smask.csv", "zmask.csv", "verdicts.csv", "summary.txt"})
    CHECK(fs::exists(dir / name));
  std::string summary = slurp(dir / "summary.txt");
  CHECK(summary.find("CHECK absorption PASS") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("example-point preset exits clean at a small resolution") {
  fs::path dir = fresh_dir("point");
  ExperimentConfig cfg;
  cfg.preset = "example-point";
  cfg.n = 33;
  cfg.out_dir = dir.string();
  RunOutcome out = run_experiment(cfg);
  for (const auto& c : out.checks) {
    INFO(c.name, " margin=", c.margin);
    CHECK(c.pass);
  }
  CHECK(out.exit_code() == 0);
  CHECK(fs::exists(dir / "torsion.csv"));
  CHECK(fs::exists(dir / "zeroset.csv"));
  CHECK(fs::exists(dir / "summary.txt"));
  fs::remove_all(dir);
}

TEST_CASE("generic 1D run with a point singularity") {
  fs::path dir = fresh_dir("oned");
  ExperimentConfig cfg;
  cfg.domain_text = "interval -1 1";
  cfg.potential_text = "point 0 alpha=2.5";
  cfg.data_text = "const 1";
  cfg.n = 65;
  cfg.out_dir = dir.string();
  RunOutcome out = run_experiment(cfg);
  for (const auto& c : out.checks) {
    INFO(c.name, " margin=", c.margin);
    CHECK(c.pass);
  }
  std::string zs = slurp(dir / "zeroset.csv");
  CHECK(zs.find("component,node_count") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("atom data with mollification in a generic run") {
  fs::path dir = fresh_dir("atom");
  ExperimentConfig cfg;
  cfg.domain_text = "disk 0 0 1";
  cfg.potential_text = "zero";
  cfg.data_text = "atom 0.2 -0.1 w=1";
  cfg.n = 33;
  cfg.out_dir = dir.string();
  RunOutcome out = run_experiment(cfg);
  CHECK(out.exit_code() == 0);
  fs::remove_all(dir);
}

TEST_CASE("exit codes: pass 0, check failure 1, solver failure 3") {
  RunOutcome r;
  r.checks.push_back({"a", 1.0, true});
  CHECK(r.exit_code() == 0);
  r.checks.push_back({"b", -1.0, false});
  CHECK(r.exit_code() == 1);
  r.cg_failure = true;
  CHECK(r.exit_code() == 3);
}

TEST_CASE("malformed atom descriptor is a parse error") {
  ExperimentConfig cfg;
  cfg.domain_text = "interval -1 1";
  cfg.potential_text = "zero";
  cfg.data_text = "atom 0.2 bogus w=1";
  cfg.n = 9;
  cfg.out_dir = (fs::temp_directory_path() / "zlab-test-badatom").string();
  try {
    run_experiment(cfg);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
  }
}

TEST_CASE("unknown preset is a config error") {
  ExperimentConfig cfg;
  cfg.preset = "example-unknown";
  CHECK_THROWS_AS(run_experiment(cfg), Error);
}

TEST_CASE("generic without domain is a config error") {
  ExperimentConfig cfg;
  cfg.potential_text = "zero";
  CHECK_THROWS_AS(run_experiment(cfg), Error);
}
