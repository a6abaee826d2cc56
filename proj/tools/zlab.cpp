#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "zlab/experiment.hpp"

namespace {

int do_run(const std::string& target, zlab::ExperimentConfig overrides, bool n_set, bool a_set,
           bool b_set, bool out_set, const std::string& ladder_text, bool seed_set,
           const std::vector<std::string>& tol_texts) {
  zlab::ExperimentConfig cfg;
  if (std::filesystem::exists(target) && std::filesystem::is_regular_file(target)) {
    std::ifstream in(target);
    std::ostringstream buf;
    buf << in.rdbuf();
    cfg = zlab::parse_config_text(buf.str(), target);
  } else {
    bool known = false;
    for (const auto& [name, desc] : zlab::list_presets())
      if (name == target) known = true;
    if (!known)
      zlab::fail(zlab::Errc::config_error,
                 "'" + target + "' is neither a config file nor a known preset");
    cfg.preset = target;
  }

  if (n_set) cfg.n = overrides.n;
  if (a_set) cfg.alpha = overrides.alpha;
  if (b_set) cfg.beta = overrides.beta;
  if (out_set)
    cfg.out_dir = overrides.out_dir;
  else if (!cfg.preset.empty() && cfg.out_dir == "out")
    cfg.out_dir = "out/" + cfg.preset;
  if (seed_set) cfg.seed = overrides.seed;
  if (!ladder_text.empty()) {
    std::string synthetic = "ladder = " + ladder_text;
    zlab::ExperimentConfig tmp = zlab::parse_config_text(synthetic, "--ladder");
    cfg.ladder = tmp.ladder;
  }
  for (const auto& t : tol_texts) {
    zlab::ExperimentConfig tmp = zlab::parse_config_text(t, "--tol");
    std::string key = t.substr(0, t.find(' '));
    if (key == "tol_s") cfg.tol_s = tmp.tol_s;
    if (key == "tol_z") cfg.tol_z = tmp.tol_z;
    if (key == "tol_pos") cfg.tol_pos = tmp.tol_pos;
    if (key == "tol_zero") cfg.tol_zero = tmp.tol_zero;
  }

  zlab::RunOutcome outcome = zlab::run_experiment(cfg);
  for (const auto& c : outcome.checks)
    std::printf("CHECK %s %s margin=%g\n", c.name.c_str(), c.pass ? "PASS" : "FAIL", c.margin);
  std::printf("summary written to %s\n", (cfg.out_dir + "/summary.txt").c_str());
  return outcome.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for Dirichlet problems -Lap u + V u = mu with singular "
               "nonnegative potentials: zero-set detection, solvability classification, "
               "maximum-principle checks"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a preset or a key = value config file");
  std::string target;
  run->add_option("target", target, "preset name or config file path")->required();
  zlab::ExperimentConfig ov;
  std::string ladder_text;
  auto* optn = run->add_option("--n", ov.n, "nodes per axis");
  auto* opta = run->add_option("--alpha", ov.alpha, "first exponent");
  auto* optb = run->add_option("--beta", ov.beta, "second exponent");
  auto* opto = run->add_option("--out", ov.out_dir, "output directory");
  auto* opts = run->add_option("--seed", ov.seed, "seed for randomized checks");
  run->add_option("--ladder", ladder_text, "truncation schedule k0,ratio,max[,stop_tol]");
  double tol_s = 0, tol_z = 0, tol_pos = 0, tol_zero = 0;
  auto* o1 = run->add_option("--tol-s", tol_s, "zero-set detection threshold (relative)");
  auto* o2 = run->add_option("--tol-z", tol_z, "defect threshold for the Z classification");
  auto* o3 = run->add_option("--tol-pos", tol_pos, "positivity threshold for verdicts");
  auto* o4 = run->add_option("--tol-zero", tol_zero, "vanishing threshold for verdicts");

  auto* list = app.add_subcommand("list-presets", "print the preset catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& [name, desc] : zlab::list_presets())
        std::printf("%-18s %s\n", name.c_str(), desc.c_str());
      return 0;
    }
    std::vector<std::string> tols;
    if (*o1) tols.push_back("tol_s = " + std::to_string(tol_s));
    if (*o2) tols.push_back("tol_z = " + std::to_string(tol_z));
    if (*o3) tols.push_back("tol_pos = " + std::to_string(tol_pos));
    if (*o4) tols.push_back("tol_zero = " + std::to_string(tol_zero));
    return do_run(target, ov, static_cast<bool>(*optn), static_cast<bool>(*opta),
                  static_cast<bool>(*optb), static_cast<bool>(*opto), ladder_text,
                  static_cast<bool>(*opts), tols);
  } catch (const zlab::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    if (e.code() == zlab::Errc::parse_error || e.code() == zlab::Errc::config_error) return 2;
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
