#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dkg/experiments.hpp"

namespace {

// exit status: 0 every check passed, 1 some check failed, 2 usage or config
// error, 3 runtime failure (resource ceiling, unwritable output)
constexpr int kPass = 0, kFail = 1, kUsage = 2, kRuntime = 3;

std::string flag_name(const std::string& check) {
  std::string s = "--tol-" + check;
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dkg: Dirac-Klein-Gordon numerical experiments"};
  app.require_subcommand(1);

  std::string config_path;
  unsigned seed = 0;
  std::string out;
  bool plots = false;
  const auto defaults = dkg::ExperimentConfig::default_checks();
  std::map<std::string, double> tol = defaults;

  std::vector<CLI::App*> subs;
  for (const auto& name : dkg::experiment_registry()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--out", out, "override the output directory");
    sub->add_flag("--plots", plots, "emit SVG plots next to the CSV files");
    for (auto& [k, v] : tol) sub->add_option(flag_name(k), v, "tolerance for check " + k)->capture_default_str();
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  CLI::App* sub = nullptr;
  for (auto* s : subs)
    if (s->parsed()) sub = s;

  dkg::ExperimentConfig cfg;
  try {
    std::ifstream is(config_path);
    std::stringstream ss;
    ss << is.rdbuf();
    cfg = dkg::parse_config(ss.str());
    cfg.experiment = sub->get_name();
    if (sub->count("--seed")) cfg.seed = seed;
    if (sub->count("--out")) cfg.out = out;
    for (const auto& [k, v] : tol)
      if (sub->count(flag_name(k))) cfg.checks[k] = v;
    cfg.validate();
  } catch (const dkg::ConfigError& e) {
    std::cerr << "dkg: config error at " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "dkg: " << e.what() << "\n";
    return kUsage;
  }

  try {
    dkg::RunReport r = dkg::run_experiment(cfg, plots);
    for (const auto& c : r.checks)
      std::printf("%-4s %-24s value=%.6g bound=%.6g%s%s\n", c.pass ? "ok" : "FAIL", c.name.c_str(), c.value, c.bound,
                  c.detail.empty() ? "" : "  ", c.detail.c_str());
    for (const auto& w : r.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    std::printf("%s %s (%.2f s) -> %s\n", r.experiment.c_str(), r.pass ? "PASS" : "FAIL", r.wall_seconds,
                cfg.out.c_str());
    return r.pass ? kPass : kFail;
  } catch (const dkg::ExperimentError& e) {
    std::cerr << "dkg: " << e.what() << "\n";
    return kRuntime;
  } catch (const dkg::UsageError& e) {
    std::cerr << "dkg: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "dkg: " << e.what() << "\n";
    return kRuntime;
  }
}
