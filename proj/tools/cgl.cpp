// Command-line front end: one subcommand per task, `--config FILE` plus flag
// overrides. Exit codes: 0 success, 1 validation error, 2 verification failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cgl/harness.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::optional<std::string> model, format, out;
  std::optional<double> s, t, z, level, a, b;
  std::optional<std::uint64_t> n, m, replicas, resolution, count, seed;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, Flags& f, bool stochastic) {
  cmd->add_option("--config", f.config_path, "JSON experiment config file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--model", f.model, "exponential | geometric");
  cmd->add_option("--s", f.s, "horizontal direction component");
  cmd->add_option("--t", f.t, "vertical direction component");
  cmd->add_option("--z", f.z, "stationary boundary parameter");
  cmd->add_option("--level", f.level, "level-set value");
  cmd->add_option("--a", f.a, "rate/parameter a (verify-measure)");
  cmd->add_option("--b", f.b, "rate/parameter b (verify-measure)");
  cmd->add_option("--n", f.n, "grid size / sample count");
  cmd->add_option("--m", f.m, "row count (defaults to n)");
  cmd->add_option("--replicas", f.replicas, "Monte Carlo replicas");
  cmd->add_option("--resolution", f.resolution, "grid resolution");
  cmd->add_option("--count", f.count, "level-set point count");
  auto* seed = cmd->add_option("--seed", f.seed, "master seed (no wall-clock seeding)");
  if (stochastic && f.config_path.empty()) seed->required(false);
  cmd->add_option("--threads", f.threads, "worker pool size (default: machine)");
  cmd->add_option("--format", f.format, "output format: csv | json | svg");
  cmd->add_option("--out", f.out, "output path ('-' = stdout)");
}

cgl::json merge(const Flags& f, const std::string& task) {
  cgl::json doc = cgl::json::object();
  if (!f.config_path.empty()) {
    std::ifstream is(f.config_path);
    is >> doc;
  }
  doc["task"] = task;
  if (f.model) doc["model"] = *f.model;
  if (f.s) doc["s"] = *f.s;
  if (f.t) doc["t"] = *f.t;
  if (f.z) doc["z"] = *f.z;
  if (f.level) doc["level"] = *f.level;
  if (f.a) doc["a"] = *f.a;
  if (f.b) doc["b"] = *f.b;
  if (f.n) doc["n"] = *f.n;
  if (f.m) doc["m"] = *f.m;
  if (f.replicas) doc["replicas"] = *f.replicas;
  if (f.resolution) doc["resolution"] = *f.resolution;
  if (f.count) doc["count"] = *f.count;
  if (f.seed) doc["master_seed"] = *f.seed;
  if (f.threads) doc["threads"] = *f.threads;
  if (f.format || f.out) {
    if (!doc.contains("output")) doc["output"] = cgl::json::object();
    if (f.format) doc["output"]["format"] = *f.format;
    if (f.out) doc["output"]["path"] = *f.out;
  }
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corner-growth laboratory: limit shapes, last-passage "
               "simulation and stationarity checks"};
  app.require_subcommand(1);

  const char* tasks[] = {"shape-eval",        "level-set",
                         "cone",              "simulate",
                         "verify-measure",    "verify-stationarity",
                         "verify-duality",    "convergence-study"};
  Flags flags;
  std::string chosen;
  for (const char* t : tasks) {
    const bool stochastic = std::string(t) == "simulate" ||
                            std::string(t).rfind("verify-", 0) == 0 ||
                            std::string(t) == "convergence-study";
    auto* cmd = app.add_subcommand(t);
    add_common(cmd, flags, stochastic);
    cmd->callback([t, &chosen] { chosen = t; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const cgl::ExperimentConfig cfg = cgl::parse_config(merge(flags, chosen));
    const cgl::json report = cgl::run(cfg);
    // payloads aimed at stdout push the report to stderr
    const bool payload_on_stdout =
        cfg.output.format != "json" && cfg.output.path == "-" &&
        (cfg.task == "level-set" || cfg.task == "simulate");
    (payload_on_stdout ? std::cerr : std::cout) << report.dump(2) << "\n";
    if (report["results"].contains("pass") &&
        !report["results"]["pass"].get<bool>())
      return 2;
    return 0;
  } catch (const cgl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    for (const auto& f : e.fields) std::cerr << "  field: " << f << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
