#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cgl/verify.hpp"

namespace cgl {

using json = nlohmann::ordered_json;

/// Thrown when a config document fails validation; `fields` lists the
/// offending entries.
struct ConfigError : std::runtime_error {
  std::vector<std::string> fields;
  explicit ConfigError(const std::string& what, std::vector<std::string> f = {})
      : std::runtime_error(what), fields(std::move(f)) {}
};

struct OutputSpec {
  std::string format = "json";  // csv | json | svg
  std::string path = "-";       // "-" = stdout
};

/// Declarative experiment description; round-trips losslessly through JSON
/// and rejects unknown fields.
struct ExperimentConfig {
  ModelKind model = ModelKind::Exponential;
  SequenceModel seq_a{Marginal::point_mass(0.5)};
  SequenceModel seq_b{Marginal::point_mass(0.5)};
  std::string task;
  double s = 1.0, t = 1.0, level = 1.0;
  std::optional<double> z;
  double a_param = 1.0, b_param = 1.0;  // verify-measure scalars
  std::size_t n = 0, m = 0, replicas = 0, resolution = 0, count = 64;
  std::vector<std::size_t> probe_cols;
  std::vector<double> z_grid;
  std::vector<std::size_t> n_schedule;
  std::optional<std::uint64_t> master_seed;
  int threads = 0;  // 0 = machine parallelism
  OutputSpec output;

  ShapeProblem problem() const { return {seq_a.marginal, seq_b.marginal, model}; }
};

ExperimentConfig parse_config(const json& doc);
// normalized config with every default made explicit
json echo_config(const ExperimentConfig& c);

json marginal_to_json(const Marginal& m);
Marginal marginal_from_json(const json& j, const std::string& where);

json report_to_json(const TestReport& r);

/// Runs the task and returns the RunReport document. Writes csv/svg payloads
/// to the configured output path when the task produces them.
json run(const ExperimentConfig& c);

// Collision-resistant derivation of a labelled substream from a master seed.
std::uint64_t seed_derive(std::uint64_t master_seed, const std::string& label);

}  // namespace cgl
