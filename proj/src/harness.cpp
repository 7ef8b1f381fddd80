#include "cgl/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cgl/io.hpp"
#include "cgl/rng.hpp"

namespace cgl {
namespace {

constexpr const char* kVersion = "cgl 1.0.0";

const std::vector<std::string> kTasks = {
    "shape-eval",          "level-set",        "cone",
    "simulate",            "verify-measure",   "verify-stationarity",
    "verify-duality",      "convergence-study"};

bool is_task(const std::string& t) {
  for (const auto& k : kTasks)
    if (k == t) return true;
  return false;
}

bool is_stochastic(const std::string& t) {
  return t == "simulate" || t == "verify-measure" || t == "verify-stationarity" ||
         t == "convergence-study";
}

void reject_unknown(const json& doc, const std::vector<std::string>& allowed,
                    const std::string& where, std::vector<std::string>& bad) {
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool ok = false;
    for (const auto& k : allowed)
      if (k == it.key()) ok = true;
    if (!ok) bad.push_back(where.empty() ? it.key() : where + "." + it.key());
  }
}

double need_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number", {where});
  return j.get<double>();
}

std::size_t need_size(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw ConfigError(where + ": expected a nonnegative integer", {where});
  return j.get<std::size_t>();
}

SequenceModel dependence_from_json(const json& j, Marginal marg,
                                   const std::string& where) {
  SequenceModel m{std::move(marg)};
  if (j.is_null()) return m;
  if (!j.is_object() || !j.contains("dependence"))
    throw ConfigError(where + ": expected {\"dependence\": ...}", {where});
  const std::string kind = j.at("dependence").get<std::string>();
  std::vector<std::string> bad;
  if (kind == "iid") {
    reject_unknown(j, {"dependence"}, where, bad);
  } else if (kind == "ar1") {
    reject_unknown(j, {"dependence", "rho"}, where, bad);
    m.dependence = Dependence::GaussCopulaAR1;
    m.rho = need_number(j.at("rho"), where + ".rho");
    if (!(m.rho > -1.0 && m.rho < 1.0))
      throw ConfigError(where + ".rho: must lie in (-1, 1)", {where + ".rho"});
  } else {
    throw ConfigError(where + ".dependence: unknown kind '" + kind + "'",
                      {where + ".dependence"});
  }
  if (!bad.empty()) throw ConfigError("unknown fields in " + where, bad);
  return m;
}

json dependence_to_json(const SequenceModel& m) {
  json j;
  if (m.dependence == Dependence::IID) {
    j["dependence"] = "iid";
  } else {
    j["dependence"] = "ar1";
    j["rho"] = m.rho;
  }
  return j;
}

void write_payload(const OutputSpec& out, const std::string& body) {
  if (out.path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream os(out.path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + out.path);
  os << body;
}

json cone_to_json(const ConeReport& c) {
  json j;
  j["c1"] = c.c1;
  j["c2"] = std::isfinite(c.c2) ? json(c.c2) : json("inf");
  j["linear_low_slope"] = {c.linear_low_slope.first, c.linear_low_slope.second};
  j["linear_high_slope"] = {c.linear_high_slope.first, c.linear_high_slope.second};
  return j;
}

}  // namespace

std::uint64_t seed_derive(std::uint64_t master_seed, const std::string& label) {
  return rng::derive(master_seed, label);
}

json marginal_to_json(const Marginal& m) {
  json j;
  switch (m.kind()) {
    case MarginalKind::PointMass:
      j["kind"] = "point_mass";
      j["value"] = m.left();
      break;
    case MarginalKind::Uniform:
      j["kind"] = "uniform";
      j["lo"] = m.left();
      j["hi"] = m.right();
      break;
    case MarginalKind::ShiftedPower:
      j["kind"] = "shifted_power";
      j["x0"] = m.x0();
      j["k"] = m.power();
      j["lo"] = m.left();
      j["hi"] = m.right();
      break;
    case MarginalKind::Reciprocal:
      j["kind"] = "reciprocal";
      j["lo"] = m.left();
      j["hi"] = m.right();
      break;
    case MarginalKind::Tabulated:
      j["kind"] = "tabulated";
      j["xs"] = m.grid();
      j["density"] = m.density();
      break;
  }
  return j;
}

Marginal marginal_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError(where + ": expected {\"kind\": ...}", {where});
  const std::string kind = j.at("kind").get<std::string>();
  std::vector<std::string> bad;
  try {
    if (kind == "point_mass") {
      reject_unknown(j, {"kind", "value"}, where, bad);
      if (!bad.empty()) throw ConfigError("unknown fields in " + where, bad);
      return Marginal::point_mass(need_number(j.at("value"), where + ".value"));
    }
    if (kind == "uniform") {
      reject_unknown(j, {"kind", "lo", "hi"}, where, bad);
      if (!bad.empty()) throw ConfigError("unknown fields in " + where, bad);
      return Marginal::uniform(need_number(j.at("lo"), where + ".lo"),
                               need_number(j.at("hi"), where + ".hi"));
    }
    if (kind == "shifted_power") {
      reject_unknown(j, {"kind", "x0", "k", "lo", "hi"}, where, bad);
      if (!bad.empty()) throw ConfigError("unknown fields in " + where, bad);
      return Marginal::shifted_power(need_number(j.at("x0"), where + ".x0"),
                                     int(need_size(j.at("k"), where + ".k")),
                                     need_number(j.at("lo"), where + ".lo"),
                                     need_number(j.at("hi"), where + ".hi"));
    }
    if (kind == "reciprocal") {
      reject_unknown(j, {"kind", "lo", "hi"}, where, bad);
      if (!bad.empty()) throw ConfigError("unknown fields in " + where, bad);
      return Marginal::reciprocal(need_number(j.at("lo"), where + ".lo"),
                                  need_number(j.at("hi"), where + ".hi"));
    }
    if (kind == "tabulated") {
      reject_unknown(j, {"kind", "xs", "density", "renormalize"}, where, bad);
      if (!bad.empty()) throw ConfigError("unknown fields in " + where, bad);
      bool renorm = j.value("renormalize", false);
      return Marginal::tabulated(j.at("xs").get<std::vector<double>>(),
                                 j.at("density").get<std::vector<double>>(),
                                 renorm);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what(), {where});
  } catch (const json::exception& e) {
    throw ConfigError(where + ": " + e.what(), {where});
  }
  throw ConfigError(where + ".kind: unknown marginal kind '" + kind + "'",
                    {where + ".kind"});
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> kAllowed = {
      "model",     "alpha",       "beta",       "dependence_a", "dependence_b",
      "task",      "s",           "t",          "z",            "level",
      "a",         "b",           "n",          "m",            "replicas",
      "resolution","count",       "probe_cols", "z_grid",       "n_schedule",
      "master_seed", "threads",   "output"};
  std::vector<std::string> bad;
  reject_unknown(doc, kAllowed, "", bad);
  if (!bad.empty()) throw ConfigError("unknown config fields", bad);

  ExperimentConfig c;
  if (!doc.contains("task"))
    throw ConfigError("missing required field 'task'", {"task"});
  c.task = doc.at("task").get<std::string>();
  if (!is_task(c.task))
    throw ConfigError("unknown task '" + c.task + "'", {"task"});

  if (doc.contains("model")) {
    const std::string m = doc.at("model").get<std::string>();
    if (m == "exponential")
      c.model = ModelKind::Exponential;
    else if (m == "geometric")
      c.model = ModelKind::Geometric;
    else
      throw ConfigError("model: expected 'exponential' or 'geometric'", {"model"});
  }

  Marginal alpha = doc.contains("alpha")
                       ? marginal_from_json(doc.at("alpha"), "alpha")
                       : Marginal::point_mass(0.5);
  Marginal beta = doc.contains("beta") ? marginal_from_json(doc.at("beta"), "beta")
                                       : Marginal::point_mass(0.5);
  c.seq_a = dependence_from_json(doc.value("dependence_a", json()), std::move(alpha),
                                 "dependence_a");
  c.seq_b = dependence_from_json(doc.value("dependence_b", json()), std::move(beta),
                                 "dependence_b");

  if (doc.contains("s")) c.s = need_number(doc.at("s"), "s");
  if (doc.contains("t")) c.t = need_number(doc.at("t"), "t");
  if (doc.contains("z")) c.z = need_number(doc.at("z"), "z");
  if (doc.contains("level")) c.level = need_number(doc.at("level"), "level");
  if (doc.contains("a")) c.a_param = need_number(doc.at("a"), "a");
  if (doc.contains("b")) c.b_param = need_number(doc.at("b"), "b");
  if (doc.contains("n")) c.n = need_size(doc.at("n"), "n");
  if (doc.contains("m")) c.m = need_size(doc.at("m"), "m");
  if (doc.contains("replicas")) c.replicas = need_size(doc.at("replicas"), "replicas");
  if (doc.contains("resolution"))
    c.resolution = need_size(doc.at("resolution"), "resolution");
  if (doc.contains("count")) c.count = need_size(doc.at("count"), "count");
  if (doc.contains("probe_cols"))
    c.probe_cols = doc.at("probe_cols").get<std::vector<std::size_t>>();
  if (doc.contains("z_grid"))
    c.z_grid = doc.at("z_grid").get<std::vector<double>>();
  if (doc.contains("n_schedule"))
    c.n_schedule = doc.at("n_schedule").get<std::vector<std::size_t>>();
  if (doc.contains("master_seed"))
    c.master_seed = doc.at("master_seed").get<std::uint64_t>();
  if (doc.contains("threads")) c.threads = int(need_size(doc.at("threads"), "threads"));
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    std::vector<std::string> obad;
    reject_unknown(o, {"format", "path"}, "output", obad);
    if (!obad.empty()) throw ConfigError("unknown fields in output", obad);
    if (o.contains("format")) c.output.format = o.at("format").get<std::string>();
    if (o.contains("path")) c.output.path = o.at("path").get<std::string>();
    if (c.output.format != "csv" && c.output.format != "json" &&
        c.output.format != "svg")
      throw ConfigError("output.format: expected csv | json | svg",
                        {"output.format"});
  }

  // cross-field requirements
  std::vector<std::string> missing;
  if (is_stochastic(c.task) && !c.master_seed) missing.push_back("master_seed");
  if ((c.task == "simulate" || c.task == "verify-stationarity" ||
       c.task == "convergence-study") &&
      c.n == 0 && c.n_schedule.empty())
    missing.push_back("n");
  if (c.task == "verify-measure" && c.n == 0) missing.push_back("n");
  if (c.task == "verify-stationarity" && !c.z) missing.push_back("z");
  if ((c.task == "verify-measure" || c.task == "convergence-study") &&
      c.replicas == 0 && c.task == "convergence-study")
    missing.push_back("replicas");
  if (!missing.empty())
    throw ConfigError("missing required fields for task '" + c.task + "'", missing);
  return c;
}

json echo_config(const ExperimentConfig& c) {
  json j;
  j["model"] = c.model == ModelKind::Exponential ? "exponential" : "geometric";
  j["alpha"] = marginal_to_json(c.seq_a.marginal);
  j["beta"] = marginal_to_json(c.seq_b.marginal);
  j["dependence_a"] = dependence_to_json(c.seq_a);
  j["dependence_b"] = dependence_to_json(c.seq_b);
  j["task"] = c.task;
  j["s"] = c.s;
  j["t"] = c.t;
  if (c.z) j["z"] = *c.z;
  j["level"] = c.level;
  j["a"] = c.a_param;
  j["b"] = c.b_param;
  j["n"] = c.n;
  j["m"] = c.m;
  j["replicas"] = c.replicas;
  j["resolution"] = c.resolution;
  j["count"] = c.count;
  j["probe_cols"] = c.probe_cols;
  j["z_grid"] = c.z_grid;
  j["n_schedule"] = c.n_schedule;
  if (c.master_seed) j["master_seed"] = *c.master_seed;
  j["threads"] = c.threads;
  j["output"] = {{"format", c.output.format}, {"path", c.output.path}};
  return j;
}

json report_to_json(const TestReport& r) {
  json j;
  j["name"] = r.name;
  j["statistic"] = r.statistic;
  j["threshold"] = r.threshold;
  if (r.p_value) j["p_value"] = *r.p_value;
  j["pass"] = r.pass;
  j["sample_size"] = r.sample_size;
  j["seed"] = r.seed;
  j["notes"] = r.notes;
  return j;
}

namespace {

json run_shape_eval(const ExperimentConfig& c) {
  const ShapeProblem p = c.problem();
  json res;
  res["g"] = shape_value(p, c.s, c.t);
  const ConeReport cone = critical_cone(p);
  const double ratio = c.s / c.t;
  if (p.degenerate() || ratio <= cone.c1)
    res["regime"] = p.degenerate() ? "degenerate" : "linear_low";
  else if (ratio >= cone.c2)
    res["regime"] = "linear_high";
  else {
    res["regime"] = "strictly_concave";
    res["z_star"] = minimizer(p, c.s, c.t);
  }
  const auto grad = gradient(p, c.s, c.t);
  res["gradient"] = {grad.first, grad.second};
  return res;
}

json run_level_set(const ExperimentConfig& c) {
  const ShapeProblem p = c.problem();
  const int count = int(c.count == 0 ? 64 : c.count);
  const auto pts = level_set(p, c.level, count);
  json res;
  res["level"] = c.level;
  res["count"] = count;
  if (c.output.format == "csv") {
    std::ostringstream body;
    io::write_level_set_csv(body, pts);
    write_payload(c.output, body.str());
    res["written"] = c.output.path;
  } else if (c.output.format == "svg") {
    std::ostringstream body;
    std::optional<ConeReport> cone;
    if (!p.degenerate()) cone = critical_cone(p);
    io::write_level_set_svg(body, pts, cone);
    write_payload(c.output, body.str());
    res["written"] = c.output.path;
  } else {
    json arr = json::array();
    for (const auto& q : pts)
      arr.push_back({{"theta", q.theta}, {"s", q.s}, {"t", q.t}, {"g", q.g}});
    res["points"] = std::move(arr);
  }
  return res;
}

json run_simulate(const ExperimentConfig& c) {
  const std::size_t n = c.n, m = c.m == 0 ? c.n : c.m;
  const auto params =
      generate(c.seq_a, c.seq_b, m, n, seed_derive(*c.master_seed, "params"));
  json res;
  res["rows"] = m;
  res["cols"] = n;
  if (c.z) {
    // stationary boundary model: report the corner of Ghat
    res["z"] = *c.z;
    res["ghat_corner"] = boundary_corner(params, *c.z, c.model);
    return res;
  }
  const WeightGrid grid = sample_weights(params, c.model);
  if (c.output.format == "json") {
    res["g_corner"] = last_passage_corner(grid);
    return res;
  }
  const Matrix field = last_passage(grid.materialize());
  res["g_corner"] = field(m - 1, n - 1);
  std::ostringstream body;
  if (c.output.format == "csv")
    io::write_field_csv(body, field);
  else
    throw ConfigError("simulate supports output formats csv | json",
                      {"output.format"});
  write_payload(c.output, body.str());
  res["written"] = c.output.path;
  return res;
}

json run_verify_measure(const ExperimentConfig& c) {
  const auto r = check_F_pushforward(c.a_param, c.b_param, c.model, c.n,
                                     seed_derive(*c.master_seed, "verify/measure"));
  json res;
  res["report"] = report_to_json(r);
  res["pass"] = r.pass;
  return res;
}

json run_verify_stationarity(const ExperimentConfig& c) {
  std::vector<std::size_t> cols = c.probe_cols;
  if (cols.empty()) cols = {1, c.n / 2 == 0 ? 1 : c.n / 2, c.n};
  const auto r = check_increment_stationarity(
      c.seq_a, c.seq_b, c.model, *c.z, c.n, cols,
      seed_derive(*c.master_seed, "verify/stationarity"));
  json res;
  res["report"] = report_to_json(r);
  res["pass"] = r.pass;
  return res;
}

json run_verify_duality(const ExperimentConfig& c) {
  const ShapeProblem p = c.problem();
  std::vector<double> grid = c.z_grid;
  if (grid.empty()) {
    const auto [zlo, zhi] = p.z_interval();
    for (int k = 1; k <= 9; ++k)
      grid.push_back(zlo + (zhi - zlo) * k / 10.0);
  }
  const std::size_t tres = c.resolution == 0 ? 512 : c.resolution;
  const auto r = check_duality(p, grid, tres);
  json res;
  res["report"] = report_to_json(r);
  res["pass"] = r.pass;
  return res;
}

json run_cone(const ExperimentConfig& c) {
  return cone_to_json(critical_cone(c.problem()));
}

json run_convergence_study(const ExperimentConfig& c) {
  std::vector<std::size_t> schedule = c.n_schedule;
  if (schedule.empty())
    for (std::size_t n = 100; n <= c.n; n *= 2) schedule.push_back(n);
  const double g_target = shape_value(c.problem(), c.s, c.t);
  json table = json::array();
  for (const std::size_t n : schedule) {
    const auto est =
        mc_shape_estimate(c.seq_a, c.seq_b, c.model, c.s, c.t, n, c.replicas,
                          seed_derive(*c.master_seed, "convergence/" +
                                                          std::to_string(n)));
    table.push_back({{"n", n},
                     {"mean", est.mean},
                     {"stderr", est.stderr_},
                     {"g_target", g_target},
                     {"gap", est.mean - g_target}});
  }
  json res;
  res["g_target"] = g_target;
  res["table"] = std::move(table);
  return res;
}

const char* provenance(const std::string& task) {
  if (task == "shape-eval") return "variational limit-shape evaluation";
  if (task == "level-set") return "limit-shape level set by homogeneity";
  if (task == "cone") return "critical cone of strict concavity";
  if (task == "simulate") return "corner-growth last-passage recursion";
  if (task == "verify-measure") return "involution measure-preservation check";
  if (task == "verify-stationarity") return "boundary-model increment stationarity";
  if (task == "verify-duality") return "stationary/variational duality identity";
  return "Monte Carlo convergence to the limit shape";
}

}  // namespace

json run(const ExperimentConfig& c) {
#ifdef _OPENMP
  if (c.threads > 0) omp_set_num_threads(c.threads);
#endif
  const auto t0 = std::chrono::steady_clock::now();
  json results;
  if (c.task == "shape-eval")
    results = run_shape_eval(c);
  else if (c.task == "level-set")
    results = run_level_set(c);
  else if (c.task == "cone")
    results = run_cone(c);
  else if (c.task == "simulate")
    results = run_simulate(c);
  else if (c.task == "verify-measure")
    results = run_verify_measure(c);
  else if (c.task == "verify-stationarity")
    results = run_verify_stationarity(c);
  else if (c.task == "verify-duality")
    results = run_verify_duality(c);
  else if (c.task == "convergence-study")
    results = run_convergence_study(c);
  else
    throw ConfigError("unknown task '" + c.task + "'", {"task"});
  const auto t1 = std::chrono::steady_clock::now();

  json report;
  report["tool_version"] = kVersion;
  report["task"] = c.task;
  report["provenance"] = provenance(c.task);
  report["config"] = echo_config(c);
  report["results"] = std::move(results);
  report["wall_clock_seconds"] =
      std::chrono::duration<double>(t1 - t0).count();
  return report;
}

}  // namespace cgl
