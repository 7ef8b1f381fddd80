#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <unordered_set>

#include "cgl/harness.hpp"
#include "cgl/io.hpp"

using namespace cgl;

namespace {

json uniform_cfg(const std::string& task) {
  json doc;
  doc["task"] = task;
  doc["alpha"] = {{"kind", "uniform"}, {"lo", 0.5}, {"hi", 1.5}};
  doc["beta"] = {{"kind", "uniform"}, {"lo", 0.5}, {"hi", 1.5}};
  return doc;
}

// results payload with the timing stripped: the reproducibility contract
// covers every numeric output, not the wall clock
std::string stable_dump(const json& report) {
  json r = report;
  r.erase("wall_clock_seconds");
  return r.dump();
}

}  // namespace

TEST_CASE("unknown fields are rejected with their names") {
  json doc = uniform_cfg("shape-eval");
  doc["sigma"] = 1.0;
  doc["tau"] = 2.0;
  try {
    parse_config(doc);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    REQUIRE(e.fields.size() == 2);
    CHECK(e.fields[0] == "sigma");
    CHECK(e.fields[1] == "tau");
  }
  json nested = uniform_cfg("shape-eval");
  nested["alpha"]["scale"] = 2.0;
  CHECK_THROWS_AS(parse_config(nested), ConfigError);
}

TEST_CASE("invalid enum values are rejected") {
  json doc = uniform_cfg("shape-eval");
  doc["model"] = "lognormal";
  CHECK_THROWS_AS(parse_config(doc), ConfigError);
  doc = uniform_cfg("fit-marginals");
  CHECK_THROWS_AS(parse_config(doc), ConfigError);
  doc = uniform_cfg("shape-eval");
  doc["output"] = {{"format", "pdf"}};
  CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("stochastic tasks require a master seed") {
  json doc = uniform_cfg("simulate");
  doc["n"] = 10;
  CHECK_THROWS_AS(parse_config(doc), ConfigError);
  doc["master_seed"] = 1;
  CHECK_NOTHROW(parse_config(doc));
  // deterministic tasks do not
  CHECK_NOTHROW(parse_config(uniform_cfg("cone")));
}

TEST_CASE("marginal records round-trip through JSON") {
  const std::vector<Marginal> ms = {
      Marginal::point_mass(0.7),
      Marginal::uniform(0.5, 1.5),
      Marginal::shifted_power(1.0, 3, 1.0, 2.0),
      Marginal::reciprocal(0.4, 0.9),
      Marginal::tabulated({0.5, 1.0, 1.5}, {0.5, 1.5, 0.5}, true),
  };
  for (const auto& m : ms) {
    const json j = marginal_to_json(m);
    const Marginal back = marginal_from_json(j, "alpha");
    CHECK(marginal_to_json(back).dump() == j.dump());
    CHECK(back.kind() == m.kind());
    CHECK(back.left() == m.left());
    CHECK(back.right() == m.right());
  }
}

TEST_CASE("config echo prints every default and round-trips") {
  const ExperimentConfig c = parse_config(uniform_cfg("shape-eval"));
  const json echo = echo_config(c);
  // no hidden defaults: the echo names every knob
  for (const char* key : {"model", "alpha", "beta", "dependence_a",
                          "dependence_b", "task", "s", "t", "level", "n", "m",
                          "replicas", "resolution", "count", "threads",
                          "output"})
    CHECK(echo.contains(key));
  // echo parses back to an equivalent config
  const ExperimentConfig c2 = parse_config(echo);
  CHECK(echo_config(c2).dump() == echo.dump());
}

TEST_CASE("seed_derive: deterministic, label-sensitive, collision-free") {
  CHECK(seed_derive(42, "alpha") == seed_derive(42, "alpha"));
  CHECK(seed_derive(42, "alpha") != seed_derive(42, "beta"));
  CHECK(seed_derive(42, "alpha") != seed_derive(43, "alpha"));
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(1 << 20);
  for (int i = 0; i < 1000000; ++i)
    seen.insert(seed_derive(42, "label/" + std::to_string(i)));
  CHECK(seen.size() == 1000000);  // no collisions over a 1e6-label corpus
}

TEST_CASE("run: shape-eval on uniform marginals gives 2 ln 3") {
  json doc = uniform_cfg("shape-eval");
  const json report = run(parse_config(doc));
  CHECK(report["results"]["g"].get<double>() ==
        doctest::Approx(2 * std::log(3.0)).epsilon(1e-12));
  CHECK(report.contains("config"));
  CHECK(report.contains("provenance"));
  CHECK(report.contains("tool_version"));
}

TEST_CASE("run: cone task reproduces the pinned constants") {
  json doc;
  doc["task"] = "cone";
  doc["alpha"] = {{"kind", "shifted_power"}, {"x0", 0.0}, {"k", 2}, {"lo", 0.0},
                  {"hi", 1.0}};
  doc["beta"] = {{"kind", "shifted_power"}, {"x0", 1.0}, {"k", 3}, {"lo", 1.0},
                 {"hi", 2.0}};
  const json report = run(parse_config(doc));
  CHECK(report["results"]["c1"].get<double>() ==
        doctest::Approx(0.105922).epsilon(1e-4));
  CHECK(report["results"]["c2"].get<double>() ==
        doctest::Approx(5.863092).epsilon(1e-4));
}

TEST_CASE("run: reports are bit-identical across reruns and thread counts") {
  json doc = uniform_cfg("convergence-study");
  doc["master_seed"] = 991;
  doc["replicas"] = 6;
  doc["n_schedule"] = {50, 100};
  json d1 = doc, d2 = doc;
  d1["threads"] = 1;
  d2["threads"] = 4;
  const json r1 = run(parse_config(d1));
  const json r1b = run(parse_config(d1));
  const json r2 = run(parse_config(d2));
  CHECK(stable_dump(r1) == stable_dump(r1b));
  CHECK(r1["results"].dump() == r2["results"].dump());
}

TEST_CASE("run: simulate reports the corner value deterministically") {
  json doc = uniform_cfg("simulate");
  doc["n"] = 64;
  doc["m"] = 32;
  doc["master_seed"] = 7;
  const json r1 = run(parse_config(doc));
  const json r2 = run(parse_config(doc));
  CHECK(r1["results"]["g_corner"].get<double>() ==
        r2["results"]["g_corner"].get<double>());
  CHECK(r1["results"]["rows"] == 32);
  CHECK(r1["results"]["cols"] == 64);
}

TEST_CASE("run: level-set json payload carries count points on the level") {
  json doc = uniform_cfg("level-set");
  doc["level"] = 2.0;
  doc["count"] = 17;
  const json r = run(parse_config(doc));
  REQUIRE(r["results"]["points"].size() == 17);
  for (const auto& p : r["results"]["points"])
    CHECK(p["g"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("binary field format round-trips exactly") {
  Matrix m(3, 5);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      m(i, j) = std::sqrt(double(i * 5 + j)) * 1.25e-3 + double(i);
  std::stringstream ss;
  io::write_field_binary(ss, m);
  // 16-byte header + 15 doubles
  CHECK(ss.str().size() == 16 + 15 * 8);
  const Matrix back = io::read_field_binary(ss);
  CHECK(back.rows == 3);
  CHECK(back.cols == 5);
  CHECK(back.data == m.data);
  std::stringstream bad("not a field file at all, clearly");
  CHECK_THROWS(io::read_field_binary(bad));
}

TEST_CASE("csv emitters write the documented headers") {
  Matrix m(1, 2);
  m(0, 0) = 1.5;
  m(0, 1) = 2.5;
  std::ostringstream os;
  io::write_field_csv(os, m);
  CHECK(os.str().rfind("i,j,value\r\n", 0) == 0);
  CHECK(os.str().find("1,2,2.5\r\n") != std::string::npos);
  std::ostringstream ls;
  io::write_level_set_csv(ls, {{0.5, 1.0, 2.0, 1.0}});
  CHECK(ls.str().rfind("theta,s,t,g\r\n", 0) == 0);
}
