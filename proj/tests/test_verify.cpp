#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cgl/verify.hpp"

using namespace cgl;

namespace {
const SequenceModel kUni{Marginal::uniform(0.5, 1.5)};
const SequenceModel kGeo{Marginal::uniform(0.3, 0.5)};
}  // namespace

TEST_CASE("F pushforward: positive cases and the negative control") {
  // pinned seeds; moderate n keeps the unit suite fast (the acceptance run
  // uses n = 1e5)
  const std::size_t n = 30000;
  CHECK(check_F_pushforward(1.0, 1.0, ModelKind::Exponential, n, 101).pass);
  CHECK(check_F_pushforward(0.5, 2.0, ModelKind::Exponential, n, 102).pass);
  CHECK(check_F_pushforward(0.3, 0.5, ModelKind::Geometric, n, 103).pass);
  // dropping the +w term destroys the product law
  CHECK_FALSE(
      check_F_pushforward(1.0, 1.0, ModelKind::Exponential, n, 101, true).pass);
  CHECK_FALSE(
      check_F_pushforward(0.3, 0.5, ModelKind::Geometric, n, 103, true).pass);
}

TEST_CASE("increment stationarity: positive case and the z-mismatch control") {
  const std::vector<std::size_t> cols = {1, 10, 100};
  const auto r = check_increment_stationarity(kUni, kUni, ModelKind::Exponential,
                                              0.1, 4000, cols, 201);
  CHECK(r.pass);
  // scoring the increments against the wrong rate must fail loudly
  const auto bad = check_increment_stationarity(
      kUni, kUni, ModelKind::Exponential, 0.1, 4000, cols, 201, 0.15);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("increment stationarity: geometric model") {
  const auto r = check_increment_stationarity(kGeo, kGeo, ModelKind::Geometric,
                                              1.1, 4000, {1, 25, 50}, 202);
  CHECK(r.pass);
}

TEST_CASE("duality identity on uniform and geometric problems") {
  const ShapeProblem pe{Marginal::uniform(0.5, 1.5), Marginal::uniform(0.6, 1.2),
                        ModelKind::Exponential};
  const auto [lo, hi] = pe.z_interval();
  std::vector<double> grid;
  for (int k = 1; k <= 9; ++k) grid.push_back(lo + (hi - lo) * k / 10.0);
  const auto r = check_duality(pe, grid, 2000);
  CHECK(r.pass);
  CHECK(r.statistic <= 1e-6);

  const ShapeProblem pg{Marginal::uniform(0.3, 0.5), Marginal::uniform(0.2, 0.6),
                        ModelKind::Geometric};
  const auto [glo, ghi] = pg.z_interval();
  std::vector<double> ggrid;
  for (int k = 1; k <= 9; ++k) ggrid.push_back(glo + (ghi - glo) * k / 10.0);
  CHECK(check_duality(pg, ggrid, 2000).pass);
}

TEST_CASE("mc estimate is deterministic and has a sane stderr") {
  const auto e1 =
      mc_shape_estimate(kUni, kUni, ModelKind::Exponential, 1, 1, 200, 8, 301);
  const auto e2 =
      mc_shape_estimate(kUni, kUni, ModelKind::Exponential, 1, 1, 200, 8, 301);
  CHECK(e1.mean == e2.mean);  // bit-identical replicas
  CHECK(e1.replicas == e2.replicas);
  CHECK(e1.stderr_ > 0.0);
  CHECK(e1.replicas.size() == 8);
  // crude sanity: within 10% of the limit already at n = 200
  CHECK(std::abs(e1.mean - 2 * std::log(3.0)) < 0.2);
}

TEST_CASE("stationary mean: both models pass, negative control fails") {
  CHECK(check_stationary_mean(kUni, kUni, ModelKind::Exponential, 0.1, 300, 12,
                              401)
            .pass);
  CHECK(check_stationary_mean(kGeo, kGeo, ModelKind::Geometric, 1.1, 300, 12,
                              402)
            .pass);
  // plain G lacks the boundary contribution and sits far below Ghat's mean
  CHECK_FALSE(check_stationary_mean(kUni, kUni, ModelKind::Exponential, 0.1,
                                    300, 12, 401, true)
                  .pass);
}

TEST_CASE("reports carry reproducibility metadata") {
  const auto r = check_F_pushforward(1.0, 1.0, ModelKind::Exponential, 5000, 77);
  CHECK(r.name == "F-pushforward");
  CHECK(r.sample_size == 5000);
  CHECK(r.seed != 0);
  CHECK(!r.notes.empty());
}
