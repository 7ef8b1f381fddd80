#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgl/shape.hpp"

namespace cgl {

/// Outcome of one statistical or exact check; reproducible from
/// (name, seed, sample_size).
struct TestReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  std::optional<double> p_value;
  bool pass = false;
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
};

// Measure preservation of the involution F on the product law with
// marginals (rate a, rate b, rate a+b) or geometric (a, b, ab). Tests each
// output marginal (KS / chi-square) plus pairwise independence via Pearson
// correlation of probability-integral transforms. `corrupt_drop_w` runs the
// negative control that omits the +w term from the map.
TestReport check_F_pushforward(double a, double b, ModelKind model,
                               std::size_t n_samples, std::uint64_t seed,
                               bool corrupt_drop_w = false);

// Increment stationarity of the boundary model: for each probe column l the
// increments I(i, l) must be independent with the boundary-row law.
// `z_cdf_offset` shifts the reference CDF (negative control).
TestReport check_increment_stationarity(const SequenceModel& model_a,
                                        const SequenceModel& model_b,
                                        ModelKind model, double z, std::size_t n,
                                        const std::vector<std::size_t>& probe_cols,
                                        std::uint64_t seed,
                                        double z_cdf_offset = 0.0);

// Duality gap: max over the z grid of |g_z(1,1) - sup_t max{...}| with the
// right side evaluated on a t grid plus golden-section refinement.
TestReport check_duality(const ShapeProblem& p, const std::vector<double>& z_grid,
                         std::size_t t_resolution, double threshold = 1e-6);

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::vector<double> replicas;
};

// Replica mean of G(floor(n s), floor(n t))/n with fresh parameters and
// weights per replica. Replicas run in a parallel map and are merged by index.
McEstimate mc_shape_estimate(const SequenceModel& model_a,
                             const SequenceModel& model_b, ModelKind model,
                             double s, double t, std::size_t n,
                             std::size_t replicas, std::uint64_t seed);

// Replica mean of Ghat(n,n)/n against the exact conditional mean of the
// stationary model; passes within 4 standard errors. `omit_boundary` is the
// negative control (plain G instead of Ghat).
TestReport check_stationary_mean(const SequenceModel& model_a,
                                 const SequenceModel& model_b, ModelKind model,
                                 double z, std::size_t n, std::size_t replicas,
                                 std::uint64_t seed, bool omit_boundary = false);

}  // namespace cgl
