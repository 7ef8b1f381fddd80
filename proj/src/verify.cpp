#include "cgl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cgl/rng.hpp"
#include "cgl/stats.hpp"

namespace cgl {
namespace {

constexpr double kCorrBound = 3.3;  // |rho| * sqrt(n) acceptance bound

double exp_cdf(double x, double rate) { return -std::expm1(-rate * x); }

// randomized probability-integral transform for a geometric(q) sample k:
// uniform on [F(k-1), F(k)]
double geom_pit(double k, double q, double v) {
  const double qk = std::pow(q, k);
  return 1.0 - qk + v * (1.0 - q) * qk;
}

std::vector<double> geom_cells(double q, std::size_t n) {
  // tail cell keeps expected count >= ~10
  int kmax = std::max(1, int(std::floor(std::log(10.0 / double(n)) / std::log(q))));
  std::vector<double> probs(kmax + 1);
  for (int k = 0; k < kmax; ++k) probs[k] = (1.0 - q) * std::pow(q, k);
  probs[kmax] = std::pow(q, kmax);
  return probs;
}

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / double(v.size());
}

double stderr_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / double(v.size() - 1) / double(v.size()));
}

}  // namespace

TestReport check_F_pushforward(double a, double b, ModelKind model,
                               std::size_t n, std::uint64_t seed,
                               bool corrupt_drop_w) {
  if (model == ModelKind::Exponential) {
    if (!(a > 0) || !(b > 0)) throw std::invalid_argument("rates must be positive");
  } else if (!(a > 0) || !(b > 0) || a >= 1 || b >= 1 || a * b >= 1) {
    throw std::invalid_argument("geometric parameters must lie in (0,1)");
  }
  const std::uint64_t sx = rng::derive(seed, "F/x"), sy = rng::derive(seed, "F/y"),
                      sw = rng::derive(seed, "F/w"), sv = rng::derive(seed, "F/pit");
  std::vector<double> px(n), py(n), pw(n);
  std::vector<double> rx, ry, rw;  // raw outputs (geometric chi-square)
  if (model == ModelKind::Geometric) {
    rx.resize(n);
    ry.resize(n);
    rw.resize(n);
  }
  for (std::size_t k = 0; k < n; ++k) {
    double x, y, w;
    if (model == ModelKind::Exponential) {
      x = -std::log(rng::uniform_at(sx, k)) / a;
      y = -std::log(rng::uniform_at(sy, k)) / b;
      w = -std::log(rng::uniform_at(sw, k)) / (a + b);
    } else {
      x = std::floor(std::log(rng::uniform_at(sx, k)) / std::log(a));
      y = std::floor(std::log(rng::uniform_at(sy, k)) / std::log(b));
      w = std::floor(std::log(rng::uniform_at(sw, k)) / std::log(a * b));
    }
    auto [xo, yo, wo] = apply_F(x, y, w);
    if (corrupt_drop_w) {
      const double m = std::min(x, y);
      xo = x - m;
      yo = y - m;
      wo = m;
    }
    if (model == ModelKind::Exponential) {
      px[k] = exp_cdf(xo, a);
      py[k] = exp_cdf(yo, b);
      pw[k] = exp_cdf(wo, a + b);
    } else {
      rx[k] = xo;
      ry[k] = yo;
      rw[k] = wo;
      px[k] = geom_pit(xo, a, rng::uniform_at(sv, 3 * k));
      py[k] = geom_pit(yo, b, rng::uniform_at(sv, 3 * k + 1));
      pw[k] = geom_pit(wo, a * b, rng::uniform_at(sv, 3 * k + 2));
    }
  }

  TestReport r;
  r.name = corrupt_drop_w ? "F-pushforward(negative control)" : "F-pushforward";
  r.sample_size = n;
  r.seed = seed;
  const double level = 0.01 / 3.0;  // Bonferroni over the three marginals
  double min_p = 1.0;
  const char* labels[3] = {"x", "y", "w"};
  const std::vector<double>* pits[3] = {&px, &py, &pw};
  const std::vector<double>* raws[3] = {&rx, &ry, &rw};
  const double qs[3] = {a, b, a * b};
  for (int i = 0; i < 3; ++i) {
    const double p = (model == ModelKind::Exponential)
                         ? stats::ks_test_uniform(*pits[i])
                         : stats::chi_square_gof(*raws[i], geom_cells(qs[i], n));
    min_p = std::min(min_p, p);
    r.notes.push_back(std::string("marginal ") + labels[i] + ": p = " + std::to_string(p));
  }
  double max_corr = 0.0;
  const double rn = std::sqrt(double(n));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double rho = std::abs(stats::pearson(*pits[i], *pits[j])) * rn;
      max_corr = std::max(max_corr, rho);
      r.notes.push_back(std::string("corr ") + labels[i] + labels[j] +
                        ": |rho|*sqrt(n) = " + std::to_string(rho));
    }
  r.statistic = min_p;
  r.threshold = level;
  r.p_value = min_p;
  r.pass = (min_p >= level) && (max_corr <= kCorrBound);
  return r;
}

TestReport check_increment_stationarity(const SequenceModel& model_a,
                                        const SequenceModel& model_b,
                                        ModelKind model, double z, std::size_t n,
                                        const std::vector<std::size_t>& probe_cols,
                                        std::uint64_t seed, double z_cdf_offset) {
  const ParameterPair params = generate(model_a, model_b, n, n, seed);
  const std::uint64_t sv = rng::derive(seed, "stationarity/pit");
  const double z_ref = z + z_cdf_offset;

  TestReport r;
  r.name = "increment-stationarity";
  r.sample_size = n;
  r.seed = seed;
  double min_p = 1.0, max_corr = 0.0;
  for (std::size_t l : probe_cols) {
    const std::vector<double> inc = boundary_increment_column(params, z, model, l);
    std::vector<double> u(inc.size());
    for (std::size_t i = 0; i < inc.size(); ++i) {
      if (model == ModelKind::Exponential) {
        u[i] = exp_cdf(inc[i], params.a[i] + z_ref);
      } else {
        const double q = params.a[i] / z_ref;
        u[i] = geom_pit(inc[i], q, rng::uniform_at(sv, l * n + i));
      }
    }
    const double p = stats::ks_test_uniform(u);
    min_p = std::min(min_p, p);
    const std::vector<double> head(u.begin(), u.end() - 1);
    const std::vector<double> tail(u.begin() + 1, u.end());
    const double rho = std::abs(stats::pearson(head, tail)) * std::sqrt(double(u.size() - 1));
    max_corr = std::max(max_corr, rho);
    r.notes.push_back("column " + std::to_string(l) + ": KS p = " + std::to_string(p) +
                      ", lag1 |rho|*sqrt(n) = " + std::to_string(rho));
  }
  r.statistic = min_p;
  r.threshold = 0.01;
  r.p_value = min_p;
  r.pass = (min_p >= 0.01) && (max_corr <= kCorrBound);
  return r;
}

namespace {

double shape_on_edge(const ShapeProblem& p, double s, double t) {
  if (s == 0.0 && t == 0.0) return 0.0;
  if (s == 0.0) return t * boundary_values(p).second;
  if (t == 0.0) return s * boundary_values(p).first;
  return shape_value(p, s, t);
}

}  // namespace

TestReport check_duality(const ShapeProblem& p, const std::vector<double>& z_grid,
                         std::size_t t_resolution, double threshold) {
  TestReport r;
  r.name = "duality";
  r.sample_size = t_resolution;
  r.threshold = threshold;
  double max_gap = 0.0;
  for (double z : z_grid) {
    const double lhs = g_z_value(p, z, 1.0, 1.0);
    auto branch = [&](int which, double t) {
      return which == 0 ? g_z_value(p, z, 1.0 - t, 0.0) + shape_on_edge(p, t, 1.0)
                        : g_z_value(p, z, 0.0, 1.0 - t) + shape_on_edge(p, 1.0, t);
    };
    double best = -kInf;
    int best_branch = 0;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k <= t_resolution; ++k) {
      const double t = double(k) / double(t_resolution);
      for (int w = 0; w < 2; ++w) {
        const double v = branch(w, t);
        if (v > best) {
          best = v;
          best_branch = w;
          best_k = k;
        }
      }
    }
    // golden-section refinement around the coarse argmax
    const double step = 1.0 / double(t_resolution);
    double lo = std::max(0.0, double(best_k) * step - step);
    double hi = std::min(1.0, double(best_k) * step + step);
    constexpr double invphi = 0.6180339887498948482045868343656;
    double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
    double f1 = branch(best_branch, x1), f2 = branch(best_branch, x2);
    for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + invphi * (hi - lo);
        f2 = branch(best_branch, x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - invphi * (hi - lo);
        f1 = branch(best_branch, x1);
      }
    }
    best = std::max(best, std::max(f1, f2));
    const double gap = std::abs(lhs - best);
    max_gap = std::max(max_gap, gap);
    r.notes.push_back("z = " + std::to_string(z) + ": gap = " + std::to_string(gap));
  }
  r.statistic = max_gap;
  r.pass = max_gap <= threshold;
  return r;
}

McEstimate mc_shape_estimate(const SequenceModel& model_a,
                             const SequenceModel& model_b, ModelKind model,
                             double s, double t, std::size_t n,
                             std::size_t replicas, std::uint64_t seed) {
  if (n < 1 || replicas < 1) throw std::invalid_argument("n and replicas must be >= 1");
  const std::size_t m_rows = std::max<std::size_t>(1, std::size_t(std::floor(n * s)));
  const std::size_t n_cols = std::max<std::size_t>(1, std::size_t(std::floor(n * t)));
  McEstimate est;
  est.replicas.assign(replicas, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < std::ptrdiff_t(replicas); ++r) {
    const std::uint64_t rs = rng::derive(seed, std::uint64_t(r));
    const ParameterPair params = generate(model_a, model_b, m_rows, n_cols, rs);
    const WeightGrid grid = sample_weights(params, model);
    est.replicas[r] = last_passage_corner(grid) / double(n);
  }
  est.mean = mean_of(est.replicas);
  est.stderr_ = stderr_of(est.replicas, est.mean);
  return est;
}

TestReport check_stationary_mean(const SequenceModel& model_a,
                                 const SequenceModel& model_b, ModelKind model,
                                 double z, std::size_t n, std::size_t replicas,
                                 std::uint64_t seed, bool omit_boundary) {
  std::vector<double> diffs(replicas, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < std::ptrdiff_t(replicas); ++r) {
    const std::uint64_t rs = rng::derive(seed, std::uint64_t(r));
    const ParameterPair params = generate(model_a, model_b, n, n, rs);
    double exact = 0.0;
    for (double ai : params.a) {
      if (model == ModelKind::Exponential) {
        exact += 1.0 / (ai + z);
      } else {
        const double q = ai / z;
        exact += q / (1.0 - q);
      }
    }
    for (double bj : params.b) {
      if (model == ModelKind::Exponential) {
        exact += 1.0 / (bj - z);
      } else {
        const double q = bj * z;
        exact += q / (1.0 - q);
      }
    }
    const double sample =
        omit_boundary ? last_passage_corner(sample_weights(params, model))
                      : boundary_corner(params, z, model);
    diffs[r] = (sample - exact) / double(n);
  }
  TestReport rep;
  rep.name = omit_boundary ? "stationary-mean(negative control)" : "stationary-mean";
  rep.sample_size = n;
  rep.seed = seed;
  const double mean = mean_of(diffs);
  const double se = stderr_of(diffs, mean);
  rep.statistic = std::abs(mean);
  rep.threshold = 4.0 * se;
  rep.pass = rep.statistic <= rep.threshold;
  rep.notes.push_back("replica mean gap = " + std::to_string(mean) +
                      ", stderr = " + std::to_string(se));
  return rep;
}

}  // namespace cgl
