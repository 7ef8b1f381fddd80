#pragma once

#include <utility>
#include <vector>

#include "cgl/lpp.hpp"
#include "cgl/marginal.hpp"

namespace cgl {

/// The limit-shape problem: a pair of marginals plus the model kind.
struct ShapeProblem {
  Marginal alpha;
  Marginal beta;
  ModelKind model = ModelKind::Exponential;

  // admissible closed interval of the variational parameter z
  std::pair<double, double> z_interval() const;
  bool degenerate() const {
    const auto [lo, hi] = z_interval();
    return lo == hi;
  }
};

/// Critical cone of strict concavity and the linear-regime slopes.
struct ConeReport {
  double c1 = 0.0;             // >= 0; 0 iff the low endpoint 2nd moment diverges
  double c2 = kInf;            // <= inf
  std::pair<double, double> linear_low_slope;   // gradient for s/t <= c1
  std::pair<double, double> linear_high_slope;  // gradient for s/t >= c2
};

// Linear shape function of the stationary model: s*A(z) + t*B(z) in the
// exponential case, the geometric transform analogue otherwise. +inf if a
// transform diverges; linear in (s, t).
double g_z_value(const ShapeProblem& p, double z, double s, double t);

// g(s, t) = inf over admissible z of g_z_value. Endpoint derivative signs
// select the linear regimes; otherwise bisection + Newton on the monotone
// derivative.
double shape_value(const ShapeProblem& p, double s, double t);

// (g(1,0), g(0,1)) via the endpoint transforms.
std::pair<double, double> boundary_values(const ShapeProblem& p);

ConeReport critical_cone(const ShapeProblem& p);

// The unique interior minimizer solving -B'(z)/A'(z) = s/t; requires
// c1 < s/t < c2.
double minimizer(const ShapeProblem& p, double s, double t);

// (dg/ds, dg/dt); continuous across the cone boundaries.
std::pair<double, double> gradient(const ShapeProblem& p, double s, double t);

// Explicit value for uniform marginals on [lambda/2, lambda/2+l] and
// [lambda/2, lambda/2+m]; l = 0 or m = 0 degenerate to point masses, and
// l = m = 0 gives (sqrt(s)+sqrt(t))^2/lambda.
double closed_form_uniform(double lambda, double l, double m, double s, double t);

// Explicit geometric-model value for marginals with density proportional to
// 1/x on [sqrt(q)-l, sqrt(q)] and [sqrt(q)-m, sqrt(q)].
double closed_form_geometric_reciprocal(double q, double l, double m, double s,
                                        double t);

struct LevelSetPoint {
  double theta, s, t, g;
};

// Points of the level set {g = level} at `count` angles uniformly spaced in
// the open quadrant; exact by homogeneity: r(theta) = level / g(cos, sin).
std::vector<LevelSetPoint> level_set(const ShapeProblem& p, double level,
                                     int count);

}  // namespace cgl
