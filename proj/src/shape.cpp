#include "cgl/shape.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cgl {
namespace {

// Unified transform family: order-r building blocks of g_z and its
// z-derivatives for either model.
//   exponential: A_r(z) = E[(a+z)^-r],      B_r(z) = E[(b-z)^-r]
//   geometric:   A_r(z) = E[a/(z-a)^r],     B_1 = E[bz/(1-bz)],
//                B_r = E[b^(r-1)/(1-bz)^r] for r >= 2
// In both models d/dz of the order-1 pair is (-A_2, +B_2) and the second
// derivative pair is (2 A_3, 2 B_3).
struct Transforms {
  const ShapeProblem& p;
  double A(double z, int r) const {
    if (p.model == ModelKind::Exponential)
      return p.alpha.shifted_moment(z, +1, r);
    return geometric_transform(p.alpha, z, r, TransformSign::Plus);
  }
  double B(double z, int r) const {
    if (p.model == ModelKind::Exponential)
      return p.beta.shifted_moment(-z, +1, r);
    return geometric_transform(p.beta, z, r, TransformSign::Minus);
  }
  // derivative of z -> s*A_1 + t*B_1 (extended-real)
  double deriv(double z, double s, double t) const {
    const double a2 = A(z, 2), b2 = B(z, 2);
    if (std::isinf(a2) && std::isinf(b2)) throw std::domain_error("degenerate transform pair");
    if (std::isinf(a2)) return -kInf;
    if (std::isinf(b2)) return kInf;
    return -s * a2 + t * b2;
  }
  double deriv2(double z, double s, double t) const {
    return 2.0 * (s * A(z, 3) + t * B(z, 3));
  }
};

double linear_combo(double s, double av, double t, double bv) {
  const double x = (s > 0) ? s * av : 0.0;
  const double y = (t > 0) ? t * bv : 0.0;
  return x + y;
}

// interior root of the monotone derivative; assumes deriv(lo) < 0 < deriv(hi)
double solve_minimizer(const Transforms& tr, double zlo, double zhi, double s,
                       double t) {
  double lo = zlo, hi = zhi;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (tr.deriv(mid, s, t) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double z = 0.5 * (lo + hi);
  for (int it = 0; it < 5; ++it) {
    const double h = tr.deriv(z, s, t);
    const double hp = tr.deriv2(z, s, t);
    if (!std::isfinite(h) || !std::isfinite(hp) || hp <= 0.0) break;
    const double step = h / hp;
    const double zn = z - step;
    if (zn <= zlo || zn >= zhi) break;
    z = zn;
  }
  return z;
}

void require_positive_ray(double s, double t) {
  if (!(s > 0) || !(t > 0))
    throw std::domain_error("shape evaluation requires s > 0 and t > 0; "
                            "use boundary_values for the axes");
}

}  // namespace

std::pair<double, double> ShapeProblem::z_interval() const {
  if (model == ModelKind::Exponential) {
    const double lo = -alpha.left(), hi = beta.left();
    if (lo > hi) throw std::domain_error("empty admissible interval: need alpha.left + beta.left >= 0");
    return {lo, hi};
  }
  const double lo = alpha.right(), hi = 1.0 / beta.right();
  if (lo > hi) throw std::domain_error("empty admissible interval: need alpha.right * beta.right <= 1");
  return {lo, hi};
}

double g_z_value(const ShapeProblem& p, double z, double s, double t) {
  if (!(s >= 0) || !(t >= 0)) throw std::domain_error("g_z requires s, t >= 0");
  const auto [zlo, zhi] = p.z_interval();
  if (z < zlo || z > zhi)
    throw std::domain_error("z = " + std::to_string(z) + " outside admissible interval [" +
                            std::to_string(zlo) + ", " + std::to_string(zhi) + "]");
  const Transforms tr{p};
  return linear_combo(s, tr.A(z, 1), t, tr.B(z, 1));
}

double shape_value(const ShapeProblem& p, double s, double t) {
  require_positive_ray(s, t);
  const auto [zlo, zhi] = p.z_interval();
  const Transforms tr{p};
  if (zlo == zhi) return linear_combo(s, tr.A(zlo, 1), t, tr.B(zlo, 1));
  if (tr.deriv(zlo, s, t) >= 0.0)
    return linear_combo(s, tr.A(zlo, 1), t, tr.B(zlo, 1));
  if (tr.deriv(zhi, s, t) <= 0.0)
    return linear_combo(s, tr.A(zhi, 1), t, tr.B(zhi, 1));
  const double z = solve_minimizer(tr, zlo, zhi, s, t);
  return s * tr.A(z, 1) + t * tr.B(z, 1);
}

std::pair<double, double> boundary_values(const ShapeProblem& p) {
  const auto [zlo, zhi] = p.z_interval();
  const Transforms tr{p};
  return {tr.A(zhi, 1), tr.B(zlo, 1)};
}

ConeReport critical_cone(const ShapeProblem& p) {
  const auto [zlo, zhi] = p.z_interval();
  if (zlo == zhi)
    throw std::domain_error("degenerate admissible interval: the shape is linear "
                            "(single-point formula applies); no cone is defined");
  const Transforms tr{p};
  ConeReport r;
  const double a2lo = tr.A(zlo, 2), b2lo = tr.B(zlo, 2);
  const double a2hi = tr.A(zhi, 2), b2hi = tr.B(zhi, 2);
  r.c1 = std::isinf(a2lo) ? 0.0 : b2lo / a2lo;
  r.c2 = std::isinf(b2hi) ? kInf : (std::isinf(a2hi) ? 0.0 : b2hi / a2hi);
  r.linear_low_slope = {tr.A(zlo, 1), tr.B(zlo, 1)};
  r.linear_high_slope = {tr.A(zhi, 1), tr.B(zhi, 1)};
  return r;
}

double minimizer(const ShapeProblem& p, double s, double t) {
  require_positive_ray(s, t);
  const auto [zlo, zhi] = p.z_interval();
  if (zlo == zhi)
    throw std::domain_error("degenerate admissible interval: no interior minimizer");
  const Transforms tr{p};
  if (tr.deriv(zlo, s, t) >= 0.0)
    throw std::domain_error("s/t <= c1: the low linear regime applies, "
                            "gradient (A(z_lo), B(z_lo))");
  if (tr.deriv(zhi, s, t) <= 0.0)
    throw std::domain_error("s/t >= c2: the high linear regime applies, "
                            "gradient (A(z_hi), B(z_hi))");
  return solve_minimizer(tr, zlo, zhi, s, t);
}

std::pair<double, double> gradient(const ShapeProblem& p, double s, double t) {
  require_positive_ray(s, t);
  const auto [zlo, zhi] = p.z_interval();
  const Transforms tr{p};
  if (zlo == zhi) return {tr.A(zlo, 1), tr.B(zlo, 1)};
  if (tr.deriv(zlo, s, t) >= 0.0) return {tr.A(zlo, 1), tr.B(zlo, 1)};
  if (tr.deriv(zhi, s, t) <= 0.0) return {tr.A(zhi, 1), tr.B(zhi, 1)};
  const double z = solve_minimizer(tr, zlo, zhi, s, t);
  return {tr.A(z, 1), tr.B(z, 1)};
}

double closed_form_uniform(double lambda, double l, double m, double s,
                           double t) {
  if (!(lambda > 0) || l < 0 || m < 0)
    throw std::domain_error("closed_form_uniform requires lambda > 0 and l, m >= 0");
  if (l == 0.0 && m == 0.0) {
    const double r = std::sqrt(s) + std::sqrt(t);
    return r * r / lambda;
  }
  if (l == 0.0 || m == 0.0) {
    // point-mass/uniform mix; the m = 0 case follows by the (s,t) swap symmetry
    const double mm = (l == 0.0) ? m : l;
    const double ss = (l == 0.0) ? s : t;
    const double tt = (l == 0.0) ? t : s;
    const double root =
        std::sqrt(mm * ss * mm * ss + 4.0 * ss * tt * lambda * (lambda + mm));
    return (2.0 * ss * lambda + mm * ss + root) / (2.0 * lambda * (lambda + mm)) +
           (tt / mm) * std::log(1.0 + mm / lambda +
                                (mm / lambda) * (mm * ss + root) / (2.0 * tt * lambda));
  }
  const double d = l * t - m * s;
  const double root = std::sqrt(d * d + 4.0 * s * t * (lambda + l) * (lambda + m));
  return (s / l) * std::log(1.0 + l / lambda +
                            (l / lambda) * (d + root) / (2.0 * s * (lambda + m))) +
         (t / m) * std::log(1.0 + m / lambda +
                            (m / lambda) * (-d + root) / (2.0 * t * (lambda + l)));
}

double closed_form_geometric_reciprocal(double q, double l, double m, double s,
                                        double t) {
  const double rq = std::sqrt(q);
  if (!(q > 0) || !(q < 1) || !(l > 0) || !(m > 0) || l >= rq || m >= rq)
    throw std::domain_error("requires 0 < q < 1 and 0 < l, m < sqrt(q)");
  const double L = std::log(rq / (rq - l));
  const double M = std::log(rq / (rq - m));
  const double x = s * l * M;
  const double y = t * m * L;
  const double d = l * y - m * x;
  const double u = 1.0 + m * rq - q;  // (1 + m*sqrt(q) - q)
  const double v = 1.0 + l * rq - q;
  const double root = std::sqrt(d * d + 4.0 * x * y * u * v);
  return (s / L) * std::log(1.0 + l * rq / (1.0 - q) +
                            (l / (1.0 - q)) * (d + root) / (2.0 * x * u)) +
         (t / M) * std::log(1.0 + m * rq / (1.0 - q) +
                            (m / (1.0 - q)) * (-d + root) / (2.0 * y * v));
}

std::vector<LevelSetPoint> level_set(const ShapeProblem& p, double level,
                                     int count) {
  if (!(level > 0)) throw std::domain_error("level must be positive");
  if (count < 2) throw std::domain_error("level set needs at least 2 points");
  constexpr double kHalfPi = 1.5707963267948966192313216916398;
  std::vector<LevelSetPoint> pts(count);
  bool infinite = false;
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < count; ++k) {
    const double theta = kHalfPi * (k + 1) / double(count + 1);
    const double cs = std::cos(theta), sn = std::sin(theta);
    const double g = shape_value(p, cs, sn);
    if (!std::isfinite(g)) {
      infinite = true;
      continue;
    }
    const double r = level / g;
    pts[k] = {theta, r * cs, r * sn, level};
  }
  if (infinite) throw std::domain_error("shape function is infinite; level set is empty");
  return pts;
}

}  // namespace cgl
