#include "cgl/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace cgl {
namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// integral of u^e over [a, b], 0 <= a <= b; +inf when divergent at a = 0
double power_integral(double e, double a, double b) {
  if (a == 0.0 && e <= -1.0) return kInf;
  if (e == -1.0) return std::log(b / a);
  const double p = e + 1.0;
  if (a == 0.0) return std::pow(b, p) / p;
  return (std::pow(b, p) - std::pow(a, p)) / p;
}

// ---- 15-point Gauss-Legendre on [-1, 1] ----
constexpr double kGlNode[8] = {
    0.0,
    0.2011940939974345223006283033946,
    0.3941513470775633698972073709810,
    0.5709721726085388475372267372539,
    0.7244177313601700474161860546139,
    0.8482065834104272162006483207742,
    0.9372733924007059043077589477102,
    0.9879925180204854284895657185866};
constexpr double kGlWeight[8] = {
    0.2025782419255612728806201999675,
    0.1984314853271115764561183264438,
    0.1861610000155622110268005618664,
    0.1662692058169939335532008604812,
    0.1395706779261543144478047945110,
    0.1071592204671719350118695466858,
    0.0703660474881081247092674164507,
    0.0307532419961172683546283935772};

double gl15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = kGlWeight[0] * f(c);
  for (int i = 1; i < 8; ++i) {
    const double dx = h * kGlNode[i];
    s += kGlWeight[i] * (f(c - dx) + f(c + dx));
  }
  return s * h;
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double tol, int depth) {
  const double whole = gl15(f, a, b);
  const double m = 0.5 * (a + b);
  const double two = gl15(f, a, m) + gl15(f, m, b);
  if (std::abs(two - whole) <= tol || depth >= 48) return two;
  return adapt(f, a, m, 0.5 * tol, depth + 1) +
         adapt(f, m, b, 0.5 * tol, depth + 1);
}

}  // namespace

// ---- constructors ----

Marginal Marginal::point_mass(double v) {
  if (!(v > 0) || !std::isfinite(v)) throw std::invalid_argument("point mass must be in (0, inf)");
  Marginal m;
  m.kind_ = MarginalKind::PointMass;
  m.lo_ = m.hi_ = v;
  return m;
}

Marginal Marginal::uniform(double lo, double hi) {
  if (!(lo > 0) || !(hi > lo) || !std::isfinite(hi))
    throw std::invalid_argument("uniform requires 0 < lo < hi < inf");
  Marginal m;
  m.kind_ = MarginalKind::Uniform;
  m.lo_ = lo;
  m.hi_ = hi;
  return m;
}

Marginal Marginal::shifted_power(double x0, int k, double lo, double hi) {
  if (!(hi > lo) || k < 0 || x0 > lo)
    throw std::invalid_argument("shifted_power requires x0 <= lo < hi and k >= 0");
  if (!(lo >= 0) || (lo == 0 && x0 < 0))
    throw std::invalid_argument("shifted_power support must lie in (0, inf)");
  Marginal m;
  m.kind_ = MarginalKind::ShiftedPower;
  m.lo_ = lo;
  m.hi_ = hi;
  m.x0_ = x0;
  m.k_ = k;
  return m;
}

Marginal Marginal::reciprocal(double lo, double hi) {
  if (!(lo > 0) || !(hi > lo) || !std::isfinite(hi))
    throw std::invalid_argument("reciprocal requires 0 < lo < hi < inf");
  Marginal m;
  m.kind_ = MarginalKind::Reciprocal;
  m.lo_ = lo;
  m.hi_ = hi;
  return m;
}

Marginal Marginal::tabulated(std::vector<double> xs, std::vector<double> density,
                             bool renormalize) {
  if (xs.size() < 2 || xs.size() != density.size())
    throw std::invalid_argument("tabulated needs matching grids of length >= 2");
  for (size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i] < xs[i + 1])) throw std::invalid_argument("tabulated grid must increase");
  if (!(xs.front() > 0)) throw std::invalid_argument("tabulated support must lie in (0, inf)");
  for (double d : density)
    if (!(d >= 0) || !std::isfinite(d)) throw std::invalid_argument("tabulated density must be >= 0");

  double mass = 0;
  for (size_t i = 0; i + 1 < xs.size(); ++i)
    mass += 0.5 * (density[i] + density[i + 1]) * (xs[i + 1] - xs[i]);
  if (renormalize) {
    if (!(mass > 0)) throw std::invalid_argument("tabulated density has zero mass");
    for (double& d : density) d /= mass;
  } else if (std::abs(mass - 1.0) > 1e-12) {
    throw std::invalid_argument("tabulated density mass " + std::to_string(mass) +
                            " is not 1 within 1e-12");
  }

  Marginal m;
  m.kind_ = MarginalKind::Tabulated;
  m.lo_ = xs.front();
  m.hi_ = xs.back();
  m.xs_ = std::move(xs);
  m.ds_ = std::move(density);
  m.cum_.assign(m.xs_.size(), 0.0);
  double c = 0;  // compensated cumulative trapezoid
  for (size_t i = 0; i + 1 < m.xs_.size(); ++i) {
    c += 0.5 * (m.ds_[i] + m.ds_[i + 1]) * (m.xs_[i + 1] - m.xs_[i]);
    m.cum_[i + 1] = c;
  }
  m.cum_.back() = std::max(m.cum_.back(), 1.0);  // clamp rounding
  return m;
}

// ---- density / cdf / quantile ----

double Marginal::pdf(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  switch (kind_) {
    case MarginalKind::PointMass:
      return x == lo_ ? kInf : 0.0;
    case MarginalKind::Uniform:
      return 1.0 / (hi_ - lo_);
    case MarginalKind::ShiftedPower: {
      const double c = (k_ + 1) / (std::pow(hi_ - x0_, k_ + 1) - std::pow(lo_ - x0_, k_ + 1));
      return c * std::pow(x - x0_, k_);
    }
    case MarginalKind::Reciprocal:
      return 1.0 / (x * std::log(hi_ / lo_));
    case MarginalKind::Tabulated: {
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      const size_t i = std::min(xs_.size() - 2, size_t(std::max<ptrdiff_t>(0, it - xs_.begin() - 1)));
      const double w = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
      return ds_[i] + w * (ds_[i + 1] - ds_[i]);
    }
  }
  return 0.0;
}

double Marginal::cdf(double x) const {
  if (x < lo_) return 0.0;
  if (x >= hi_) return 1.0;
  switch (kind_) {
    case MarginalKind::PointMass:
      return x >= lo_ ? 1.0 : 0.0;
    case MarginalKind::Uniform:
      return (x - lo_) / (hi_ - lo_);
    case MarginalKind::ShiftedPower: {
      const double base = std::pow(lo_ - x0_, k_ + 1);
      return (std::pow(x - x0_, k_ + 1) - base) / (std::pow(hi_ - x0_, k_ + 1) - base);
    }
    case MarginalKind::Reciprocal:
      return std::log(x / lo_) / std::log(hi_ / lo_);
    case MarginalKind::Tabulated: {
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      const size_t i = std::min(xs_.size() - 2, size_t(std::max<ptrdiff_t>(0, it - xs_.begin() - 1)));
      const double h = x - xs_[i];
      const double slope = (ds_[i + 1] - ds_[i]) / (xs_[i + 1] - xs_[i]);
      return std::min(1.0, cum_[i] + ds_[i] * h + 0.5 * slope * h * h);
    }
  }
  return 0.0;
}

double Marginal::quantile(double u) const {
  if (!(u > 0) || !(u < 1)) throw std::domain_error("quantile requires u in (0,1)");
  switch (kind_) {
    case MarginalKind::PointMass:
      return lo_;
    case MarginalKind::Uniform:
      return lo_ + u * (hi_ - lo_);
    case MarginalKind::ShiftedPower: {
      const double base = std::pow(lo_ - x0_, k_ + 1);
      const double span = std::pow(hi_ - x0_, k_ + 1) - base;
      return x0_ + std::pow(base + u * span, 1.0 / (k_ + 1));
    }
    case MarginalKind::Reciprocal:
      return lo_ * std::pow(hi_ / lo_, u);
    case MarginalKind::Tabulated: {
      const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
      const size_t i = std::min(cum_.size() - 2, size_t(std::max<ptrdiff_t>(0, it - cum_.begin() - 1)));
      const double rem = u - cum_[i];
      const double dx = xs_[i + 1] - xs_[i];
      const double slope = (ds_[i + 1] - ds_[i]) / dx;
      // solve d0*h + slope/2 h^2 = rem on [0, dx]
      const double d0 = ds_[i];
      double h;
      if (std::abs(slope) * dx < 1e-14 * std::max(d0, 1e-300)) {
        h = rem / d0;
      } else {
        const double disc = d0 * d0 + 2.0 * slope * rem;
        h = (std::sqrt(std::max(0.0, disc)) - d0) / slope;
        if (!(h >= 0) || h > dx) h = std::clamp(rem / std::max(d0, 1e-300), 0.0, dx);
      }
      return xs_[i] + std::clamp(h, 0.0, dx);
    }
  }
  return lo_;
}

// ---- moment transforms ----

double Marginal::shifted_moment(double c, int sign, int order) const {
  const int r = order;
  if (r < 1) throw std::domain_error("moment order must be >= 1");
  // endpoints of u = c + sign*x over the support
  const double ua = (sign > 0) ? c + lo_ : c - hi_;
  const double ub = (sign > 0) ? c + hi_ : c - lo_;
  if (ua < -1e-12 * std::max(1.0, std::abs(c)))
    throw std::domain_error("moment transform evaluated outside admissible interval");
  const double a = std::max(0.0, ua);

  switch (kind_) {
    case MarginalKind::PointMass: {
      const double t = c + sign * lo_;
      if (t <= 0.0) return kInf;
      return std::pow(t, -r);
    }
    case MarginalKind::Uniform: {
      const double w = hi_ - lo_;
      if (a == 0.0) return kInf;  // density positive at the singular endpoint
      if (r == 1) return std::log1p(w / a) / w;
      const double mid = 0.5 * (a + ub);
      if (w < 1e-7 * mid) {
        const double q = w / mid;
        return std::pow(mid, -r) * (1.0 + r * (r + 1) * q * q / 24.0);
      }
      return (std::pow(a, 1.0 - r) - std::pow(ub, 1.0 - r)) / ((r - 1.0) * w);
    }
    case MarginalKind::ShiftedPower: {
      const double norm = (k_ + 1) /
          (std::pow(hi_ - x0_, k_ + 1) - std::pow(lo_ - x0_, k_ + 1));
      if (sign > 0) {
        const double d = x0_ + c;
        const double u0 = lo_ - x0_, u1 = hi_ - x0_;
        if (d == 0.0) return norm * power_integral(k_ - r, u0, u1);
        if (a == 0.0) return kInf;  // c == -lo with lo > x0: positive density at pole
        double s = 0.0;
        for (int j = 0; j <= k_; ++j)
          s += binom(k_, j) * std::pow(-d, k_ - j) * power_integral(j - r, u0 + d, u1 + d);
        return norm * s;
      }
      // E[(c - X)^-r]; pole can only touch x = hi where density is positive
      if (a == 0.0) return kInf;
      const double D = c - x0_;
      double s = 0.0;
      for (int j = 0; j <= k_; ++j) {
        const double coef = binom(k_, j) * ((j % 2) ? -1.0 : 1.0) * std::pow(D, k_ - j);
        s += coef * power_integral(j - r, a, ub);
      }
      return norm * s;
    }
    case MarginalKind::Reciprocal: {
      const double norm = 1.0 / std::log(hi_ / lo_);
      if (sign > 0) {
        if (c == 0.0) return norm * power_integral(-1.0 - r, lo_, hi_);
        if (a == 0.0) return kInf;
        if (std::abs(c) < 1e-3 * lo_) {
          // series in c: (x+c)^-r = x^-r (1 - r c/x + ...)
          double s = 0.0, coef = 1.0;
          for (int j = 0; j <= 4; ++j) {
            s += coef * std::pow(c, j) * power_integral(-1.0 - r - j, lo_, hi_);
            coef *= -(r + j) / double(j + 1);
          }
          return norm * s;
        }
        auto anti = [&](double x) {
          double h = std::pow(c, -double(r)) * std::log(x / (x + c));
          for (int j = 2; j <= r; ++j)
            h += std::pow(c, double(j - r - 1)) * std::pow(x + c, 1.0 - j) / (j - 1.0);
          return h;
        };
        return norm * (anti(hi_) - anti(lo_));
      }
      // E[1/(X (c - X)^r)], c >= hi
      if (a == 0.0) return kInf;
      auto anti = [&](double x) {
        double h = std::pow(c, -double(r)) * std::log(x / (c - x));
        for (int j = 2; j <= r; ++j)
          h += std::pow(c, double(j - r - 1)) * std::pow(c - x, 1.0 - j) / (j - 1.0);
        return h;
      };
      return norm * (anti(hi_) - anti(lo_));
    }
    case MarginalKind::Tabulated: {
      // adaptive quadrature segment by segment; the pole, if any, sits at the
      // support endpoint where u = 0
      double total = 0.0;
      const double tol = 1e-11 / double(xs_.size());
      for (size_t i = 0; i + 1 < xs_.size(); ++i) {
        double xa = xs_[i], xb = xs_[i + 1];
        const double u_at_a = c + sign * xa, u_at_b = c + sign * xb;
        const double umin = std::min(std::abs(u_at_a), std::abs(u_at_b));
        const double seg_w = xb - xa;
        if (umin <= 1e-12 * seg_w) {
          // singular segment: density is linear, d(x*) is the coefficient of
          // the log term; integral is finite only when that coefficient is 0
          const bool pole_at_a = std::abs(u_at_a) <= std::abs(u_at_b);
          const double d_pole = pole_at_a ? ds_[i] : ds_[i + 1];
          if (d_pole > 0.0 || r >= 2) return kInf;
          const double slope = (ds_[i + 1] - ds_[i]) / seg_w;
          total += (slope / sign) * seg_w;  // exact: log coefficient vanishes
          continue;
        }
        auto f = [&](double x) {
          const double w = (x - xa) / seg_w;
          const double d = ds_[i] + w * (ds_[i + 1] - ds_[i]);
          return d * std::pow(c + sign * x, -double(r));
        };
        total += adapt(f, xa, xb, tol, 0);
        if (!std::isfinite(total)) return kInf;
      }
      return total;
    }
  }
  return kInf;
}

double moment(const MomentTransform& t, double z, int order) {
  const double lo = t.marginal.left();
  if (t.sign == TransformSign::Plus) {
    if (z < -lo)
      throw std::domain_error("A-type transform requires z in [" +
                              std::to_string(-lo) + ", inf)");
    return t.marginal.shifted_moment(z, +1, order);
  }
  if (z > lo)
    throw std::domain_error("B-type transform requires z in (-inf, " +
                            std::to_string(lo) + "]");
  return t.marginal.shifted_moment(-z, +1, order);
}

double geometric_transform(const Marginal& m, double z, int order,
                           TransformSign sign) {
  const int r = order;
  if (r < 1) throw std::domain_error("geometric transform order must be >= 1");
  if (sign == TransformSign::Plus) {
    // E[a/(z-a)^r], z >= right endpoint
    if (z < m.right())
      throw std::domain_error("geometric A-type requires z in [" +
                              std::to_string(m.right()) + ", inf)");
    const double mr = m.shifted_moment(z, -1, r);
    if (!std::isfinite(mr)) return kInf;
    const double mr1 = (r == 1) ? 1.0 : m.shifted_moment(z, -1, r - 1);
    return z * mr - mr1;
  }
  // B-type: z <= 1 / right endpoint
  if (!(z > 0) || z > 1.0 / m.right() + 1e-15)
    throw std::domain_error("geometric B-type requires z in (0, " +
                            std::to_string(1.0 / m.right()) + "]");
  const double zinv = 1.0 / z;
  if (r == 1) {
    const double n1 = m.shifted_moment(zinv, -1, 1);
    if (!std::isfinite(n1)) return kInf;
    return zinv * n1 - 1.0;
  }
  // E[b^(r-1)/(1-bz)^r] = sum_j C(r-1,j) (-1)^j z^(1-2r+j) E[(1/z - b)^-(r-j)]
  const double nr = m.shifted_moment(zinv, -1, r);
  if (!std::isfinite(nr)) return kInf;
  double s = 0.0;
  for (int j = 0; j <= r - 1; ++j) {
    const double np = (r - j == 0) ? 1.0 : m.shifted_moment(zinv, -1, r - j);
    s += binom(r - 1, j) * ((j % 2) ? -1.0 : 1.0) * std::pow(z, 1.0 - 2 * r + j) * np;
  }
  return s;
}

}  // namespace cgl
