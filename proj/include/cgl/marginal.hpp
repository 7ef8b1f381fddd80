#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgl {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class MarginalKind { PointMass, Uniform, ShiftedPower, Reciprocal, Tabulated };

/// A compactly supported probability law on (0, inf). These are the marginal
/// distributions of the row/column parameter sequences. Closed-form moment
/// transforms exist for the first four families; tabulated densities go
/// through adaptive quadrature.
class Marginal {
 public:
  static Marginal point_mass(double v);
  static Marginal uniform(double lo, double hi);
  // density proportional to (x - x0)^k on [lo, hi], integer k >= 0, x0 <= lo
  static Marginal shifted_power(double x0, int k, double lo, double hi);
  // density proportional to 1/x on [lo, hi]
  static Marginal reciprocal(double lo, double hi);
  // piecewise-linear density on a strictly increasing grid; must integrate
  // to 1 within 1e-12 unless renormalize is set
  static Marginal tabulated(std::vector<double> xs, std::vector<double> density,
                            bool renormalize = false);

  MarginalKind kind() const { return kind_; }
  double left() const { return lo_; }
  double right() const { return hi_; }

  double pdf(double x) const;
  double cdf(double x) const;
  // u-quantile, u in (0,1); monotone in u
  double quantile(double u) const;

  // parameters (meaning depends on kind)
  double x0() const { return x0_; }
  int power() const { return k_; }
  const std::vector<double>& grid() const { return xs_; }
  const std::vector<double>& density() const { return ds_; }

  // E[(c + sign*X)^(-order)], the common core of all moment transforms.
  // Precondition: c + sign*x >= 0 on the support. Returns +inf on divergence.
  double shifted_moment(double c, int sign, int order) const;

 private:
  Marginal() = default;
  MarginalKind kind_ = MarginalKind::PointMass;
  double lo_ = 0, hi_ = 0;
  double x0_ = 0;      // ShiftedPower offset
  int k_ = 0;          // ShiftedPower exponent
  std::vector<double> xs_, ds_;  // Tabulated
  std::vector<double> cum_;      // Tabulated cumulative mass per node
};

enum class TransformSign { Plus, Minus };

/// Moment transform of a marginal: A-type evaluates E[(X+z)^-k] on
/// [-left, inf), B-type evaluates E[(X-z)^-k] on (-inf, left].
struct MomentTransform {
  Marginal marginal;
  TransformSign sign;
};

// E[(X+z)^(-order)] or E[(X-z)^(-order)]; +inf when the integral diverges
// at an admissible endpoint. Throws std::domain_error outside the admissible
// closed interval.
double moment(const MomentTransform& t, double z, int order);

// Geometric-model transform family. A-type: E[a/(z-a)^order] for z >= right
// endpoint (order 1 is the g_z summand E[(a/z)/(1-a/z)]). B-type: order 1 is
// E[(bz)/(1-bz)], order r >= 2 is E[b^(r-1)/(1-bz)^r]; admissible z <= 1/right.
double geometric_transform(const Marginal& m, double z, int order,
                           TransformSign sign);

}  // namespace cgl
