#include "cgl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cgl::stats {

double ks_statistic_uniform(std::vector<double> u) {
  if (u.empty()) throw std::invalid_argument("KS needs samples");
  std::sort(u.begin(), u.end());
  const double n = double(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double lo = i / n, hi = (i + 1) / n;
    d = std::max(d, std::max(u[i] - lo, hi - u[i]));
  }
  return d;
}

double ks_pvalue(double d, std::size_t n) {
  const double rn = std::sqrt(double(n));
  const double lam = (rn + 0.12 + 0.11 / rn) * d;
  if (lam < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lam * lam);
    sum += term;
    if (std::abs(term) < 1e-12 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double gamma_series_p(double a, double x) {
  double ap = a, sum = 1.0 / a, del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_cf_q(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gammq(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::domain_error("gammq requires x >= 0, a > 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_series_p(a, x);
  return gamma_cf_q(a, x);
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("pearson needs two equal-length samples");
  const double n = double(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / std::sqrt(sxx * syy);
}

double chi_square_gof(const std::vector<double>& samples,
                      const std::vector<double>& cell_probs) {
  const std::size_t k = cell_probs.size();
  if (k < 2) throw std::invalid_argument("need at least 2 cells");
  std::vector<double> observed(k, 0.0);
  for (double s : samples) {
    const std::size_t cell = std::min<std::size_t>(k - 1, std::size_t(std::max(0.0, s)));
    observed[cell] += 1.0;
  }
  const double n = double(samples.size());
  double stat = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double expect = n * cell_probs[c];
    if (expect <= 0.0) throw std::invalid_argument("cell with zero expected count");
    const double diff = observed[c] - expect;
    stat += diff * diff / expect;
  }
  return chi_square_pvalue(stat, double(k - 1));
}

}  // namespace cgl::stats
