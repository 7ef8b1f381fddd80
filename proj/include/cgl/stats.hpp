#pragma once

#include <cstddef>
#include <vector>

namespace cgl::stats {

// One-sample Kolmogorov-Smirnov statistic of values already mapped to (0,1)
// against the uniform law.
double ks_statistic_uniform(std::vector<double> u);

// Asymptotic two-sided KS p-value with the Stephens small-sample correction.
double ks_pvalue(double d, std::size_t n);

inline double ks_test_uniform(std::vector<double> u) {
  const std::size_t n = u.size();
  return ks_pvalue(ks_statistic_uniform(std::move(u)), n);
}

// Regularized upper incomplete gamma Q(a, x); chi-square tail probability is
// Q(dof/2, stat/2).
double gammq(double a, double x);

inline double chi_square_pvalue(double stat, double dof) {
  return gammq(0.5 * dof, 0.5 * stat);
}

// Pearson correlation coefficient.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Chi-square goodness of fit of integer samples against given cell
// probabilities; the last cell absorbs the tail. Returns the p-value.
double chi_square_gof(const std::vector<double>& samples,
                      const std::vector<double>& cell_probs);

}  // namespace cgl::stats
