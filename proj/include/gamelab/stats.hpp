#pragma once

#include <span>

namespace gamelab {

struct TTestResult {
  double t_statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_two_sided = 1.0;
  double mean = 0.0;
  double std_error = 0.0;
};

/// One-sample two-sided t-test of the samples against mean zero (the paired
/// differences are the samples themselves). Zero-variance sample sets resolve
/// to p = 1 when the mean is 0 and p = 0 otherwise.
TTestResult paired_ttest(std::span<const double> samples);

/// Student-t CDF via the regularized incomplete beta function.
double t_cdf(double t, int df);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation with
/// the symmetry transform for convergence. Absolute error below 1e-12.
double reg_inc_beta(double x, double a, double b);

/// t-test of a least-squares slope against zero, for spectrum-vs-spectrum
/// regressions. xs and ys must have equal length >= 3.
TTestResult slope_ttest(std::span<const double> xs, std::span<const double> ys);

}  // namespace gamelab
