#include "gamelab/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gamelab {

namespace {

// Continued fraction for I_x(a,b), Lentz's method (Numerical Recipes form).
double beta_cf(double x, double a, double b) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-15;
  constexpr double kFpMin = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("reg_inc_beta continued fraction did not converge");
}

}  // namespace

double reg_inc_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("reg_inc_beta requires a > 0 and b > 0");
  if (x < 0.0 || x > 1.0)
    throw std::domain_error("reg_inc_beta requires x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(x, a, b) / a;
  return 1.0 - front * beta_cf(1.0 - x, b, a) / b;
}

double t_cdf(double t, int df) {
  if (df < 1) throw std::domain_error("t_cdf requires df >= 1");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (t == 0.0) return 0.5;
  const double x = df / (df + t * t);
  const double tail = 0.5 * reg_inc_beta(x, 0.5 * df, 0.5);
  return t > 0.0 ? 1.0 - tail : tail;
}

TTestResult paired_ttest(std::span<const double> samples) {
  const int n = static_cast<int>(samples.size());
  if (n < 2) throw std::invalid_argument("paired_ttest requires n >= 2");

  TTestResult r;
  r.degrees_of_freedom = n - 1;
  double sum = 0.0;
  for (double v : samples) sum += v;
  r.mean = sum / n;
  double ss = 0.0;
  for (double v : samples) ss += (v - r.mean) * (v - r.mean);
  const double sd = std::sqrt(ss / (n - 1));
  r.std_error = sd / std::sqrt(static_cast<double>(n));

  if (sd == 0.0) {
    // Degenerate sample set: the limit of the t statistic decides the verdict.
    r.t_statistic = 0.0;
    r.p_two_sided = r.mean == 0.0 ? 1.0 : 0.0;
    return r;
  }
  r.t_statistic = r.mean / r.std_error;
  const double x = r.degrees_of_freedom /
                   (r.degrees_of_freedom + r.t_statistic * r.t_statistic);
  r.p_two_sided = reg_inc_beta(x, 0.5 * r.degrees_of_freedom, 0.5);
  return r;
}

TTestResult slope_ttest(std::span<const double> xs, std::span<const double> ys) {
  const int n = static_cast<int>(xs.size());
  if (n != static_cast<int>(ys.size()) || n < 3)
    throw std::invalid_argument("slope_ttest requires equal lengths >= 3");

  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope_ttest: degenerate x values");
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double fit = my + slope * (xs[i] - mx);
    rss += (ys[i] - fit) * (ys[i] - fit);
  }
  TTestResult r;
  r.degrees_of_freedom = n - 2;
  r.mean = slope;
  const double s2 = rss / r.degrees_of_freedom;
  r.std_error = std::sqrt(s2 / sxx);
  if (r.std_error == 0.0) {
    r.t_statistic = 0.0;
    r.p_two_sided = slope == 0.0 ? 1.0 : 0.0;
    return r;
  }
  r.t_statistic = slope / r.std_error;
  const double x = r.degrees_of_freedom /
                   (r.degrees_of_freedom + r.t_statistic * r.t_statistic);
  r.p_two_sided = reg_inc_beta(x, 0.5 * r.degrees_of_freedom, 0.5);
  return r;
}

}  // namespace gamelab
