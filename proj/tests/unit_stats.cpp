#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gamelab/rng.hpp"
#include "gamelab/stats.hpp"

using namespace gamelab;

namespace {

// Independent oracle: two-sided p from adaptive Simpson quadrature of the
// Student-t density. Shares nothing with the incomplete-beta route.
double t_pdf(double x, int df) {
  double ln = std::lgamma(0.5 * (df + 1)) - std::lgamma(0.5 * df) -
              0.5 * std::log(df * M_PI) -
              0.5 * (df + 1) * std::log1p(x * x / df);
  return std::exp(ln);
}

double simpson(double a, double b, int df) {
  double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (t_pdf(a, df) + 4.0 * t_pdf(m, df) + t_pdf(b, df));
}

double adaptive(double a, double b, int df, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double left = simpson(a, m, df), right = simpson(m, b, df);
  if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(a, m, df, left, tol / 2, depth + 1) +
         adaptive(m, b, df, right, tol / 2, depth + 1);
}

double oracle_p_two_sided(double t, int df) {
  double at = std::abs(t);
  double half = adaptive(0.0, at, df, simpson(0.0, at, df), 1e-13, 0);
  return 2.0 * (0.5 - half);
}

}  // namespace

TEST_CASE("alternating +1/-1 samples give t = 0, p = 1") {
  std::vector<double> s;
  for (int i = 0; i < 10; ++i) s.push_back(i % 2 == 0 ? 1.0 : -1.0);
  TTestResult r = paired_ttest(s);
  CHECK(r.t_statistic == doctest::Approx(0.0));
  CHECK(r.p_two_sided == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.degrees_of_freedom == 9);
}

TEST_CASE("n=10, mean 0.5, sample sd 0.5") {
  // Five symmetric pairs around 0.5 with a = 1.5/sqrt(10) make the sample
  // standard deviation exactly 0.5.
  const double a = 1.5 / std::sqrt(10.0);
  std::vector<double> s;
  for (int i = 0; i < 5; ++i) {
    s.push_back(0.5 + a);
    s.push_back(0.5 - a);
  }
  TTestResult r = paired_ttest(s);
  CHECK(r.t_statistic == doctest::Approx(3.1623).epsilon(1e-4));
  CHECK(r.degrees_of_freedom == 9);
  CHECK(std::abs(r.p_two_sided - 0.0115) <= 1e-3);
  CHECK(std::abs(r.p_two_sided - oracle_p_two_sided(r.t_statistic, 9)) <= 1e-9);
}

TEST_CASE("t and p are invariant under positive scaling") {
  std::vector<double> s = {0.3, -0.1, 0.7, 0.2, 0.05, -0.4, 0.9};
  TTestResult base = paired_ttest(s);
  for (double& v : s) v *= 37.5;
  TTestResult scaled = paired_ttest(s);
  CHECK(scaled.t_statistic == doctest::Approx(base.t_statistic).epsilon(1e-12));
  CHECK(scaled.p_two_sided == doctest::Approx(base.p_two_sided).epsilon(1e-12));
}

TEST_CASE("zero-variance sample sets") {
  std::vector<double> zeros(12, 0.0);
  CHECK(paired_ttest(zeros).p_two_sided == 1.0);
  std::vector<double> ones(12, 0.25);
  CHECK(paired_ttest(ones).p_two_sided == 0.0);
  std::vector<double> single = {1.0};
  CHECK_THROWS_AS(paired_ttest(single), std::invalid_argument);
}

TEST_CASE("t_cdf basics") {
  for (int df : {1, 2, 5, 30, 120, 10000}) CHECK(t_cdf(0.0, df) == 0.5);
  CHECK(t_cdf(100.0, 5) > 1.0 - 1e-6);
  CHECK(t_cdf(100.0, 5) <= 1.0);
  CHECK(t_cdf(-100.0, 5) < 1e-6);
  CHECK_THROWS_AS(t_cdf(1.0, 0), std::domain_error);
}

TEST_CASE("df = 1 matches the arctangent closed form") {
  for (double t = -50.0; t <= 50.0; t += 0.7) {
    double want = 0.5 + std::atan(t) / M_PI;
    CHECK(std::abs(t_cdf(t, 1) - want) <= 1e-10);
  }
  CHECK(t_cdf(1.0, 1) == doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("t_cdf symmetry and monotonicity") {
  for (int df : {1, 3, 9, 119, 2000}) {
    double prev = -1.0;
    for (double t = -40.0; t <= 40.0; t += 0.5) {
      double c = t_cdf(t, df);
      CHECK(std::abs(c + t_cdf(-t, df) - 1.0) <= 1e-12);
      CHECK(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("regularized incomplete beta") {
  CHECK(reg_inc_beta(0.0, 2.5, 3.5) == 0.0);
  CHECK(reg_inc_beta(1.0, 2.5, 3.5) == 1.0);
  for (double x = 0.0; x <= 1.0; x += 0.05)
    CHECK(reg_inc_beta(x, 1.0, 1.0) == doctest::Approx(x).epsilon(1e-12));
  // I_x(2,2) has the polynomial closed form 3x^2 - 2x^3.
  for (double x : {0.1, 0.25, 0.5, 0.75, 0.9})
    CHECK(reg_inc_beta(x, 2.0, 2.0) ==
          doctest::Approx(3 * x * x - 2 * x * x * x).epsilon(1e-12));
  CHECK(reg_inc_beta(0.5, 2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(reg_inc_beta(-0.1, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(reg_inc_beta(0.5, 0.0, 1.0), std::domain_error);
}

TEST_CASE("incomplete beta symmetry") {
  SessionRng rng(7, 7);
  for (int trial = 0; trial < 50; ++trial) {
    double a = 0.5 + 10 * rng.next_unit();
    double b = 0.5 + 10 * rng.next_unit();
    double x = rng.next_unit();
    CHECK(std::abs(reg_inc_beta(x, a, b) + reg_inc_beta(1 - x, b, a) - 1.0) <= 1e-12);
  }
}

TEST_CASE("paired t-test agrees with the quadrature oracle on random fixtures") {
  SessionRng rng(2024, 1);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng.next_unit() * 48);
    std::vector<double> s(n);
    double shift = (rng.next_unit() - 0.5) * 0.6;
    for (double& v : s) v = rng.next_unit() - 0.5 + shift;
    TTestResult r = paired_ttest(s);
    if (r.std_error == 0.0) continue;
    CHECK(std::abs(r.p_two_sided - oracle_p_two_sided(r.t_statistic, n - 1)) <= 1e-6);
  }
}

TEST_CASE("slope t-test") {
  std::vector<double> xs = {1, 2, 3, 4, 5, 6};
  std::vector<double> exact = {2, 4, 6, 8, 10, 12};
  TTestResult perfect = slope_ttest(xs, exact);
  CHECK(perfect.mean == doctest::Approx(2.0));
  CHECK(perfect.p_two_sided == 0.0);

  std::vector<double> noisy = {2.1, 3.8, 6.3, 7.9, 9.9, 12.2};
  TTestResult r = slope_ttest(xs, noisy);
  CHECK(r.p_two_sided > 0.0);
  CHECK(r.p_two_sided < 0.001);  // strong linear trend
}
