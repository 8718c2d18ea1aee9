#include "gamelab/lp.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gamelab {

namespace {
constexpr double kEps = 1e-9;
}

void LinearProgram::add_le(std::vector<double> coeffs, double rhs) {
  if (static_cast<int>(coeffs.size()) != num_vars_)
    throw std::invalid_argument("constraint arity mismatch");
  rows_.push_back({std::move(coeffs), rhs, false});
}

void LinearProgram::add_eq(std::vector<double> coeffs, double rhs) {
  if (static_cast<int>(coeffs.size()) != num_vars_)
    throw std::invalid_argument("constraint arity mismatch");
  rows_.push_back({std::move(coeffs), rhs, true});
}

void LinearProgram::set_objective(std::vector<double> coeffs) {
  if (static_cast<int>(coeffs.size()) != num_vars_)
    throw std::invalid_argument("objective arity mismatch");
  objective_ = std::move(coeffs);
}

LinearProgram::Result LinearProgram::solve() const {
  const int m = static_cast<int>(rows_.size());
  const int n = num_vars_;

  // Column layout: [ structural n | slack/surplus per <= or negated row | artificial ].
  // Rows are normalized to b >= 0 first.
  int num_slack = 0;
  for (const Row& r : rows_)
    if (!r.equality) ++num_slack;

  std::vector<std::vector<double>> a(m, std::vector<double>(n + num_slack, 0.0));
  std::vector<double> b(m);
  std::vector<int> slack_col(m, -1);
  {
    int s = 0;
    for (int i = 0; i < m; ++i) {
      double sign = rows_[i].b < 0.0 ? -1.0 : 1.0;
      for (int j = 0; j < n; ++j) a[i][j] = sign * rows_[i].a[j];
      b[i] = sign * rows_[i].b;
      if (!rows_[i].equality) {
        slack_col[i] = n + s;
        a[i][n + s] = sign;  // slack for <=, surplus for >= after negation
        ++s;
      }
    }
  }

  // A row starts basic in its slack only when the slack has coefficient +1.
  std::vector<bool> needs_artificial(m, false);
  int num_art = 0;
  for (int i = 0; i < m; ++i) {
    if (slack_col[i] < 0 || a[i][slack_col[i]] < 0.0) {
      needs_artificial[i] = true;
      ++num_art;
    }
  }

  const int total = n + num_slack + num_art;
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(total + 1, 0.0));
  std::vector<int> basis(m, -1);
  {
    int art = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n + num_slack; ++j) t[i][j] = a[i][j];
      t[i][total] = b[i];
      if (needs_artificial[i]) {
        int col = n + num_slack + art;
        t[i][col] = 1.0;
        basis[i] = col;
        ++art;
      } else {
        basis[i] = slack_col[i];
      }
    }
  }

  auto pivot = [&](int prow, int pcol) {
    double pv = t[prow][pcol];
    for (double& v : t[prow]) v /= pv;
    for (int i = 0; i <= m; ++i) {
      if (i == prow) continue;
      double f = t[i][pcol];
      if (f == 0.0) continue;
      for (int j = 0; j <= total; ++j) t[i][j] -= f * t[prow][j];
    }
    basis[prow] = pcol;
  };

  // Bland: entering = lowest eligible column, leaving = lowest-index basic
  // variable among the minimum-ratio rows.
  auto run_simplex = [&](int allowed_cols) -> bool {
    for (int iter = 0; iter < 100000; ++iter) {
      int pcol = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (t[m][j] > kEps) {
          pcol = j;
          break;
        }
      }
      if (pcol < 0) return true;  // optimal
      int prow = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (t[i][pcol] > kEps) {
          double ratio = t[i][total] / t[i][pcol];
          if (ratio < best - kEps ||
              (ratio < best + kEps && (prow < 0 || basis[i] < basis[prow]))) {
            best = ratio;
            prow = i;
          }
        }
      }
      if (prow < 0) return false;  // unbounded
      pivot(prow, pcol);
    }
    throw std::runtime_error("simplex iteration limit exceeded");
  };

  Result res;

  if (num_art > 0) {
    // Phase 1: maximize -sum(artificials).
    for (int j = 0; j <= total; ++j) t[m][j] = 0.0;
    for (int i = 0; i < m; ++i) {
      if (needs_artificial[i]) {
        for (int j = 0; j <= total; ++j) t[m][j] += t[i][j];
      }
    }
    for (int j = n + num_slack; j < total; ++j) t[m][j] = 0.0;
    if (!run_simplex(total)) throw std::runtime_error("phase-1 unbounded");
    if (t[m][total] > 1e-7) {
      res.status = Status::Infeasible;
      return res;
    }
    // Pivot any lingering artificial out of the basis.
    for (int i = 0; i < m; ++i) {
      if (basis[i] >= n + num_slack) {
        int pcol = -1;
        for (int j = 0; j < n + num_slack; ++j) {
          if (std::abs(t[i][j]) > kEps) {
            pcol = j;
            break;
          }
        }
        if (pcol >= 0) pivot(i, pcol);
        // else: redundant row, harmless to leave.
      }
    }
  }

  // Phase 2 objective in terms of the current basis.
  for (int j = 0; j <= total; ++j) t[m][j] = 0.0;
  for (int j = 0; j < n; ++j) t[m][j] = objective_[j];
  for (int i = 0; i < m; ++i) {
    double c_b = basis[i] < n ? objective_[basis[i]] : 0.0;
    if (c_b == 0.0) continue;
    for (int j = 0; j <= total; ++j) t[m][j] -= c_b * t[i][j];
  }
  if (!run_simplex(n + num_slack)) {
    res.status = Status::Unbounded;
    return res;
  }

  res.status = Status::Optimal;
  res.z.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) res.z[basis[i]] = t[i][total];
  res.value = 0.0;
  for (int j = 0; j < n; ++j) res.value += objective_[j] * res.z[j];
  return res;
}

}  // namespace gamelab
