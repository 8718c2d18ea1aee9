#include "gamelab/statics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gamelab/lp.hpp"

namespace gamelab {

namespace {

constexpr double kStrictTol = 1e-7;

// Row-player view of one role: rows = own strategies, cols = opponent's.
struct RoleView {
  std::vector<std::vector<double>> payoff;  // 8x8, own payoff
};

RoleView view_of(const Game& game, Role role) {
  RoleView v;
  v.payoff.assign(kStrategies, std::vector<double>(kStrategies, 0.0));
  for (int i = 0; i < kStrategies; ++i)
    for (int j = 0; j < kStrategies; ++j)
      v.payoff[i][j] = role == Role::X ? game.payoff_x[i][j] : game.payoff_y[j][i];
  return v;
}

// Pure weak dominator of s against the active opponent set, or 0.
int pure_dominator(const RoleView& v, int s, const std::vector<int>& own_active,
                   const std::vector<int>& opp_active) {
  for (int r : own_active) {
    if (r == s) continue;
    bool ge = true;
    bool strict = false;
    for (int j : opp_active) {
      double d = v.payoff[r - 1][j - 1] - v.payoff[s - 1][j - 1];
      if (d < 0) {
        ge = false;
        break;
      }
      if (d > 0) strict = true;
    }
    if (ge && strict) return r;
  }
  return 0;
}

// Mixed weak dominance: a mixture over the other active strategies that is at
// least as good everywhere and strictly better somewhere. Feasibility LP that
// maximizes the total slack.
bool mixed_dominator(const RoleView& v, int s, const std::vector<int>& own_active,
                     const std::vector<int>& opp_active, Vec8* weights) {
  std::vector<int> others;
  for (int r : own_active)
    if (r != s) others.push_back(r);
  if (others.empty()) return false;

  const int n = static_cast<int>(others.size());
  LinearProgram lp(n);
  std::vector<double> obj(n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int j : opp_active) obj[k] += v.payoff[others[k] - 1][j - 1];
  lp.set_objective(obj);
  for (int j : opp_active) {
    std::vector<double> row(n);
    for (int k = 0; k < n; ++k) row[k] = -v.payoff[others[k] - 1][j - 1];
    lp.add_le(std::move(row), -v.payoff[s - 1][j - 1]);
  }
  lp.add_eq(std::vector<double>(n, 1.0), 1.0);

  auto res = lp.solve();
  if (res.status != LinearProgram::Status::Optimal) return false;
  double s_total = 0.0;
  for (int j : opp_active) s_total += v.payoff[s - 1][j - 1];
  if (res.value - s_total <= kStrictTol) return false;
  weights->fill(0.0);
  for (int k = 0; k < n; ++k) (*weights)[others[k] - 1] = res.z[k];
  return true;
}

std::vector<Elimination> dominated_in(const RoleView& v, IedsMode mode,
                                      const std::vector<int>& own_active,
                                      const std::vector<int>& opp_active) {
  std::vector<Elimination> out;
  for (int s : own_active) {
    Elimination e;
    e.strategy = s;
    if (int r = pure_dominator(v, s, own_active, opp_active)) {
      e.dominator_weights[r - 1] = 1.0;
      out.push_back(e);
    } else if (mode == IedsMode::WeakMixed &&
               mixed_dominator(v, s, own_active, opp_active, &e.dominator_weights)) {
      out.push_back(e);
    }
  }
  return out;
}

std::vector<int> as_sorted(const std::set<int>& s) { return {s.begin(), s.end()}; }

}  // namespace

std::vector<int> IedsResult::eliminated(Role role, int round) const {
  std::vector<int> out;
  for (const IedsRound& r : rounds) {
    if (r.round != round) continue;
    const auto& elims = role == Role::X ? r.x : r.y;
    for (const Elimination& e : elims) out.push_back(e.strategy);
  }
  std::sort(out.begin(), out.end());
  return out;
}

IedsResult ieds(const Game& game, IedsMode mode) {
  IedsResult result;
  std::set<int> active_x, active_y;
  for (int s = 1; s <= kStrategies; ++s) {
    active_x.insert(s);
    active_y.insert(s);
  }
  const RoleView vx = view_of(game, Role::X);
  const RoleView vy = view_of(game, Role::Y);

  for (int round = 1;; ++round) {
    auto ax = as_sorted(active_x);
    auto ay = as_sorted(active_y);
    IedsRound r;
    r.round = round;
    r.x = dominated_in(vx, mode, ax, ay);
    r.y = dominated_in(vy, mode, ay, ax);
    if (r.x.empty() && r.y.empty()) break;
    for (const Elimination& e : r.x) active_x.erase(e.strategy);
    for (const Elimination& e : r.y) active_y.erase(e.strategy);
    result.rounds.push_back(std::move(r));
  }
  result.survivors_x = active_x;
  result.survivors_y = active_y;
  return result;
}

std::map<int, DominationClass> classify_domination(const IedsResult& result) {
  std::map<int, DominationClass> out;
  for (int s = 1; s <= kStrategies; ++s) {
    out[unified_index(Role::X, s)] = result.survivors_x.count(s)
                                         ? DominationClass::DPlus
                                         : DominationClass::DMinus;
    out[unified_index(Role::Y, s)] = result.survivors_y.count(s)
                                         ? DominationClass::DPlus
                                         : DominationClass::DMinus;
  }
  return out;
}

namespace {

// max v s.t. sum_i z_i * payoff[i][j] >= v for all j, z on the simplex.
// Optionally forces a set of components to zero.
LinearProgram::Result value_lp(const std::vector<std::vector<double>>& payoff,
                               const std::vector<bool>& excluded) {
  const int m = static_cast<int>(payoff.size());
  const int n = static_cast<int>(payoff[0].size());
  const int vars = m + 2;  // z_1..z_m, v+, v-
  LinearProgram lp(vars);
  std::vector<double> obj(vars, 0.0);
  obj[m] = 1.0;
  obj[m + 1] = -1.0;
  lp.set_objective(obj);
  for (int j = 0; j < n; ++j) {
    std::vector<double> row(vars, 0.0);
    for (int i = 0; i < m; ++i) row[i] = -payoff[i][j];
    row[m] = 1.0;
    row[m + 1] = -1.0;
    lp.add_le(std::move(row), 0.0);
  }
  std::vector<double> simplex(vars, 0.0);
  for (int i = 0; i < m; ++i) simplex[i] = 1.0;
  lp.add_eq(simplex, 1.0);
  for (int i = 0; i < m; ++i) {
    if (excluded[i]) {
      std::vector<double> fix(vars, 0.0);
      fix[i] = 1.0;
      lp.add_eq(std::move(fix), 0.0);
    }
  }
  return lp.solve();
}

// Deterministic maximin strategy with a support-minimizing cleanup that tries
// to drop high strategy indices first (ties in optimal supports resolve toward
// lexicographically small supports).
std::vector<double> maximin_strategy(const std::vector<std::vector<double>>& payoff,
                                     double* value, int* lp_solves = nullptr) {
  const int m = static_cast<int>(payoff.size());
  std::vector<bool> excluded(m, false);
  int solves = 1;
  auto res = value_lp(payoff, excluded);
  if (res.status != LinearProgram::Status::Optimal)
    throw std::runtime_error("maximin LP did not reach an optimal basis");
  const double v = res.value;
  for (int s = m - 1; s >= 0; --s) {
    if (res.z[s] <= 1e-11) {
      excluded[s] = true;
      continue;
    }
    excluded[s] = true;
    ++solves;
    auto trial = value_lp(payoff, excluded);
    if (trial.status == LinearProgram::Status::Optimal &&
        std::abs(trial.value - v) <= 1e-9) {
      res = trial;
    } else {
      excluded[s] = false;
    }
  }
  std::vector<double> z(res.z.begin(), res.z.begin() + m);
  double sum = 0.0;
  for (double& p : z) {
    if (p < 1e-11) p = 0.0;
    sum += p;
  }
  for (double& p : z) p /= sum;
  *value = v;
  if (lp_solves) *lp_solves += solves;
  return z;
}

}  // namespace

MatrixGameSolution solve_matrix_game(const std::vector<std::vector<double>>& payoff,
                                     int* lp_solves) {
  if (payoff.empty() || payoff[0].empty())
    throw std::invalid_argument("empty payoff matrix");
  const int m = static_cast<int>(payoff.size());
  const int n = static_cast<int>(payoff[0].size());
  MatrixGameSolution sol;
  sol.row_strategy = maximin_strategy(payoff, &sol.value, lp_solves);
  // Column player maximizes the negated transpose.
  std::vector<std::vector<double>> neg_t(n, std::vector<double>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) neg_t[j][i] = -payoff[i][j];
  double col_value = 0.0;
  sol.col_strategy = maximin_strategy(neg_t, &col_value, lp_solves);
  if (std::abs(sol.value + col_value) > 1e-8)
    throw std::runtime_error("LP duality gap in matrix game solve");
  return sol;
}

EquilibriumSolution maximin_solve(const Game& game) {
  std::vector<std::vector<double>> a(kStrategies, std::vector<double>(kStrategies));
  for (int i = 0; i < kStrategies; ++i)
    for (int j = 0; j < kStrategies; ++j) a[i][j] = game.payoff_x[i][j];

  int lp_solves = 0;
  MatrixGameSolution m = solve_matrix_game(a, &lp_solves);
  EquilibriumSolution sol;
  sol.iterations = lp_solves;
  for (int i = 0; i < kStrategies; ++i) {
    sol.profile.x[i] = m.row_strategy[i];
    sol.profile.y[i] = m.col_strategy[i];
    if (m.row_strategy[i] > 1e-9) sol.support_x.insert(i + 1);
    if (m.col_strategy[i] > 1e-9) sol.support_y.insert(i + 1);
  }
  sol.value_x = m.value;
  sol.residual = verify_equilibrium(game, sol.profile);
  sol.converged = true;
  return sol;
}

double verify_equilibrium(const Game& game, const MixedProfile& profile) {
  profile.validate(1e-9);
  ExpectedPayoffs u = expected_payoffs(game, profile);
  double achieved_x = 0.0, achieved_y = 0.0;
  double best_x = u.x[0], best_y = u.y[0];
  for (int i = 0; i < kStrategies; ++i) {
    achieved_x += profile.x[i] * u.x[i];
    achieved_y += profile.y[i] * u.y[i];
    best_x = std::max(best_x, u.x[i]);
    best_y = std::max(best_y, u.y[i]);
  }
  return std::max(best_x - achieved_x, best_y - achieved_y);
}

}  // namespace gamelab
