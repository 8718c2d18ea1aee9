#include "gamelab/game.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gamelab {

namespace {

// The three embedded treatments, X payoffs in published game points.
constexpr PayoffMatrix kPayoffA = {{
    {0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 1, 1, 1, 1, 2, 2},
    {2, -1, 2, -1, 3, 0, 3, 0},
    {2, -1, 3, 0, 4, 1, 5, 2},
    {4, 1, 1, -2, 4, 1, 1, -2},
    {4, 1, 2, -1, 5, 2, 3, 0},
    {6, 0, 3, -3, 7, 1, 4, -2},
    {6, 0, 4, -2, 8, 2, 6, 0},
}};

constexpr PayoffMatrix kPayoffB = {{
    {0, 0, 0, 0, 0, 0, 0, 0},
    {-2, -2, 0, 0, 0, 0, 2, 2},
    {2, -2, 2, -2, 4, 0, 4, 0},
    {0, -4, 2, -2, 4, 0, 6, 2},
    {6, 2, 2, -2, 6, 2, 2, -2},
    {4, 0, 2, -2, 6, 2, 4, 0},
    {8, 0, 4, -4, 10, 2, 6, -2},
    {6, -2, 4, -4, 10, 2, 8, 0},
}};

// Treatment C as printed (stray asterisks in the source table ignored).
constexpr PayoffMatrix kPayoffC = {{
    {0, 0, 0, 0, 0, 0, 0, 0},
    {-2, -2, 1, 1, 1, 1, 4, 4},
    {2, -3, 2, -3, 5, 0, 5, 0},
    {0, -5, 3, -2, 6, 1, 9, 4},
    {6, 1, 1, -4, 6, 1, 1, -4},
    {4, -1, 2, -3, 7, 2, 5, 0},
    {8, -2, 3, -7, 11, 1, 6, -4},
    {6, -4, 4, -6, 12, 2, 10, 0},
}};

void fill_labels(Game& game) {
  for (int s = 1; s <= kStrategies; ++s) {
    game.labels_x[s - 1] = "X" + std::to_string(s);
    game.labels_y[s - 1] = "Y" + std::to_string(s);
  }
}

void check_zero_sum(const Game& game) {
  for (int i = 0; i < kStrategies; ++i) {
    for (int j = 0; j < kStrategies; ++j) {
      if (game.payoff_x[i][j] + game.payoff_y[i][j] != 0) {
        throw std::invalid_argument(
            "game '" + game.treatment + "' is not zero-sum at cell (X" +
            std::to_string(i + 1) + ", Y" + std::to_string(j + 1) + "): " +
            std::to_string(game.payoff_x[i][j]) + " + " +
            std::to_string(game.payoff_y[i][j]) + " != 0");
      }
    }
  }
}

}  // namespace

Game make_game(std::string treatment, const PayoffMatrix& payoff_x) {
  Game game;
  game.treatment = std::move(treatment);
  game.payoff_x = payoff_x;
  for (int i = 0; i < kStrategies; ++i)
    for (int j = 0; j < kStrategies; ++j)
      game.payoff_y[i][j] = -payoff_x[i][j];
  fill_labels(game);
  return game;
}

Game load_treatment(const std::string& id) {
  if (id == "A") return make_game("A", kPayoffA);
  if (id == "B") return make_game("B", kPayoffB);
  if (id == "C") return make_game("C", kPayoffC);
  throw std::invalid_argument("unknown treatment '" + id +
                              "' (expected A, B or C, or a matrix file)");
}

Game load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open game file: " + path);
  std::string name;
  if (!std::getline(in, name) || name.empty())
    throw std::runtime_error(path + ": missing treatment name on line 1");

  Game game;
  game.treatment = name;
  for (int i = 0; i < kStrategies; ++i) {
    for (int j = 0; j < kStrategies; ++j) {
      std::string cell;
      if (!(in >> cell))
        throw std::runtime_error(path + ": truncated matrix at row " +
                                 std::to_string(i + 1));
      auto comma = cell.find(',');
      if (comma == std::string::npos)
        throw std::runtime_error(path + ": cell (X" + std::to_string(i + 1) +
                                 ", Y" + std::to_string(j + 1) +
                                 ") is not an 'a,b' pair: " + cell);
      try {
        game.payoff_x[i][j] = std::stoi(cell.substr(0, comma));
        game.payoff_y[i][j] = std::stoi(cell.substr(comma + 1));
      } catch (const std::exception&) {
        throw std::runtime_error(path + ": cell (X" + std::to_string(i + 1) +
                                 ", Y" + std::to_string(j + 1) +
                                 ") has non-integer entries: " + cell);
      }
    }
  }
  fill_labels(game);
  check_zero_sum(game);
  return game;
}

std::pair<int, int> payoff(const Game& game, int i, int j) {
  if (i < 1 || i > kStrategies || j < 1 || j > kStrategies)
    throw std::out_of_range("strategy index out of 1..8: (" +
                            std::to_string(i) + ", " + std::to_string(j) + ")");
  return {game.payoff_x[i - 1][j - 1], game.payoff_y[i - 1][j - 1]};
}

double MixedProfile::at_unified(int index) const {
  if (index < 1 || index > kUnified)
    throw std::out_of_range("unified index out of 1..16");
  return index <= 8 ? x[index - 1] : y[index - 9];
}

Vec16 MixedProfile::concat() const {
  Vec16 out{};
  for (int i = 0; i < 8; ++i) {
    out[i] = x[i];
    out[8 + i] = y[i];
  }
  return out;
}

void MixedProfile::validate(double tol) const {
  auto check = [&](const Vec8& v, const char* side) {
    double sum = 0.0;
    for (double p : v) {
      if (!(p >= 0.0))
        throw std::invalid_argument(std::string(side) +
                                    " has a negative component");
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol)
      throw std::invalid_argument(std::string(side) + " does not sum to 1 (" +
                                  std::to_string(sum) + ")");
  };
  check(x, "rho_x");
  check(y, "rho_y");
}

MixedProfile uniform_profile() {
  MixedProfile p;
  p.x.fill(1.0 / kStrategies);
  p.y.fill(1.0 / kStrategies);
  return p;
}

MixedProfile pure_profile(int x_strategy, int y_strategy) {
  if (x_strategy < 1 || x_strategy > 8 || y_strategy < 1 || y_strategy > 8)
    throw std::out_of_range("pure strategy out of 1..8");
  MixedProfile p;
  p.x[x_strategy - 1] = 1.0;
  p.y[y_strategy - 1] = 1.0;
  return p;
}

ExpectedPayoffs expected_payoffs(const Game& game, const MixedProfile& profile) {
  ExpectedPayoffs u;
  for (int i = 0; i < kStrategies; ++i) {
    double acc = 0.0;
    for (int j = 0; j < kStrategies; ++j) acc += game.payoff_x[i][j] * profile.y[j];
    u.x[i] = acc;
  }
  for (int j = 0; j < kStrategies; ++j) {
    double acc = 0.0;
    for (int i = 0; i < kStrategies; ++i) acc += game.payoff_y[i][j] * profile.x[i];
    u.y[j] = acc;
  }
  return u;
}

int unified_index(Role role, int strategy) {
  if (strategy < 1 || strategy > kStrategies)
    throw std::out_of_range("strategy out of 1..8");
  return role == Role::X ? strategy : kStrategies + strategy;
}

Role role_of_unified(int index) {
  if (index < 1 || index > kUnified) throw std::out_of_range("unified index out of 1..16");
  return index <= kStrategies ? Role::X : Role::Y;
}

int strategy_of_unified(int index) {
  if (index < 1 || index > kUnified) throw std::out_of_range("unified index out of 1..16");
  return index <= kStrategies ? index : index - kStrategies;
}

std::string unified_label(int index) {
  const char* side = role_of_unified(index) == Role::X ? "X_" : "Y_";
  return side + std::to_string(strategy_of_unified(index));
}

int pair_index(int m, int n) {
  if (m < 1 || n > kUnified || m >= n)
    throw std::out_of_range("pair_index requires 1 <= m < n <= 16");
  // pairs (1,2)..(1,16) are x=1..15, then (2,3).. and so on
  return (m - 1) * kUnified - (m - 1) * m / 2 + (n - m);
}

std::pair<int, int> pair_strategies(int x) {
  if (x < 1 || x > kPairs) throw std::out_of_range("pair index out of 1..120");
  int m = 1;
  int remaining = x;
  while (remaining > kUnified - m) {
    remaining -= kUnified - m;
    ++m;
  }
  return {m, m + remaining};
}

}  // namespace gamelab
