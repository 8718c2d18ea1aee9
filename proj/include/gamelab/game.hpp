#pragma once

#include <array>
#include <string>
#include <utility>

namespace gamelab {

inline constexpr int kStrategies = 8;   // per role
inline constexpr int kUnified = 16;     // X1..X8 -> 1..8, Y1..Y8 -> 9..16
inline constexpr int kPairs = 120;      // C(16,2)

using Vec8 = std::array<double, 8>;
using Vec16 = std::array<double, 16>;
using PayoffMatrix = std::array<std::array<int, 8>, 8>;

enum class Role { X, Y };

/// A zero-sum 8x8 bimatrix game in published game points (base payoffs x6).
struct Game {
  std::string treatment;
  PayoffMatrix payoff_x{};
  PayoffMatrix payoff_y{};
  std::array<std::string, 8> labels_x;
  std::array<std::string, 8> labels_y;
};

/// Embedded treatment A/B/C matrices; throws std::invalid_argument on unknown id.
Game load_treatment(const std::string& id);

/// Custom game from a matrix file: treatment name on line 1, then 8 rows of
/// 8 whitespace-separated "a,b" integer pairs. Validates the zero-sum property
/// and reports the first offending cell.
Game load_game_file(const std::string& path);

/// Builds a game from an X payoff matrix (payoff_y = -payoff_x).
Game make_game(std::string treatment, const PayoffMatrix& payoff_x);

/// Payoff pair for pure plays (i, j), both 1-based.
std::pair<int, int> payoff(const Game& game, int i, int j);

struct MixedProfile {
  Vec8 x{};
  Vec8 y{};

  double at_unified(int index) const;          // 1..16
  Vec16 concat() const;                        // (x1..x8, y1..y8)
  void validate(double tol = 1e-12) const;     // throws on simplex violation
};

MixedProfile uniform_profile();
MixedProfile pure_profile(int x_strategy, int y_strategy);

struct ExpectedPayoffs {
  Vec8 x{};  // U_X[i] = sum_j payoff_x[i][j] * rho_y[j]
  Vec8 y{};  // U_Y[j] = sum_i payoff_y[i][j] * rho_x[i]
};

ExpectedPayoffs expected_payoffs(const Game& game, const MixedProfile& profile);

int unified_index(Role role, int strategy);      // -> 1..16
Role role_of_unified(int index);
int strategy_of_unified(int index);              // -> 1..8
std::string unified_label(int index);            // "X_2", "Y_4", ...

/// Lexicographic enumeration of all m<n pairs of unified indices, 1..120.
int pair_index(int m, int n);
std::pair<int, int> pair_strategies(int x);      // inverse of pair_index

}  // namespace gamelab
