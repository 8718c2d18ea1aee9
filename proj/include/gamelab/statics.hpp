#pragma once

#include <map>
#include <set>
#include <vector>

#include "gamelab/game.hpp"

namespace gamelab {

enum class DominationClass { DPlus, DMinus };  // survivor / eliminated
enum class IedsMode { WeakPure, WeakMixed };

/// One eliminated strategy and the dominator that removed it. For pure
/// dominators the weight vector is a vertex; for mixed dominators it is the
/// certifying mixture over the role's strategies (1-based index = position+1).
struct Elimination {
  int strategy = 0;
  Vec8 dominator_weights{};
};

struct IedsRound {
  int round = 0;
  std::vector<Elimination> x;
  std::vector<Elimination> y;
};

struct IedsResult {
  std::vector<IedsRound> rounds;
  std::set<int> survivors_x;
  std::set<int> survivors_y;

  std::vector<int> eliminated(Role role, int round) const;  // strategy ids
};

/// Iterated elimination of weakly dominated strategies. Within a round, all
/// strategies of both roles that are dominated against the currently active
/// opposing set are removed simultaneously.
IedsResult ieds(const Game& game, IedsMode mode = IedsMode::WeakPure);

/// Unified-index map: survivors -> D+, eliminated -> D-.
std::map<int, DominationClass> classify_domination(const IedsResult& result);

struct EquilibriumSolution {
  MixedProfile profile;
  double value_x = 0.0;       // game value in published units; Y's value is -value_x
  double residual = 0.0;      // max best-response violation over both roles
  std::set<int> support_x;
  std::set<int> support_y;
  bool converged = false;
  int iterations = 0;         // LP solves performed (including tie-break passes)
};

/// Maximin solution of a zero-sum matrix game via the standard value-
/// maximization linear program (equivalent to the quadratic program for
/// zero-sum games). Deterministic: Bland pivoting plus a support-minimizing
/// cleanup pass that prefers low strategy indices.
EquilibriumSolution maximin_solve(const Game& game);

/// Generic m x n zero-sum matrix game solver (row player payoff matrix),
/// used for survivor-subgame value checks.
struct MatrixGameSolution {
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  double value = 0.0;
};
MatrixGameSolution solve_matrix_game(const std::vector<std::vector<double>>& payoff,
                                     int* lp_solves = nullptr);

/// Best-response residual: max over both roles of (best pure payoff against
/// the opponent mixture - achieved expected payoff). A profile is an
/// eps-equilibrium iff the residual is <= eps.
double verify_equilibrium(const Game& game, const MixedProfile& profile);

}  // namespace gamelab
