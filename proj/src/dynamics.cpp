#include "gamelab/dynamics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gamelab/rng.hpp"

namespace gamelab {

void SimConfig::validate() const {
  if (!(dt > 0.0) || dt > 1.0) throw std::invalid_argument("dt must be in (0, 1]");
  if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  if (sessions < 1) throw std::invalid_argument("sessions must be >= 1");
  if (!(payoff_scale > 0.0)) throw std::invalid_argument("payoff_scale must be > 0");
}

Vec8 logit_choice(const Vec8& payoffs, double lambda) {
  Vec8 out{};
  double top = payoffs[0];
  for (double u : payoffs) top = std::max(top, u);
  double sum = 0.0;
  for (int i = 0; i < kStrategies; ++i) {
    out[i] = std::exp(lambda * (payoffs[i] - top));
    sum += out[i];
  }
  for (double& w : out) w /= sum;
  return out;
}

namespace {

// Scaling every payoff by s is equivalent to scaling the precision.
double effective_lambda(const SimConfig& cfg) { return cfg.lambda * cfg.payoff_scale; }

MixedProfile choice_profile(const Game& game, const MixedProfile& p, double lambda) {
  ExpectedPayoffs u = expected_payoffs(game, p);
  MixedProfile c;
  c.x = logit_choice(u.x, lambda);
  c.y = logit_choice(u.y, lambda);
  return c;
}

double velocity_norm(const MixedProfile& p, const MixedProfile& c) {
  double ss = 0.0;
  for (int i = 0; i < kStrategies; ++i) {
    ss += (c.x[i] - p.x[i]) * (c.x[i] - p.x[i]);
    ss += (c.y[i] - p.y[i]) * (c.y[i] - p.y[i]);
  }
  return std::sqrt(ss);
}

}  // namespace

MixedProfile step(const Game& game, const MixedProfile& profile, const SimConfig& cfg) {
  MixedProfile c = choice_profile(game, profile, effective_lambda(cfg));
  MixedProfile next;
  for (int i = 0; i < kStrategies; ++i) {
    next.x[i] = (1.0 - cfg.dt) * profile.x[i] + cfg.dt * c.x[i];
    next.y[i] = (1.0 - cfg.dt) * profile.y[i] + cfg.dt * c.y[i];
  }
  return next;
}

SessionSeries simulate(const Game& game, const SimConfig& cfg, int session_id) {
  cfg.validate();
  SessionRng rng(cfg.master_seed, static_cast<std::uint64_t>(session_id));
  MixedProfile p;
  p.x = rng.next_simplex8();
  p.y = rng.next_simplex8();

  SessionSeries series;
  series.session_id = session_id;
  series.origin = Origin::Simulated;
  series.profiles.reserve(cfg.rounds);
  for (int t = 0; t < cfg.rounds; ++t) {
    p = step(game, p, cfg);
    series.profiles.push_back(p);
  }
  return series;
}

Ensemble run_ensemble(const Game& game, const SimConfig& cfg) {
  cfg.validate();
  Ensemble out;
  out.reserve(cfg.sessions);
  for (int s = 1; s <= cfg.sessions; ++s) out.push_back(simulate(game, cfg, s));
  return out;
}

namespace {

using Vec16d = Eigen::Matrix<double, 16, 1>;

Vec16d to_vec16(const MixedProfile& p) {
  Vec16d z;
  for (int i = 0; i < 8; ++i) {
    z[i] = p.x[i];
    z[8 + i] = p.y[i];
  }
  return z;
}

MixedProfile from_vec16(const Vec16d& z) {
  MixedProfile p;
  for (int i = 0; i < 8; ++i) {
    p.x[i] = z[i];
    p.y[i] = z[8 + i];
  }
  return p;
}

// F(z) = logit_choice(U(z)) - z, the continuous-time mean dynamic. Defined for
// any z (payoffs are linear in z), which finite differences rely on.
Vec16d dynamic_rhs(const Game& game, double lambda, const Vec16d& z) {
  MixedProfile p = from_vec16(z);
  MixedProfile c = choice_profile(game, p, lambda);
  return to_vec16(c) - z;
}

Eigen::Matrix<double, 16, 16> jacobian_fd(const Game& game, double lambda,
                                          const Vec16d& z, double h = 1e-6) {
  Eigen::Matrix<double, 16, 16> jac;
  for (int k = 0; k < 16; ++k) {
    Vec16d zp = z, zm = z;
    zp[k] += h;
    zm[k] -= h;
    jac.col(k) = (dynamic_rhs(game, lambda, zp) - dynamic_rhs(game, lambda, zm)) / (2.0 * h);
  }
  return jac;
}

void project_to_simplices(Vec16d& z) {
  for (int half = 0; half < 2; ++half) {
    double sum = 0.0;
    for (int i = 0; i < 8; ++i) {
      double& v = z[8 * half + i];
      if (v < 0.0) v = 0.0;
      sum += v;
    }
    if (sum <= 0.0) {
      for (int i = 0; i < 8; ++i) z[8 * half + i] = 0.125;
    } else {
      for (int i = 0; i < 8; ++i) z[8 * half + i] /= sum;
    }
  }
}

}  // namespace

namespace {

// Damped Newton with step halving on ||F||; returns the reached velocity.
double newton_polish(const Game& game, double lambda, Vec16d& z, long* iterations) {
  double vel = dynamic_rhs(game, lambda, z).norm();
  for (int it = 0; it < 200 && vel > 1e-13; ++it) {
    Eigen::Matrix<double, 16, 16> jac = jacobian_fd(game, lambda, z);
    Vec16d dz = jac.partialPivLu().solve(-dynamic_rhs(game, lambda, z));
    double step_scale = 1.0;
    bool improved = false;
    for (int half = 0; half < 7; ++half, step_scale *= 0.5) {
      Vec16d trial = z + step_scale * dz;
      project_to_simplices(trial);
      double trial_vel = dynamic_rhs(game, lambda, trial).norm();
      if (trial_vel < vel) {
        z = trial;
        vel = trial_vel;
        improved = true;
        break;
      }
    }
    ++*iterations;
    if (!improved) break;
  }
  return vel;
}

}  // namespace

RestPoint find_rest_point(const Game& game, const SimConfig& cfg) {
  cfg.validate();
  const double lambda = effective_lambda(cfg);
  constexpr double kAlpha = 0.1;
  constexpr double kUpdateTol = 1e-12;
  constexpr long kMaxIters = 1000000;

  RestPoint result;
  MixedProfile p = uniform_profile();
  MixedProfile best = p;
  double best_velocity = velocity_norm(p, choice_profile(game, p, lambda));
  long stalled = 0;

  long k = 0;
  for (; k < kMaxIters; ++k) {
    MixedProfile c = choice_profile(game, p, lambda);
    double vel = velocity_norm(p, c);
    if (vel < best_velocity) {
      best_velocity = vel;
      best = p;
      stalled = 0;
    } else if (++stalled > 20000) {
      break;  // orbiting an unstable fixed point; hand over to Newton
    }
    if (kAlpha * vel <= kUpdateTol) break;
    for (int i = 0; i < kStrategies; ++i) {
      p.x[i] = (1.0 - kAlpha) * p.x[i] + kAlpha * c.x[i];
      p.y[i] = (1.0 - kAlpha) * p.y[i] + kAlpha * c.y[i];
    }
  }

  // Newton polish. Unstable interior rest points (treatment A at the default
  // calibration) are circled, not reached, by the damped iteration; the
  // long-run orbit average of the Euler dynamic makes a reliable warm start.
  Vec16d z = to_vec16(best);
  double vel = newton_polish(game, lambda, z, &k);
  if (vel > 1e-10) {
    MixedProfile q = uniform_profile();
    Vec16d mean = Vec16d::Zero();
    for (int t = 0; t < 4000; ++t) {
      q = step(game, q, cfg);
      if (t >= 2000) mean += to_vec16(q);
    }
    Vec16d z2 = mean / 2000.0;
    double vel2 = newton_polish(game, lambda, z2, &k);
    if (vel2 < vel) {
      z = z2;
      vel = vel2;
    }
  }

  result.profile = from_vec16(z);
  result.velocity_norm = vel;
  result.converged = vel <= 1e-10;
  result.iterations = k;
  return result;
}

EigenSystem linearize(const Game& game, const SimConfig& cfg, const MixedProfile& at) {
  cfg.validate();
  const double lambda = effective_lambda(cfg);
  Vec16d z = to_vec16(at);
  const double vel = dynamic_rhs(game, lambda, z).norm();
  if (vel > 1e-6)
    throw std::invalid_argument("linearize requires a rest point (velocity " +
                                std::to_string(vel) + " > 1e-6)");

  Eigen::Matrix<double, 16, 16> jac = jacobian_fd(game, lambda, z);
  Eigen::EigenSolver<Eigen::Matrix<double, 16, 16>> solver(jac);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed; matrix norm " +
                             std::to_string(jac.norm()) + ", condition estimate " +
                             std::to_string(jac.partialPivLu().rcond()));

  std::vector<int> order(16);
  std::iota(order.begin(), order.end(), 0);
  const auto& values = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (values[a].real() != values[b].real()) return values[a].real() > values[b].real();
    return values[a].imag() > values[b].imag();
  });

  EigenSystem sys;
  sys.rest_point = at;
  sys.velocity_norm_at_rest = vel;
  for (int k : order) {
    sys.eigenvalues.push_back(values[k]);
    std::array<std::complex<double>, 16> xi{};
    for (int i = 0; i < 16; ++i) xi[i] = solver.eigenvectors()(i, k);
    sys.eigenvectors.push_back(xi);
    sys.euler_moduli.push_back(std::abs(1.0 + cfg.dt * values[k]));
  }
  return sys;
}

}  // namespace gamelab
