#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gamelab/dynamics.hpp"
#include "gamelab/game.hpp"
#include "gamelab/statics.hpp"
#include "gamelab/stats.hpp"

namespace gamelab {

// ---------------------------------------------------------------- spectrum

struct SpectrumEntry {
  int x = 0;  // 1..120
  int m = 0;  // unified, m < n
  int n = 0;
  double value = 0.0;  // normalized so that max |value| = 1
};

struct Spectrum {
  std::array<SpectrumEntry, kPairs> entries{};
  double normalization = 0.0;  // max-abs raw value used as divisor
  bool degenerate = false;     // all raw values zero

  double value(int m, int n) const;  // antisymmetric: value(n,m) = -value(m,n)
  double raw(int m, int n) const;
};

/// Accumulated signed area of the trajectory projected on each of the 120
/// 2-D strategy subspaces, averaged over sessions and normalized to
/// max |value| = 1 (all-zero spectra are returned as zeros and flagged).
Spectrum eigencycle_spectrum(const Ensemble& ensemble);

/// Directed 4-cycle through strategies a -> c -> b -> d -> a, with a,b on the
/// X side and c,d on the Y side of the unified index.
struct CycleLoop {
  std::array<int, 4> nodes{};   // {a, c, b, d}
  double mean_strength = 0.0;   // mean |normalized value| over the four edges
  double mean_raw_strength = 0.0;
};

/// Reconstructs directed 4-cycles alternating X- and Y-indices among entries
/// with |value| >= threshold, using entry signs for orientation.
std::vector<CycleLoop> cycle_loops(const Spectrum& spectrum, double threshold);

/// Mean raw loop strength (0 when no loops), the inter-treatment comparison
/// quantity behind the A > C > B ordering.
double mean_loop_strength(const std::vector<CycleLoop>& loops);

// ------------------------------------------------------------ distribution

/// Mean of rho over rounds t0..t1 (inclusive) and over sessions.
Vec16 time_average(const Ensemble& ensemble, int t0, int t1);

/// Euclidean distance on the concatenated 16-vector.
double euclidean_distance(const Vec16& a, const Vec16& b);

struct DistanceEvolution {
  double early = 0.0;  // delta over the early window
  double late = 0.0;   // delta over the late window
  double delta = 0.0;  // late - early
  std::pair<int, int> early_window;
  std::pair<int, int> late_window;
};

/// Distances of the [1,200] and [801,1000] window averages to a prediction.
/// For shorter series, pass scale_windows = true to shrink both windows
/// proportionally; otherwise an out-of-range window throws.
DistanceEvolution distance_evolution(const Ensemble& ensemble, const Vec16& prediction,
                                     bool scale_windows = false);

// ---------------------------------------------------------------- collapse

struct AccumulatedCurve {
  int strategy = 0;            // unified index
  std::vector<double> values;  // values[t-1] = accumulated usage through round t
};

AccumulatedCurve accumulated_curve(const SessionSeries& series, int strategy);
/// Ensemble version: the per-round ensemble mean of rho is summed.
AccumulatedCurve accumulated_curve(const Ensemble& ensemble, int strategy);

struct PulseResult {
  int dominated = 0;   // s_j, unified
  int domination = 0;  // s_i, unified
  int t0 = 0, t1 = 0;  // closed block of rounds
  double psi = 0.0;    // total surplus of s_j over s_i
  double p_value = 1.0;
  int n = 0;           // block length x sessions
  double t_statistic = 0.0;
};

/// Surplus samples rho(s_j) - rho(s_i) over every round of the block and every
/// session; psi is their sum and p the two-sided paired t-test probability.
PulseResult pulse(const Ensemble& ensemble, int dominated, int domination,
                  int t0, int t1);

enum class Significance { None, Significant, StronglySignificant };

/// p < 0.010 is strongly significant, p < 0.05 significant.
Significance significance_of(double p_value);

struct PulseReport {
  std::string treatment;
  std::vector<PulseResult> rows;  // significant pulses, psi descending
};

/// All (D-, D+) same-role pairs over consecutive blocks covering rounds 1..T;
/// keeps positive-surplus pulses with p below the threshold.
PulseReport scan_pulses(const Ensemble& ensemble,
                        const std::map<int, DominationClass>& domination,
                        int block_length = 10, double p_threshold = 0.05);

enum class CrossKind { ChiPlus, ChiMinus, ChiBothDominated };

struct Crossover {
  int i = 0;  // pair as passed by the caller
  int j = 0;
  int tau = 0;
  CrossKind kind = CrossKind::ChiPlus;
  bool j_above_before = false;  // which curve was above for t -> tau from below
};

/// Sign changes of the accumulated-curve difference; tau is the first round at
/// or after each change, and crossings with tau <= tau_min are dropped.
/// Multiple crossings of the same pair are all reported.
std::vector<Crossover> crossovers(const AccumulatedCurve& curve_i,
                                  const AccumulatedCurve& curve_j,
                                  DominationClass class_i, DominationClass class_j,
                                  int tau_min = 40);

struct CrossoverRow {
  int domination = 0;  // unified; the D+ side for chi-, the overtaker for chi+
  int dominated = 0;   // the curve that was ahead before the crossing
  int tau = 0;
  CrossKind kind = CrossKind::ChiPlus;
};

struct CrossoverReport {
  std::string treatment;
  std::vector<CrossoverRow> rows;
};

/// Crossovers of every same-role pair with at least one D+ member, on the
/// ensemble-mean accumulated curves.
CrossoverReport scan_crossovers(const Ensemble& ensemble,
                                const std::map<int, DominationClass>& domination,
                                int tau_min = 40);

struct ConsistencyReport {
  int pairs_checked = 0;
  std::vector<std::string> violations;  // empty on consistent data
};

/// For every initial pulse of a dominated strategy over a domination with
/// equal starting accumulations, checks that the accumulated curves cross
/// strictly after the pulse interval once the domination has overtaken.
ConsistencyReport pulse_crossover_consistency(const Ensemble& ensemble,
                                              const std::map<int, DominationClass>& domination);

}  // namespace gamelab
