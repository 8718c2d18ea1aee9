#include "gamelab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gamelab {

namespace {

int min_rounds(const Ensemble& ensemble) {
  if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
  int t = ensemble.front().rounds();
  for (const SessionSeries& s : ensemble) t = std::min(t, s.rounds());
  return t;
}

int equal_rounds(const Ensemble& ensemble) {
  if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
  int t = ensemble.front().rounds();
  for (const SessionSeries& s : ensemble)
    if (s.rounds() != t)
      throw std::invalid_argument("sessions have unequal lengths");
  return t;
}

// Per-round ensemble mean of the unified 16-vector.
std::vector<Vec16> mean_trajectory(const Ensemble& ensemble) {
  const int t_max = equal_rounds(ensemble);
  std::vector<Vec16> mean(t_max, Vec16{});
  for (const SessionSeries& s : ensemble) {
    for (int t = 0; t < t_max; ++t) {
      Vec16 v = s.profiles[t].concat();
      for (int i = 0; i < kUnified; ++i) mean[t][i] += v[i];
    }
  }
  const double inv = 1.0 / ensemble.size();
  for (Vec16& v : mean)
    for (double& e : v) e *= inv;
  return mean;
}

}  // namespace

// ---------------------------------------------------------------- spectrum

double Spectrum::value(int m, int n) const {
  if (m == n) throw std::out_of_range("spectrum value requires m != n");
  const bool flip = m > n;
  if (flip) std::swap(m, n);
  double v = entries[pair_index(m, n) - 1].value;
  return flip ? -v : v;
}

double Spectrum::raw(int m, int n) const { return value(m, n) * normalization; }

Spectrum eigencycle_spectrum(const Ensemble& ensemble) {
  if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
  for (const SessionSeries& s : ensemble)
    if (s.rounds() < 2)
      throw std::invalid_argument("eigencycle requires at least 2 rounds per session");

  std::array<double, kPairs> raw{};
  for (const SessionSeries& s : ensemble) {
    const int t_max = s.rounds();
    for (int t = 0; t + 1 < t_max; ++t) {
      const Vec16 cur = s.profiles[t].concat();
      const Vec16 nxt = s.profiles[t + 1].concat();
      int x = 0;
      for (int m = 0; m < kUnified; ++m) {
        for (int n = m + 1; n < kUnified; ++n, ++x) {
          raw[x] += 0.5 * (cur[m] * (nxt[n] - cur[n]) - cur[n] * (nxt[m] - cur[m]));
        }
      }
    }
  }
  const double inv = 1.0 / ensemble.size();
  double max_abs = 0.0;
  for (double& v : raw) {
    v *= inv;
    max_abs = std::max(max_abs, std::abs(v));
  }

  Spectrum spec;
  spec.normalization = max_abs;
  spec.degenerate = max_abs == 0.0;
  int x = 0;
  for (int m = 1; m <= kUnified; ++m) {
    for (int n = m + 1; n <= kUnified; ++n, ++x) {
      spec.entries[x] = {x + 1, m, n, spec.degenerate ? 0.0 : raw[x] / max_abs};
    }
  }
  return spec;
}

std::vector<CycleLoop> cycle_loops(const Spectrum& spectrum, double threshold) {
  std::vector<CycleLoop> loops;
  if (spectrum.degenerate) return loops;
  for (int a = 1; a <= 8; ++a) {
    for (int b = a + 1; b <= 8; ++b) {
      for (int c = 9; c <= 16; ++c) {
        for (int d = c + 1; d <= 16; ++d) {
          const double ac = spectrum.value(a, c);
          const double ad = spectrum.value(a, d);
          const double bc = spectrum.value(b, c);
          const double bd = spectrum.value(b, d);
          const double mn = std::min(std::min(std::abs(ac), std::abs(ad)),
                                     std::min(std::abs(bc), std::abs(bd)));
          if (mn < threshold) continue;
          CycleLoop loop;
          // Positive value(m,n) orients the edge m -> n.
          if (ac > 0 && bc < 0 && bd > 0 && ad < 0) {
            loop.nodes = {a, c, b, d};
          } else if (ad > 0 && bd < 0 && bc > 0 && ac < 0) {
            loop.nodes = {a, d, b, c};
          } else {
            continue;
          }
          loop.mean_strength =
              0.25 * (std::abs(ac) + std::abs(ad) + std::abs(bc) + std::abs(bd));
          loop.mean_raw_strength = loop.mean_strength * spectrum.normalization;
          loops.push_back(loop);
        }
      }
    }
  }
  std::sort(loops.begin(), loops.end(), [](const CycleLoop& l, const CycleLoop& r) {
    if (l.mean_strength != r.mean_strength) return l.mean_strength > r.mean_strength;
    return l.nodes < r.nodes;
  });
  return loops;
}

double mean_loop_strength(const std::vector<CycleLoop>& loops) {
  if (loops.empty()) return 0.0;
  double sum = 0.0;
  for (const CycleLoop& l : loops) sum += l.mean_raw_strength;
  return sum / loops.size();
}

// ------------------------------------------------------------ distribution

Vec16 time_average(const Ensemble& ensemble, int t0, int t1) {
  const int t_max = min_rounds(ensemble);
  if (t0 < 1 || t1 < t0 || t1 > t_max)
    throw std::out_of_range("time_average window [" + std::to_string(t0) + ", " +
                            std::to_string(t1) + "] out of 1.." + std::to_string(t_max));
  Vec16 avg{};
  for (const SessionSeries& s : ensemble) {
    Vec16 session{};
    for (int t = t0; t <= t1; ++t) {
      Vec16 v = s.profiles[t - 1].concat();
      for (int i = 0; i < kUnified; ++i) session[i] += v[i];
    }
    for (int i = 0; i < kUnified; ++i) avg[i] += session[i] / (t1 - t0 + 1);
  }
  for (double& e : avg) e /= ensemble.size();
  return avg;
}

double euclidean_distance(const Vec16& a, const Vec16& b) {
  double ss = 0.0;
  for (int i = 0; i < kUnified; ++i) ss += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(ss);
}

DistanceEvolution distance_evolution(const Ensemble& ensemble, const Vec16& prediction,
                                     bool scale_windows) {
  const int t_max = min_rounds(ensemble);
  DistanceEvolution out;
  if (t_max >= 1000 || !scale_windows) {
    out.early_window = {1, 200};
    out.late_window = {801, 1000};
    if (t_max < 1000)
      throw std::out_of_range(
          "distance_evolution windows need 1000 rounds (have " +
          std::to_string(t_max) + "); pass scale_windows to shrink them");
  } else {
    const int early_end = std::max(1, t_max / 5);
    out.early_window = {1, early_end};
    out.late_window = {t_max - early_end + 1, t_max};
  }
  out.early = euclidean_distance(
      time_average(ensemble, out.early_window.first, out.early_window.second), prediction);
  out.late = euclidean_distance(
      time_average(ensemble, out.late_window.first, out.late_window.second), prediction);
  out.delta = out.late - out.early;
  return out;
}

// ---------------------------------------------------------------- collapse

AccumulatedCurve accumulated_curve(const SessionSeries& series, int strategy) {
  AccumulatedCurve curve;
  curve.strategy = strategy;
  curve.values.reserve(series.profiles.size());
  double acc = 0.0;
  for (const MixedProfile& p : series.profiles) {
    acc += p.at_unified(strategy);
    curve.values.push_back(acc);
  }
  return curve;
}

AccumulatedCurve accumulated_curve(const Ensemble& ensemble, int strategy) {
  const auto mean = mean_trajectory(ensemble);
  AccumulatedCurve curve;
  curve.strategy = strategy;
  curve.values.reserve(mean.size());
  double acc = 0.0;
  for (const Vec16& v : mean) {
    acc += v[strategy - 1];
    curve.values.push_back(acc);
  }
  return curve;
}

PulseResult pulse(const Ensemble& ensemble, int dominated, int domination,
                  int t0, int t1) {
  if (role_of_unified(dominated) != role_of_unified(domination))
    throw std::invalid_argument("pulse strategies must belong to the same role");
  if (dominated == domination)
    throw std::invalid_argument("pulse requires two distinct strategies");
  const int t_max = min_rounds(ensemble);
  if (t0 < 1 || t1 < t0 || t1 > t_max)
    throw std::out_of_range("pulse block out of range");

  std::vector<double> samples;
  samples.reserve(ensemble.size() * (t1 - t0 + 1));
  for (const SessionSeries& s : ensemble) {
    for (int t = t0; t <= t1; ++t) {
      samples.push_back(s.profiles[t - 1].at_unified(dominated) -
                        s.profiles[t - 1].at_unified(domination));
    }
  }
  PulseResult r;
  r.dominated = dominated;
  r.domination = domination;
  r.t0 = t0;
  r.t1 = t1;
  r.n = static_cast<int>(samples.size());
  for (double v : samples) r.psi += v;
  TTestResult tt = paired_ttest(samples);
  r.p_value = tt.p_two_sided;
  r.t_statistic = tt.t_statistic;
  return r;
}

Significance significance_of(double p_value) {
  if (p_value < 0.010) return Significance::StronglySignificant;
  if (p_value < 0.050) return Significance::Significant;
  return Significance::None;
}

PulseReport scan_pulses(const Ensemble& ensemble,
                        const std::map<int, DominationClass>& domination,
                        int block_length, double p_threshold) {
  if (block_length < 1) throw std::invalid_argument("block_length must be >= 1");
  const int t_max = min_rounds(ensemble);
  PulseReport report;
  for (int role = 0; role < 2; ++role) {
    std::vector<int> dplus, dminus;
    for (int s = 1; s <= kStrategies; ++s) {
      const int u = role == 0 ? s : kStrategies + s;
      (domination.at(u) == DominationClass::DPlus ? dplus : dminus).push_back(u);
    }
    for (int j : dminus) {
      for (int i : dplus) {
        for (int t0 = 1; t0 + block_length - 1 <= t_max; t0 += block_length) {
          PulseResult r = pulse(ensemble, j, i, t0, t0 + block_length - 1);
          if (r.psi > 0.0 && r.p_value < p_threshold) report.rows.push_back(r);
        }
      }
    }
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const PulseResult& l, const PulseResult& r) {
              if (l.psi != r.psi) return l.psi > r.psi;
              if (l.t0 != r.t0) return l.t0 < r.t0;
              if (l.dominated != r.dominated) return l.dominated < r.dominated;
              return l.domination < r.domination;
            });
  return report;
}

std::vector<Crossover> crossovers(const AccumulatedCurve& curve_i,
                                  const AccumulatedCurve& curve_j,
                                  DominationClass class_i, DominationClass class_j,
                                  int tau_min) {
  if (curve_i.values.size() != curve_j.values.size())
    throw std::invalid_argument("crossover curves must have equal length");
  CrossKind kind;
  if (class_i == DominationClass::DPlus && class_j == DominationClass::DPlus)
    kind = CrossKind::ChiPlus;
  else if (class_i == DominationClass::DMinus && class_j == DominationClass::DMinus)
    kind = CrossKind::ChiBothDominated;
  else
    kind = CrossKind::ChiMinus;

  std::vector<Crossover> out;
  const auto& a = curve_i.values;
  const auto& b = curve_j.values;
  for (size_t t = 1; t < a.size(); ++t) {
    const double prev = a[t - 1] - b[t - 1];
    const double cur = a[t] - b[t];
    const bool flipped = (prev > 0.0 && cur < 0.0) || (prev < 0.0 && cur > 0.0);
    const bool touched = prev != 0.0 && cur == 0.0;
    if (!flipped && !touched) continue;
    const int tau = static_cast<int>(t) + 1;  // rounds are 1-based
    if (tau <= tau_min) continue;
    Crossover c;
    c.i = curve_i.strategy;
    c.j = curve_j.strategy;
    c.tau = tau;
    c.kind = kind;
    c.j_above_before = prev < 0.0;
    out.push_back(c);
  }
  return out;
}

CrossoverReport scan_crossovers(const Ensemble& ensemble,
                                const std::map<int, DominationClass>& domination,
                                int tau_min) {
  CrossoverReport report;
  std::array<AccumulatedCurve, kUnified> curves;
  for (int u = 1; u <= kUnified; ++u) curves[u - 1] = accumulated_curve(ensemble, u);

  for (int role = 0; role < 2; ++role) {
    const int base = role == 0 ? 0 : kStrategies;
    for (int s = 1; s <= kStrategies; ++s) {
      for (int t = s + 1; t <= kStrategies; ++t) {
        const int u = base + s, v = base + t;
        const DominationClass cu = domination.at(u), cv = domination.at(v);
        if (cu == DominationClass::DMinus && cv == DominationClass::DMinus) continue;
        for (const Crossover& c :
             crossovers(curves[u - 1], curves[v - 1], cu, cv, tau_min)) {
          CrossoverRow row;
          row.tau = c.tau;
          row.kind = c.kind;
          const int above = c.j_above_before ? v : u;
          const int below = c.j_above_before ? u : v;
          if (c.kind == CrossKind::ChiMinus) {
            row.domination = cu == DominationClass::DPlus ? u : v;
            row.dominated = cu == DominationClass::DPlus ? v : u;
          } else {
            row.domination = below;  // the overtaker
            row.dominated = above;
          }
          report.rows.push_back(row);
        }
      }
    }
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const CrossoverRow& l, const CrossoverRow& r) {
              if (l.domination != r.domination) return l.domination < r.domination;
              if (l.tau != r.tau) return l.tau < r.tau;
              return l.dominated < r.dominated;
            });
  return report;
}

ConsistencyReport pulse_crossover_consistency(
    const Ensemble& ensemble, const std::map<int, DominationClass>& domination) {
  ConsistencyReport report;
  const auto mean = mean_trajectory(ensemble);
  const int t_max = static_cast<int>(mean.size());

  for (int role = 0; role < 2; ++role) {
    const int base = role == 0 ? 0 : kStrategies;
    for (int sj = 1; sj <= kStrategies; ++sj) {
      for (int si = 1; si <= kStrategies; ++si) {
        const int j = base + sj, i = base + si;
        if (i == j) continue;
        if (domination.at(j) != DominationClass::DMinus ||
            domination.at(i) != DominationClass::DPlus)
          continue;

        // Maximal initial interval with positive ensemble-mean surplus; both
        // accumulations start at zero, so the curves start equal.
        int pulse_end = 0;
        while (pulse_end < t_max &&
               mean[pulse_end][j - 1] - mean[pulse_end][i - 1] > 0.0)
          ++pulse_end;
        if (pulse_end == 0) continue;
        ++report.pairs_checked;

        AccumulatedCurve ci = accumulated_curve(ensemble, i);
        AccumulatedCurve cj = accumulated_curve(ensemble, j);
        if (ci.values.back() <= cj.values.back()) continue;  // not yet overtaken

        auto crossings = crossovers(ci, cj, domination.at(i), domination.at(j), 0);
        if (crossings.empty()) {
          report.violations.push_back(unified_label(i) + " overtook " +
                                      unified_label(j) + " without a recorded crossover");
        } else if (crossings.front().tau <= pulse_end) {
          report.violations.push_back(
              "crossover of (" + unified_label(i) + ", " + unified_label(j) + ") at tau=" +
              std::to_string(crossings.front().tau) + " inside the pulse interval [1, " +
              std::to_string(pulse_end) + "]");
        }
      }
    }
  }
  return report;
}

}  // namespace gamelab
