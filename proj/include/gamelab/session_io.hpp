#pragma once

#include <string>

#include "gamelab/dynamics.hpp"
#include "gamelab/measures.hpp"

namespace gamelab {

enum class ReportFormat { Tsv, Json };

struct PlayRecord {
  int session = 0;
  int round = 0;
  int x_strategy = 0;  // 1..8
  int y_strategy = 0;
};

/// Play-record CSV (`session,round,x_strategy,y_strategy`): each record becomes
/// a vertex profile, sessions become experimental SessionSeries. Malformed
/// rows, out-of-range strategies, duplicate rounds and round gaps are reported
/// with their line numbers.
Ensemble read_plays(const std::string& path);

/// Trajectory CSV (`session,round,rx1..rx8,ry1..ry8`, 9 significant digits).
void write_trajectories(const Ensemble& ensemble, const std::string& path);
Ensemble read_trajectories(const std::string& path);

/// Report serialization with stable column order; numbers rounded to 4
/// decimals with trailing zeros trimmed, mirroring the reference tables.
void write_report(const PulseReport& report, const std::string& path, ReportFormat format);
void write_report(const CrossoverReport& report, const std::string& path, ReportFormat format);
void write_spectrum(const Spectrum& spectrum, const std::string& path, ReportFormat format);

/// "0.007", "17", "35.04": fixed 4-decimal rounding, trimmed.
std::string format_number(double v);

/// Pulse block label, e.g. "11-20".
std::string block_label(int t0, int t1);

}  // namespace gamelab
