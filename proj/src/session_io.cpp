#include "gamelab/session_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gamelab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.push_back("");
  return out;
}

long parse_int(const std::string& s, const std::string& context) {
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(context + ": not an integer: '" + s + "'");
  }
}

double parse_double(const std::string& s, const std::string& context) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(context + ": not a number: '" + s + "'");
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

// Sessions keyed by id; validates uniqueness and contiguity from round 1.
Ensemble assemble(std::map<int, std::map<int, MixedProfile>>& by_session,
                  Origin origin, const std::string& path) {
  Ensemble ensemble;
  for (auto& [sid, rounds] : by_session) {
    SessionSeries series;
    series.session_id = sid;
    series.origin = origin;
    int expected = 1;
    for (auto& [round, profile] : rounds) {
      if (round != expected)
        throw std::runtime_error(path + ": session " + std::to_string(sid) +
                                 " rounds are not contiguous from 1 (expected " +
                                 std::to_string(expected) + ", found " +
                                 std::to_string(round) + ")");
      profile.validate(1e-9);
      series.profiles.push_back(profile);
      ++expected;
    }
    ensemble.push_back(std::move(series));
  }
  return ensemble;
}

constexpr const char* kPlaysHeader = "session,round,x_strategy,y_strategy";
constexpr const char* kTrajectoryHeader =
    "session,round,rx1,rx2,rx3,rx4,rx5,rx6,rx7,rx8,ry1,ry2,ry3,ry4,ry5,ry6,ry7,ry8";

// p-values print with 3 fixed decimals, matching the reference pulse tables.
std::string format_p(double p) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.3f", p);
  return buf;
}

const char* kind_label(CrossKind kind) {
  switch (kind) {
    case CrossKind::ChiPlus: return "chi+";
    case CrossKind::ChiMinus: return "chi-";
    case CrossKind::ChiBothDominated: return "chi0";
  }
  return "?";
}

}  // namespace

std::string format_number(double v) {
  double r = std::round(v * 10000.0) / 10000.0;
  if (r == 0.0) r = 0.0;  // normalize -0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", r);
  std::string s(buf);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::string block_label(int t0, int t1) {
  return std::to_string(t0) + "-" + std::to_string(t1);
}

Ensemble read_plays(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kPlaysHeader)
    throw std::runtime_error(path + ": expected header '" + std::string(kPlaysHeader) + "'");

  std::map<int, std::map<int, MixedProfile>> by_session;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string at = path + ":" + std::to_string(line_no);
    auto fields = split(line, ',');
    if (fields.size() != 4)
      throw std::runtime_error(at + ": expected 4 fields, found " +
                               std::to_string(fields.size()));
    PlayRecord rec;
    rec.session = static_cast<int>(parse_int(fields[0], at));
    rec.round = static_cast<int>(parse_int(fields[1], at));
    rec.x_strategy = static_cast<int>(parse_int(fields[2], at));
    rec.y_strategy = static_cast<int>(parse_int(fields[3], at));
    if (rec.x_strategy < 1 || rec.x_strategy > 8 || rec.y_strategy < 1 || rec.y_strategy > 8)
      throw std::runtime_error(at + ": strategy out of 1..8");
    auto& session = by_session[rec.session];
    if (!session.emplace(rec.round, pure_profile(rec.x_strategy, rec.y_strategy)).second)
      throw std::runtime_error(at + ": duplicate (session " + std::to_string(rec.session) +
                               ", round " + std::to_string(rec.round) + ")");
  }
  return assemble(by_session, Origin::Experimental, path);
}

void write_trajectories(const Ensemble& ensemble, const std::string& path) {
  auto out = open_out(path);
  out << kTrajectoryHeader << "\n";
  char buf[32];
  for (const SessionSeries& series : ensemble) {
    for (int t = 1; t <= series.rounds(); ++t) {
      out << series.session_id << ',' << t;
      const Vec16 v = series.profiles[t - 1].concat();
      for (double p : v) {
        std::snprintf(buf, sizeof(buf), "%.9g", p);
        out << ',' << buf;
      }
      out << '\n';
    }
  }
}

Ensemble read_trajectories(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryHeader)
    throw std::runtime_error(path + ": expected header '" +
                             std::string(kTrajectoryHeader) + "'");

  std::map<int, std::map<int, MixedProfile>> by_session;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string at = path + ":" + std::to_string(line_no);
    auto fields = split(line, ',');
    if (fields.size() != 18)
      throw std::runtime_error(at + ": expected 18 fields, found " +
                               std::to_string(fields.size()));
    const int session = static_cast<int>(parse_int(fields[0], at));
    const int round = static_cast<int>(parse_int(fields[1], at));
    MixedProfile p;
    for (int i = 0; i < 8; ++i) p.x[i] = parse_double(fields[2 + i], at);
    for (int i = 0; i < 8; ++i) p.y[i] = parse_double(fields[10 + i], at);
    // Re-validate the simplex invariants before normalizing away print rounding.
    for (double* side : {p.x.data(), p.y.data()}) {
      double sum = 0.0;
      for (int i = 0; i < 8; ++i) {
        if (side[i] < 0.0)
          throw std::runtime_error(at + ": negative probability in session " +
                                   std::to_string(session) + ", round " +
                                   std::to_string(round));
        sum += side[i];
      }
      if (std::abs(sum - 1.0) > 1e-6)
        throw std::runtime_error(at + ": probabilities sum to " + std::to_string(sum) +
                                 " in session " + std::to_string(session) + ", round " +
                                 std::to_string(round));
      for (int i = 0; i < 8; ++i) side[i] /= sum;
    }
    if (!by_session[session].emplace(round, p).second)
      throw std::runtime_error(at + ": duplicate (session " + std::to_string(session) +
                               ", round " + std::to_string(round) + ")");
  }
  return assemble(by_session, Origin::Simulated, path);
}

void write_report(const PulseReport& report, const std::string& path, ReportFormat format) {
  auto out = open_out(path);
  if (format == ReportFormat::Tsv) {
    out << "treatment\tdominated\tdomination\tblock\tp\tpsi\tn\n";
    for (const PulseResult& r : report.rows) {
      out << report.treatment << '\t' << unified_label(r.dominated) << '\t'
          << unified_label(r.domination) << '\t' << block_label(r.t0, r.t1) << '\t'
          << format_p(r.p_value) << '\t' << format_number(r.psi) << '\t' << r.n
          << '\n';
    }
    return;
  }
  ordered_json doc;
  doc["treatment"] = report.treatment;
  doc["rows"] = json::array();
  for (const PulseResult& r : report.rows) {
    doc["rows"].push_back({{"treatment", report.treatment},
                           {"dominated", unified_label(r.dominated)},
                           {"domination", unified_label(r.domination)},
                           {"block", block_label(r.t0, r.t1)},
                           {"p", std::stod(format_p(r.p_value))},
                           {"psi", std::stod(format_number(r.psi))},
                           {"n", r.n}});
  }
  out << doc.dump(2) << '\n';
}

void write_report(const CrossoverReport& report, const std::string& path,
                  ReportFormat format) {
  auto out = open_out(path);
  if (format == ReportFormat::Tsv) {
    out << "treatment\tdomination\tdominated\ttau\tkind\n";
    for (const CrossoverRow& r : report.rows) {
      out << report.treatment << '\t' << unified_label(r.domination) << '\t'
          << unified_label(r.dominated) << '\t' << r.tau << '\t' << kind_label(r.kind)
          << '\n';
    }
    return;
  }
  ordered_json doc;
  doc["treatment"] = report.treatment;
  doc["rows"] = json::array();
  for (const CrossoverRow& r : report.rows) {
    doc["rows"].push_back({{"treatment", report.treatment},
                           {"domination", unified_label(r.domination)},
                           {"dominated", unified_label(r.dominated)},
                           {"tau", r.tau},
                           {"kind", kind_label(r.kind)}});
  }
  out << doc.dump(2) << '\n';
}

void write_spectrum(const Spectrum& spectrum, const std::string& path,
                    ReportFormat format) {
  auto out = open_out(path);
  if (format == ReportFormat::Tsv) {
    out << "x,m,n,value\n";
    for (const SpectrumEntry& e : spectrum.entries)
      out << e.x << ',' << e.m << ',' << e.n << ',' << format_number(e.value) << '\n';
    return;
  }
  ordered_json doc;
  doc["normalization"] = spectrum.normalization;
  doc["degenerate"] = spectrum.degenerate;
  doc["entries"] = json::array();
  for (const SpectrumEntry& e : spectrum.entries)
    doc["entries"].push_back(
        {{"x", e.x}, {"m", e.m}, {"n", e.n}, {"value", std::stod(format_number(e.value))}});
  out << doc.dump(2) << '\n';
}

}  // namespace gamelab
