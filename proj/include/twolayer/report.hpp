#pragma once

// Surface CSV export and solve reports.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "twolayer/convergence.hpp"
#include "twolayer/network.hpp"
#include "twolayer/oracle.hpp"
#include "twolayer/table.hpp"

namespace twolayer {

inline constexpr std::string_view kSolverName = "twolayer-dp";
inline constexpr std::string_view kVersion = "0.1.0";

/// %.12g; negative zero prints as 0.
inline std::string format_g12(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Writes `x_budget,y_budget,value`, one row per cell in row-major order,
/// LF line endings. Returns the number of bytes written.
inline std::size_t export_surface(const ValueTable& table, std::ostream& sink) {
  std::string buf = "x_budget,y_budget,value\n";
  std::size_t bytes = 0;
  auto flush = [&] {
    sink.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!sink) throw Error(ErrorKind::SinkFailure, "could not write surface");
    bytes += buf.size();
    buf.clear();
  };
  const auto xs = table.x_mesh().points();
  const auto ys = table.y_mesh().points();
  std::vector<std::string> ylabels;
  for (double y : ys) ylabels.push_back(format_g12(y));
  for (std::size_t a = 0; a < table.rows(); ++a) {
    const std::string xlabel = format_g12(xs[a]);
    for (std::size_t b = 0; b < table.cols(); ++b) {
      buf += xlabel;
      buf += ',';
      buf += ylabels[b];
      buf += ',';
      buf += format_g12(table(a, b));
      buf += '\n';
    }
    if (buf.size() > (1u << 16)) flush();
  }
  flush();
  sink.flush();
  if (!sink) throw Error(ErrorKind::SinkFailure, "could not flush surface");
  return bytes;
}

struct SolveReport {
  Objective objective = Objective::Expected;
  double epsilon = 0.0;
  BudgetPair budgets;
  std::size_t mesh_x = 0;
  std::size_t mesh_y = 0;
  double value = 0.0;
  Allocation allocation;
  double slack_x = 0.0;
  double slack_y = 0.0;
  double duration_ms = 0.0;
};

/// Stable field order so reports can be diffed. Allocation lines follow the
/// network's scenario order.
inline std::string render_report(const SolveReport& r, const SensorNetwork& net) {
  std::string out;
  auto field = [&](std::string_view key, const std::string& value) {
    out += key;
    out += ": ";
    out += value;
    out += '\n';
  };
  field("solver", std::string(kSolverName) + " " + std::string(kVersion));
  field("objective", std::string(to_string(r.objective)));
  field("epsilon", format_g12(r.epsilon));
  field("budget_x", format_g12(r.budgets.inner));
  field("budget_y", format_g12(r.budgets.outer));
  field("mesh", std::to_string(r.mesh_x) + "x" + std::to_string(r.mesh_y));
  field("value", format_g12(r.value));
  field("slack_x", format_g12(r.slack_x));
  field("slack_y", format_g12(r.slack_y));
  field("duration_ms", format_g12(r.duration_ms));
  for (const auto& s : net.inner) field("inner " + s.id, format_g12(r.allocation.inner.at(s.id)));
  for (const auto& o : net.outer) field("outer " + o.id, format_g12(r.allocation.outer.at(o.id)));
  return out;
}

inline std::size_t export_convergence(const ConvergenceReport& report, std::ostream& sink) {
  std::string buf = "epsilon,value,delta,bound\n";
  for (const auto& row : report.rows) {
    buf += format_g12(row.epsilon) + "," + format_g12(row.value) + "," + format_g12(row.delta) + "," +
           format_g12(row.bound) + "\n";
  }
  sink.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!sink) throw Error(ErrorKind::SinkFailure, "could not write convergence report");
  return buf.size();
}

}  // namespace twolayer
