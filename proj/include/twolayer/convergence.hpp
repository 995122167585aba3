#pragma once

// Discretization error bound and mesh-refinement studies.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <vector>

#include "twolayer/dp.hpp"
#include "twolayer/minimax.hpp"
#include "twolayer/oracle.hpp"

namespace twolayer {

struct LipschitzEstimate {
  /// per_pair[i][k]: constant for inner i and its k-th outer neighbor.
  std::vector<std::vector<double>> per_pair;
  double global = 0.0;
};

/// L_ij = F_j * sqrt(s_i^2 + s_j^2) with s the steepest curve slopes: the
/// pair objective's partial derivatives are bounded by F_j s_i and F_j s_j.
/// `unit_flow` uses F_j = 1, matching the adaptive-adversary tables.
inline LipschitzEstimate lipschitz_estimate(const SensorNetwork& net, bool unit_flow = false) {
  const Topology topo(net);
  LipschitzEstimate est;
  for (std::size_t i = 0; i < topo.branches.size(); ++i) {
    const double s_inner = net.inner[i].curve.max_slope();
    auto& row = est.per_pair.emplace_back();
    for (std::size_t j : topo.branches[i]) {
      const double flow = unit_flow ? 1.0 : net.outer[j].flow;
      const double s_outer = net.outer[j].curve.max_slope();
      row.push_back(flow * std::hypot(s_inner, s_outer));
      est.global = std::max(est.global, row.back());
    }
  }
  return est;
}

/// 2 sqrt(2) |I| |J| epsilon L.
inline double error_bound(double epsilon, std::size_t inner_count, std::size_t outer_count, double lipschitz) {
  return 2.0 * std::sqrt(2.0) * static_cast<double>(inner_count) * static_cast<double>(outer_count) * epsilon *
         lipschitz;
}

struct ConvergenceRow {
  double epsilon = 0.0;
  double value = 0.0;
  double delta = 0.0;  // value minus the previous (coarser) level; 0 for the first
  double bound = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;

  double finest_value() const { return rows.back().value; }

  /// Values never drop as the mesh is refined (nested meshes).
  bool nondecreasing(double tol = 1e-9) const {
    for (std::size_t k = 1; k < rows.size(); ++k) {
      if (rows[k].value < rows[k - 1].value - tol) return false;
    }
    return true;
  }

  /// Every gap to the finest value stays within that level's bound.
  bool within_bounds(double tol = 1e-9) const {
    return std::all_of(rows.begin(), rows.end(), [&](const ConvergenceRow& r) {
      return finest_value() - r.value <= r.bound + tol;
    });
  }
};

/// Solves at epsilon0, epsilon0 / 2, ... (halvings + 1 levels) at the full
/// budgets. The finest level stands in for the continuous optimum.
inline ConvergenceReport refinement_study(const SensorNetwork& net, const BudgetPair& budgets, double epsilon0,
                                          std::size_t halvings, Objective objective) {
  // fail early if the finest level cannot mesh the budgets
  const double finest = epsilon0 / std::ldexp(1.0, static_cast<int>(halvings));
  make_mesh(budgets.inner, finest);
  make_mesh(budgets.outer, finest);

  const double lipschitz = lipschitz_estimate(net, objective == Objective::Minimax).global;
  ConvergenceReport report;
  double epsilon = epsilon0;
  for (std::size_t level = 0; level <= halvings; ++level, epsilon /= 2.0) {
    const double value = objective == Objective::Expected ? solve_expected(net, budgets, epsilon).value
                                                          : solve_minimax(net, budgets, epsilon).value;
    const double delta = report.rows.empty() ? 0.0 : value - report.rows.back().value;
    report.rows.push_back({epsilon, value, delta, error_bound(epsilon, net.inner.size(), net.outer.size(), lipschitz)});
  }
  return report;
}

}  // namespace twolayer
