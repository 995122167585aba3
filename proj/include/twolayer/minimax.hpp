#pragma once

// Adaptive-adversary variant: same table pipeline with unit flows, and the
// sum of subsystem values replaced by their minimum.

#include "twolayer/dp.hpp"

namespace twolayer {

/// values(a, b) = D_y + D_x (1 - D_y): the path detection rate.
inline ValueTable pair_table_minimax(const PwlCurve& inner_curve, const PwlCurve& outer_curve,
                                     const Mesh& x_mesh, const Mesh& y_mesh, PairTag tag = {}) {
  return ValueTable::pair(inner_curve, outer_curve, 1.0, x_mesh, y_mesh, tag);
}

inline ValueTable merge_outer_min(const ValueTable& left, const ValueTable& right) {
  return ValueTable::merge_outer<MinCombine>(left, right);
}

inline ValueTable merge_inner_min(const ValueTable& left, const ValueTable& right) {
  return ValueTable::merge_inner<MinCombine>(left, right);
}

/// Maximizes the worst path detection rate. Flows are ignored.
inline SolveResult solve_minimax(const SensorNetwork& net, const BudgetPair& budgets, double epsilon,
                                 const FoldOrder& order = {}) {
  return detail::solve_with<MinCombine>(net, budgets, epsilon, order, true);
}

inline ValueTable sweep_minimax(const SensorNetwork& net, const BudgetPair& max_budgets, double epsilon) {
  return solve_minimax(net, max_budgets, epsilon).table;
}

}  // namespace twolayer
