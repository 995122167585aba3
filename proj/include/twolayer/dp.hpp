#pragma once

// Table-composition dynamic program for the expected-capture objective:
// pair tables, sibling merges under each inner sensor, then branch merges.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "twolayer/network.hpp"
#include "twolayer/objective.hpp"
#include "twolayer/table.hpp"

namespace twolayer {

/// Order in which operands are folded. Empty members mean scenario order.
struct FoldOrder {
  /// Permutation of inner sensor indices.
  std::vector<std::size_t> branches;
  /// siblings[i]: permutation of N(i)'s outer indices (as in Topology).
  std::vector<std::vector<std::size_t>> siblings;
};

struct SolveResult {
  ValueTable table;
  Allocation allocation;
  double value = 0.0;
};

inline ValueTable pair_table(const PwlCurve& inner_curve, const PwlCurve& outer_curve, double flow,
                             const Mesh& x_mesh, const Mesh& y_mesh, PairTag tag = {}) {
  return ValueTable::pair(inner_curve, outer_curve, flow, x_mesh, y_mesh, tag);
}

inline ValueTable merge_outer(const ValueTable& left, const ValueTable& right) {
  return ValueTable::merge_outer<SumCombine>(left, right);
}

inline ValueTable merge_inner(const ValueTable& left, const ValueTable& right) {
  return ValueTable::merge_inner<SumCombine>(left, right);
}

namespace detail {

inline void check_permutation(const std::vector<std::size_t>& order, std::vector<std::size_t> expected,
                              const char* what) {
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::sort(expected.begin(), expected.end());
  if (sorted != expected) {
    throw Error(ErrorKind::InvalidArgument, std::string("fold order is not a permutation of ") + what);
  }
}

/// Left-folds sibling merges within each branch, then branch merges.
/// `unit_flow` replaces every F_j by 1 (adaptive-adversary tables).
template <class Combine>
ValueTable compose_table(const SensorNetwork& net, const Topology& topo, const Mesh& x_mesh,
                         const Mesh& y_mesh, const FoldOrder& order, bool unit_flow) {
  std::vector<std::size_t> branch_order = order.branches;
  if (branch_order.empty()) {
    branch_order.resize(topo.branches.size());
    std::iota(branch_order.begin(), branch_order.end(), std::size_t{0});
  }
  std::vector<std::size_t> all(topo.branches.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  check_permutation(branch_order, all, "inner sensors");
  if (!order.siblings.empty() && order.siblings.size() != topo.branches.size()) {
    throw Error(ErrorKind::InvalidArgument, "sibling order must list every branch");
  }

  std::optional<ValueTable> total;
  for (std::size_t i : branch_order) {
    std::vector<std::size_t> siblings = topo.branches[i];
    if (!order.siblings.empty() && !order.siblings[i].empty()) {
      check_permutation(order.siblings[i], siblings, "a branch's outer sensors");
      siblings = order.siblings[i];
    }
    std::optional<ValueTable> branch;
    for (std::size_t j : siblings) {
      const double flow = unit_flow ? 1.0 : net.outer[j].flow;
      ValueTable leaf = ValueTable::pair(net.inner[i].curve, net.outer[j].curve, flow, x_mesh, y_mesh, {i, j});
      branch = branch ? ValueTable::merge_outer<Combine>(*branch, leaf) : std::move(leaf);
    }
    total = total ? ValueTable::merge_inner<Combine>(*total, *branch) : std::move(*branch);
  }
  return std::move(*total);
}

inline Allocation to_allocation(const SensorNetwork& net, const ValueTable& table, std::size_t a,
                                std::size_t b) {
  const IndexAllocation idx = table.recover(a, b, net.inner.size(), net.outer.size());
  Allocation alloc;
  for (std::size_t i = 0; i < net.inner.size(); ++i) alloc.inner[net.inner[i].id] = table.x_mesh().at(idx.inner[i]);
  for (std::size_t j = 0; j < net.outer.size(); ++j) alloc.outer[net.outer[j].id] = table.y_mesh().at(idx.outer[j]);
  return alloc;
}

template <class Combine>
SolveResult solve_with(const SensorNetwork& net, const BudgetPair& budgets, double epsilon,
                       const FoldOrder& order, bool unit_flow) {
  const Topology topo(net);
  const Mesh x_mesh = make_mesh(budgets.inner, epsilon);
  const Mesh y_mesh = make_mesh(budgets.outer, epsilon);
  ValueTable table = compose_table<Combine>(net, topo, x_mesh, y_mesh, order, unit_flow);
  const std::size_t a = table.rows() - 1;
  const std::size_t b = table.cols() - 1;
  Allocation alloc = to_allocation(net, table, a, b);
  const double value = table(a, b);
  return {std::move(table), std::move(alloc), value};
}

}  // namespace detail

/// Recovers the allocation behind any cell of a table built by
/// solve_expected / solve_minimax / the sweeps for this network.
inline Allocation recover_allocation(const SensorNetwork& net, const ValueTable& table, std::size_t a,
                                     std::size_t b) {
  return detail::to_allocation(net, table, a, b);
}

/// Optimal expected captured flow for budgets (X, Y) on the epsilon mesh.
/// The returned table covers every budget pair up to (X, Y).
inline SolveResult solve_expected(const SensorNetwork& net, const BudgetPair& budgets, double epsilon,
                                  const FoldOrder& order = {}) {
  return detail::solve_with<SumCombine>(net, budgets, epsilon, order, false);
}

/// The whole expected-capture surface up to the given maxima.
inline ValueTable sweep_expected(const SensorNetwork& net, const BudgetPair& max_budgets, double epsilon) {
  return solve_expected(net, max_budgets, epsilon).table;
}

}  // namespace twolayer
