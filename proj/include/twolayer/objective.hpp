#pragma once

// Direct evaluation of both objectives for a concrete allocation.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twolayer/curve.hpp"
#include "twolayer/network.hpp"

namespace twolayer {

/// Probability that a unit on path (j -> i) is caught at either layer.
inline double path_rate(double inner_rate, double outer_rate) {
  return outer_rate + inner_rate * (1.0 - outer_rate);
}

struct PathDetection {
  std::string inner_id;
  std::string outer_id;
  double rate = 0.0;
};

/// Expected captured flow given per-sensor detection rates (indexed like
/// net.inner / net.outer). Sums in scenario order.
inline double expected_from_rates(const SensorNetwork& net, const Topology& topo,
                                  std::span<const double> inner_rates,
                                  std::span<const double> outer_rates) {
  double total = 0.0;
  for (std::size_t i = 0; i < topo.branches.size(); ++i) {
    double caught_outside = 0.0;
    double missed_outside = 0.0;
    for (std::size_t j : topo.branches[i]) {
      const double f = net.outer[j].flow;
      caught_outside += f * outer_rates[j];
      missed_outside += f * (1.0 - outer_rates[j]);
    }
    total += caught_outside + inner_rates[i] * missed_outside;
  }
  return total;
}

/// Smallest path detection rate; flows do not enter.
inline double minimax_from_rates(const Topology& topo, std::span<const double> inner_rates,
                                 std::span<const double> outer_rates) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < topo.branches.size(); ++i) {
    for (std::size_t j : topo.branches[i]) {
      worst = std::min(worst, path_rate(inner_rates[i], outer_rates[j]));
    }
  }
  return worst;
}

namespace detail {

struct Rates {
  std::vector<double> inner;
  std::vector<double> outer;
};

inline Rates allocation_rates(const SensorNetwork& net, const Allocation& alloc,
                              const std::optional<BudgetPair>& budgets) {
  for (const auto& [id, x] : alloc.inner) {
    if (!net.inner_index(id)) throw Error(ErrorKind::InvalidArgument, "unknown inner sensor " + id);
  }
  for (const auto& [id, y] : alloc.outer) {
    if (!net.outer_index(id)) throw Error(ErrorKind::InvalidArgument, "unknown outer sensor " + id);
  }
  Rates rates;
  double x_total = 0.0;
  double y_total = 0.0;
  for (const auto& s : net.inner) {
    auto it = alloc.inner.find(s.id);
    if (it == alloc.inner.end()) throw Error(ErrorKind::MissingSensorEntry, "inner sensor " + s.id);
    if (!(it->second >= 0.0)) {
      throw Error(ErrorKind::InfeasibleAllocation, "negative budget for inner sensor " + s.id);
    }
    x_total += it->second;
    rates.inner.push_back(s.curve(it->second));
  }
  for (const auto& o : net.outer) {
    auto it = alloc.outer.find(o.id);
    if (it == alloc.outer.end()) throw Error(ErrorKind::MissingSensorEntry, "outer sensor " + o.id);
    if (!(it->second >= 0.0)) {
      throw Error(ErrorKind::InfeasibleAllocation, "negative budget for outer sensor " + o.id);
    }
    y_total += it->second;
    rates.outer.push_back(o.curve(it->second));
  }
  if (budgets) {
    if (x_total > budgets->inner + kBudgetTolerance) {
      throw Error(ErrorKind::InfeasibleAllocation, "inner allocation " + std::to_string(x_total) +
                                                       " exceeds budget " + std::to_string(budgets->inner));
    }
    if (y_total > budgets->outer + kBudgetTolerance) {
      throw Error(ErrorKind::InfeasibleAllocation, "outer allocation " + std::to_string(y_total) +
                                                       " exceeds budget " + std::to_string(budgets->outer));
    }
  }
  return rates;
}

}  // namespace detail

/// Expected captured flow of `alloc`. When budgets are given, the allocation
/// must respect them (within kBudgetTolerance).
inline double eval_expected(const SensorNetwork& net, const Allocation& alloc,
                            const std::optional<BudgetPair>& budgets = std::nullopt) {
  const Topology topo(net);
  const auto rates = detail::allocation_rates(net, alloc, budgets);
  return expected_from_rates(net, topo, rates.inner, rates.outer);
}

/// Worst-case path detection rate of `alloc`.
inline double eval_minimax(const SensorNetwork& net, const Allocation& alloc,
                           const std::optional<BudgetPair>& budgets = std::nullopt) {
  const Topology topo(net);
  const auto rates = detail::allocation_rates(net, alloc, budgets);
  return minimax_from_rates(topo, rates.inner, rates.outer);
}

/// Every path's detection rate, in scenario order.
inline std::vector<PathDetection> path_detections(const SensorNetwork& net, const Allocation& alloc) {
  const Topology topo(net);
  const auto rates = detail::allocation_rates(net, alloc, std::nullopt);
  std::vector<PathDetection> out;
  for (std::size_t i = 0; i < topo.branches.size(); ++i) {
    for (std::size_t j : topo.branches[i]) {
      out.push_back({net.inner[i].id, net.outer[j].id, path_rate(rates.inner[i], rates.outer[j])});
    }
  }
  return out;
}

struct Gradient {
  double d_inner = 0.0;
  double d_outer = 0.0;
};

/// Gradient of F * (D_y(y) + D_x(x) (1 - D_y(y))) for one (inner, outer)
/// pair. Undefined (AtBreakpoint) on interior curve kinks.
inline Gradient pair_gradient(const PwlCurve& inner_curve, const PwlCurve& outer_curve, double flow,
                              double x, double y) {
  const double c_inner = inner_curve.slope_at(x);
  const double c_outer = outer_curve.slope_at(y);
  return {c_inner * flow * (1.0 - outer_curve(y)), c_outer * flow * (1.0 - inner_curve(x))};
}

}  // namespace twolayer
