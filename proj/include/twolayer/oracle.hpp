#pragma once

// Reference solvers for small instances: exhaustive mesh enumeration, and a
// hybrid that enumerates inner budgets and solves the outer stage exactly.
// Neither shares code with the table pipeline beyond meshes and scoring.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "twolayer/network.hpp"
#include "twolayer/objective.hpp"
#include "twolayer/table.hpp"

namespace twolayer {

enum class Objective { Expected, Minimax };

inline std::string_view to_string(Objective o) { return o == Objective::Expected ? "expected" : "minimax"; }

struct OracleResult {
  double value = 0.0;
  Allocation allocation;
};

inline constexpr double kDefaultOracleCap = 1e8;

namespace detail {

/// Number of nonnegative integer vectors of length `parts` with sum <= total,
/// i.e. C(total + parts, parts). Saturates at +inf-ish doubles.
inline double bounded_compositions(std::size_t total, std::size_t parts) {
  double c = 1.0;
  for (std::size_t k = 1; k <= parts; ++k) {
    c = c * static_cast<double>(total + k) / static_cast<double>(k);
  }
  return c;
}

/// Lexicographic odometer over integer vectors with sum <= total.
class BoundedCompositions {
 public:
  BoundedCompositions(std::size_t parts, std::size_t total) : v_(parts, 0), total_(total) {}

  const std::vector<std::size_t>& current() const { return v_; }

  bool next() {
    std::size_t prefix = std::accumulate(v_.begin(), v_.end(), std::size_t{0});
    for (std::size_t p = v_.size(); p-- > 0;) {
      prefix -= v_[p];
      if (prefix + v_[p] + 1 <= total_) {
        ++v_[p];
        std::fill(v_.begin() + static_cast<std::ptrdiff_t>(p) + 1, v_.end(), 0);
        return true;
      }
    }
    return false;
  }

 private:
  std::vector<std::size_t> v_;
  std::size_t total_;
};

inline std::vector<double> rate_column(const PwlCurve& curve, const Mesh& mesh) {
  std::vector<double> out(mesh.size());
  for (std::size_t k = 0; k < mesh.size(); ++k) out[k] = curve(mesh.at(k));
  return out;
}

inline void check_cap(double count, double cap) {
  if (count > cap) {
    throw Error(ErrorKind::EnumerationTooLarge,
                std::to_string(count) + " evaluations exceed the cap of " + std::to_string(cap));
  }
}

}  // namespace detail

/// Scores every mesh allocation with sum x <= X and sum y <= Y. Returns the
/// best value and the lexicographically smallest (x, then y) allocation
/// attaining it.
inline OracleResult grid_enumerate(const SensorNetwork& net, const BudgetPair& budgets, double epsilon,
                                   Objective objective, double cap = kDefaultOracleCap) {
  const Topology topo(net);
  const Mesh x_mesh = make_mesh(budgets.inner, epsilon);
  const Mesh y_mesh = make_mesh(budgets.outer, epsilon);
  const std::size_t nx = x_mesh.size() - 1;
  const std::size_t ny = y_mesh.size() - 1;
  detail::check_cap(detail::bounded_compositions(nx, net.inner.size()) *
                        detail::bounded_compositions(ny, net.outer.size()),
                    cap);

  std::vector<std::vector<double>> inner_table;
  std::vector<std::vector<double>> outer_table;
  for (const auto& s : net.inner) inner_table.push_back(detail::rate_column(s.curve, x_mesh));
  for (const auto& o : net.outer) outer_table.push_back(detail::rate_column(o.curve, y_mesh));

  std::vector<double> inner_rates(net.inner.size());
  std::vector<double> outer_rates(net.outer.size());
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_x;
  std::vector<std::size_t> best_y;

  detail::BoundedCompositions xs(net.inner.size(), nx);
  do {
    for (std::size_t i = 0; i < inner_rates.size(); ++i) inner_rates[i] = inner_table[i][xs.current()[i]];
    detail::BoundedCompositions ys(net.outer.size(), ny);
    do {
      for (std::size_t j = 0; j < outer_rates.size(); ++j) outer_rates[j] = outer_table[j][ys.current()[j]];
      const double v = objective == Objective::Expected
                           ? expected_from_rates(net, topo, inner_rates, outer_rates)
                           : minimax_from_rates(topo, inner_rates, outer_rates);
      if (v > best) {
        best = v;
        best_x = xs.current();
        best_y = ys.current();
      }
    } while (ys.next());
  } while (xs.next());

  OracleResult out{best, {}};
  for (std::size_t i = 0; i < net.inner.size(); ++i) out.allocation.inner[net.inner[i].id] = x_mesh.at(best_x[i]);
  for (std::size_t j = 0; j < net.outer.size(); ++j) out.allocation.outer[net.outer[j].id] = y_mesh.at(best_y[j]);
  return out;
}

struct GreedyResult {
  std::vector<double> amounts;
  double value = 0.0;  // sum of weight_j * D_j(amount_j)
};

/// Maximizes sum_j weight_j * D_j(y_j) subject to sum_j y_j <= budget,
/// y_j in [0, domain_j], for concave curves and nonnegative weights: pour the
/// budget onto curve segments in nonincreasing weighted-slope order. Ties go
/// to the earlier sensor.
inline GreedyResult greedy_concave_allocation(std::span<const PwlCurve* const> curves,
                                              std::span<const double> weights, double budget) {
  if (curves.size() != weights.size()) {
    throw Error(ErrorKind::InvalidArgument, "one weight per curve is required");
  }
  struct Piece {
    double gain;
    std::size_t sensor;
    double length;
  };
  std::vector<Piece> pieces;
  for (std::size_t j = 0; j < curves.size(); ++j) {
    if (weights[j] < 0.0) throw Error(ErrorKind::InvalidArgument, "weights must be nonnegative");
    for (const auto& seg : curves[j]->segments()) pieces.push_back({weights[j] * seg.slope, j, seg.length});
  }
  // stable: a curve's own segments keep their (nonincreasing-slope) order
  std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.gain > b.gain; });

  GreedyResult out{std::vector<double>(curves.size(), 0.0), 0.0};
  double remaining = budget;
  for (const auto& p : pieces) {
    if (remaining <= 0.0 || p.gain <= 0.0) break;
    const double amount = std::min(p.length, remaining);
    out.amounts[p.sensor] += amount;
    remaining -= amount;
  }
  for (std::size_t j = 0; j < curves.size(); ++j) {
    out.amounts[j] = std::min(out.amounts[j], curves[j]->domain_max());
    out.value += weights[j] * (*curves[j])(out.amounts[j]);
  }
  return out;
}

/// Enumerates inner allocations on the mesh; for each, the outer budget is
/// placed continuously and exactly by greedy_concave_allocation. Expected
/// objective only.
inline OracleResult hybrid_enumerate(const SensorNetwork& net, const BudgetPair& budgets, double epsilon,
                                     double cap = kDefaultOracleCap) {
  const Topology topo(net);
  const Mesh x_mesh = make_mesh(budgets.inner, epsilon);
  const std::size_t nx = x_mesh.size() - 1;
  detail::check_cap(detail::bounded_compositions(nx, net.inner.size()), cap);

  std::vector<std::vector<double>> inner_table;
  for (const auto& s : net.inner) inner_table.push_back(detail::rate_column(s.curve, x_mesh));
  std::vector<const PwlCurve*> outer_curves;
  for (const auto& o : net.outer) outer_curves.push_back(&o.curve);

  std::vector<double> inner_rates(net.inner.size());
  std::vector<double> weights(net.outer.size());
  std::vector<double> outer_rates(net.outer.size());
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_x;
  std::vector<double> best_y;

  detail::BoundedCompositions xs(net.inner.size(), nx);
  do {
    for (std::size_t i = 0; i < inner_rates.size(); ++i) {
      inner_rates[i] = inner_table[i][xs.current()[i]];
      for (std::size_t j : topo.branches[i]) weights[j] = net.outer[j].flow * (1.0 - inner_rates[i]);
    }
    const GreedyResult outer = greedy_concave_allocation(outer_curves, weights, budgets.outer);
    for (std::size_t j = 0; j < outer_rates.size(); ++j) outer_rates[j] = (*outer_curves[j])(outer.amounts[j]);
    const double v = expected_from_rates(net, topo, inner_rates, outer_rates);
    if (v > best) {
      best = v;
      best_x = xs.current();
      best_y = outer.amounts;
    }
  } while (xs.next());

  OracleResult out{best, {}};
  for (std::size_t i = 0; i < net.inner.size(); ++i) out.allocation.inner[net.inner[i].id] = x_mesh.at(best_x[i]);
  for (std::size_t j = 0; j < net.outer.size(); ++j) out.allocation.outer[net.outer[j].id] = best_y[j];
  return out;
}

}  // namespace twolayer
