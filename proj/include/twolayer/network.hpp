#pragma once

// Two-layer sensor topology: inner sensors back up disjoint groups of outer
// sensors; contraband flow arrives at the outer sensors.

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "twolayer/curve.hpp"
#include "twolayer/error.hpp"

namespace twolayer {

struct InnerSensor {
  std::string id;
  PwlCurve curve;
  /// N(i): outer sensor ids backed up by this sensor, in processing order.
  std::vector<std::string> adjacent;
};

struct OuterSensor {
  std::string id;
  PwlCurve curve;
  double flow = 0.0;
};

/// Sensors are kept in scenario order; every solver iterates in that order.
struct SensorNetwork {
  std::vector<InnerSensor> inner;
  std::vector<OuterSensor> outer;

  std::optional<std::size_t> inner_index(const std::string& id) const {
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i].id == id) return i;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> outer_index(const std::string& id) const {
    for (std::size_t j = 0; j < outer.size(); ++j) {
      if (outer[j].id == id) return j;
    }
    return std::nullopt;
  }

  double total_flow() const {
    double total = 0.0;
    for (const auto& o : outer) total += o.flow;
    return total;
  }
};

struct BudgetPair {
  double inner = 0.0;  // X
  double outer = 0.0;  // Y
};

/// Per-sensor budgets keyed by sensor id.
struct Allocation {
  std::map<std::string, double> inner;
  std::map<std::string, double> outer;

  double inner_total() const {
    double s = 0.0;
    for (const auto& [id, x] : inner) s += x;
    return s;
  }
  double outer_total() const {
    double s = 0.0;
    for (const auto& [id, y] : outer) s += y;
    return s;
  }
};

inline constexpr double kBudgetTolerance = 1e-9;

enum class ViolationRule {
  NoInnerSensors,
  DuplicateId,
  EmptyAdjacency,
  UnknownOuter,
  OverlappingAdjacency,
  UnassignedOuter,
  NegativeFlow,
  NonFiniteFlow,
};

inline std::string_view to_string(ViolationRule rule) {
  switch (rule) {
    case ViolationRule::NoInnerSensors: return "NoInnerSensors";
    case ViolationRule::DuplicateId: return "DuplicateId";
    case ViolationRule::EmptyAdjacency: return "EmptyAdjacency";
    case ViolationRule::UnknownOuter: return "UnknownOuter";
    case ViolationRule::OverlappingAdjacency: return "OverlappingAdjacency";
    case ViolationRule::UnassignedOuter: return "UnassignedOuter";
    case ViolationRule::NegativeFlow: return "NegativeFlow";
    case ViolationRule::NonFiniteFlow: return "NonFiniteFlow";
  }
  return "Unknown";
}

struct Violation {
  ViolationRule rule;
  std::string sensor_id;

  std::string describe() const { return std::string(to_string(rule)) + "(" + sensor_id + ")"; }
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty result iff the network is well formed. Violations are reported in
/// scenario order.
inline std::vector<Violation> validate_network(const SensorNetwork& net) {
  std::vector<Violation> out;
  if (net.inner.empty()) out.push_back({ViolationRule::NoInnerSensors, ""});

  std::unordered_set<std::string> seen;
  for (const auto& s : net.inner) {
    if (!seen.insert("i:" + s.id).second) out.push_back({ViolationRule::DuplicateId, s.id});
  }
  std::unordered_map<std::string, int> owners;
  for (const auto& o : net.outer) {
    if (!seen.insert("o:" + o.id).second) out.push_back({ViolationRule::DuplicateId, o.id});
    owners.emplace(o.id, 0);
  }

  for (const auto& s : net.inner) {
    if (s.adjacent.empty()) out.push_back({ViolationRule::EmptyAdjacency, s.id});
    for (const auto& j : s.adjacent) {
      auto it = owners.find(j);
      if (it == owners.end()) {
        out.push_back({ViolationRule::UnknownOuter, j});
      } else if (++it->second == 2) {
        out.push_back({ViolationRule::OverlappingAdjacency, j});
      }
    }
  }
  for (const auto& o : net.outer) {
    if (owners[o.id] == 0) out.push_back({ViolationRule::UnassignedOuter, o.id});
    if (!std::isfinite(o.flow)) {
      out.push_back({ViolationRule::NonFiniteFlow, o.id});
    } else if (o.flow < 0.0) {
      out.push_back({ViolationRule::NegativeFlow, o.id});
    }
  }
  return out;
}

inline void require_valid(const SensorNetwork& net) {
  const auto violations = validate_network(net);
  if (violations.empty()) return;
  std::string msg;
  for (const auto& v : violations) {
    if (!msg.empty()) msg += ", ";
    msg += v.describe();
  }
  throw Error(ErrorKind::InvalidNetwork, msg);
}

/// Index view of a validated network: branches[i] lists the outer indices of
/// N(i) in adjacency order.
struct Topology {
  std::vector<std::vector<std::size_t>> branches;

  explicit Topology(const SensorNetwork& net) {
    require_valid(net);
    branches.reserve(net.inner.size());
    for (const auto& s : net.inner) {
      auto& branch = branches.emplace_back();
      for (const auto& j : s.adjacent) branch.push_back(*net.outer_index(j));
    }
  }

  std::size_t path_count() const {
    std::size_t n = 0;
    for (const auto& b : branches) n += b.size();
    return n;
  }
};

namespace detail {

inline PwlCurve example_inner_curve(double domain) {
  return curve_from_lines({{0.2, 0.0}, {0.1, 0.4}}, domain);
}

inline SensorNetwork example_network(const std::vector<double>& flows, double domain) {
  SensorNetwork net;
  const std::vector<std::vector<std::string>> groups{
      {"1", "2", "3"}, {"4", "5"}, {"6", "7"}, {"8", "9"}};
  for (std::size_t i = 0; i < groups.size(); ++i) {
    net.inner.push_back({std::to_string(i + 1), example_inner_curve(domain), groups[i]});
  }
  for (std::size_t j = 0; j < 9; ++j) {
    PwlCurve curve = j == 0 ? curve_from_lines({{0.3, 0.0}, {0.1, 0.3}, {0.05, 0.5}}, domain)
                            : curve_from_lines({{0.3, 0.0}, {0.1, 0.3}}, domain);
    net.outer.push_back({std::to_string(j + 1), std::move(curve), flows[j]});
  }
  return net;
}

}  // namespace detail

/// Default curve domain of the bundled examples; wide enough for the
/// 201x201 adaptive surface at step 0.05 and the 101x102 expected surface.
inline constexpr double kExampleDomain = 20.0;

/// Four inner sensors backing outer groups {1,2,3}, {4,5}, {6,7}, {8,9};
/// unit flow everywhere.
inline SensorNetwork build_example_8_1(double domain = kExampleDomain) {
  return detail::example_network(std::vector<double>(9, 1.0), domain);
}

/// Same as build_example_8_1 but outer sensors 1 and 9 carry 10 units.
inline SensorNetwork build_example_8_2(double domain = kExampleDomain) {
  return detail::example_network({10, 1, 1, 1, 1, 1, 1, 1, 10}, domain);
}

}  // namespace twolayer
