#pragma once

// Line-oriented scenario files.
//
//   # comment
//   name: example
//   epsilon: 0.1
//   budget_x: 1
//   budget_y: 1
//   objective: expected          (or minimax; optional)
//
//   inner: <id>
//     adjacent: [<outer id>, ...]
//     domain_max: 20
//     lines: [[slope, intercept], ...]
//   outer: <id>
//     flow: 1
//     breakpoints: [[budget, value], ...]
//
// Top-level keys start at column 0; sensor fields are indented. A curve is
// given either as `lines` (needs `domain_max`) or as `breakpoints` (domain is
// the last budget). Unknown keys are rejected.

#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "twolayer/network.hpp"
#include "twolayer/oracle.hpp"
#include "twolayer/table.hpp"

namespace twolayer {

struct Scenario {
  std::string name;
  SensorNetwork network;
  BudgetPair budgets;
  double epsilon = 0.0;
  Objective objective = Objective::Expected;
  /// Non-fatal notes, e.g. curves that had to be capped at rate 1.
  std::vector<std::string> warnings;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline double parse_number(std::string_view text, std::string_view field, int line) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorKind::SyntaxError, "field '" + std::string(field) + "' expects a number, got '" +
                                            std::string(text) + "'",
                line);
  }
  return v;
}

inline std::vector<std::pair<double, double>> parse_pairs(std::string_view text, std::string_view field, int line) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    throw Error(ErrorKind::SyntaxError, "field '" + std::string(field) + "' is not a list of pairs", line);
  }
  std::vector<std::pair<double, double>> out;
  const bool shape_ok = doc.is_array() && std::all_of(doc.begin(), doc.end(), [](const auto& p) {
    return p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number();
  });
  if (!shape_ok) {
    throw Error(ErrorKind::SyntaxError,
                "field '" + std::string(field) + "' must look like [[a, b], ...]", line);
  }
  for (const auto& p : doc) out.emplace_back(p[0].template get<double>(), p[1].template get<double>());
  return out;
}

inline std::vector<std::string> parse_id_list(std::string_view text, std::string_view field, int line) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw Error(ErrorKind::SyntaxError, "field '" + std::string(field) + "' must look like [a, b, ...]", line);
  }
  text = trim(text.substr(1, text.size() - 2));
  std::vector<std::string> out;
  if (text.empty()) return out;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (item.empty()) {
      throw Error(ErrorKind::SyntaxError, "empty id in field '" + std::string(field) + "'", line);
    }
    out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

struct Field {
  std::string value;
  int line = 0;
};

struct Record {
  std::string kind;  // "inner" | "outer"
  std::string id;
  int line = 0;
  std::map<std::string, Field> fields;
};

inline PwlCurve build_curve(const Record& rec) {
  const auto lines = rec.fields.find("lines");
  const auto points = rec.fields.find("breakpoints");
  const auto domain = rec.fields.find("domain_max");
  if ((lines == rec.fields.end()) == (points == rec.fields.end())) {
    throw Error(ErrorKind::SyntaxError,
                rec.kind + " sensor " + rec.id + " needs exactly one of 'lines' or 'breakpoints'", rec.line);
  }
  try {
    if (lines != rec.fields.end()) {
      if (domain == rec.fields.end()) {
        throw Error(ErrorKind::SyntaxError, rec.kind + " sensor " + rec.id + " with 'lines' needs 'domain_max'",
                    rec.line);
      }
      std::vector<AffineLine> parsed;
      for (auto [s, c] : parse_pairs(lines->second.value, "lines", lines->second.line)) parsed.push_back({s, c});
      return PwlCurve::from_lines(parsed, parse_number(domain->second.value, "domain_max", domain->second.line));
    }
    std::vector<Breakpoint> parsed;
    for (auto [b, v] : parse_pairs(points->second.value, "breakpoints", points->second.line)) parsed.push_back({b, v});
    PwlCurve curve = PwlCurve::from_breakpoints(std::move(parsed));
    if (domain != rec.fields.end() &&
        parse_number(domain->second.value, "domain_max", domain->second.line) != curve.domain_max()) {
      throw Error(ErrorKind::SemanticError, "domain_max disagrees with the last breakpoint", domain->second.line);
    }
    return curve;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SyntaxError || e.kind() == ErrorKind::SemanticError) throw;
    throw Error(ErrorKind::SemanticError, rec.kind + " sensor " + rec.id + ": " + e.what(), rec.line);
  }
}

inline void require_fields(const Record& rec, std::initializer_list<const char*> allowed,
                           std::initializer_list<const char*> required) {
  for (const auto& [key, field] : rec.fields) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
      throw Error(ErrorKind::UnknownField, "'" + key + "' in " + rec.kind + " sensor " + rec.id, field.line);
    }
  }
  for (const char* key : required) {
    if (!rec.fields.count(key)) {
      throw Error(ErrorKind::SyntaxError, rec.kind + " sensor " + rec.id + " is missing '" + key + "'", rec.line);
    }
  }
}

}  // namespace detail

/// Parses and validates a scenario. Errors name the line and field.
inline Scenario parse_scenario(std::string_view text) {
  std::map<std::string, detail::Field> top;
  std::vector<detail::Record> records;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (detail::trim(line).empty()) continue;

    const bool indented = std::isspace(static_cast<unsigned char>(line.front()));
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorKind::SyntaxError, "expected 'key: value'", line_no);
    }
    const std::string key(detail::trim(line.substr(0, colon)));
    const std::string value(detail::trim(line.substr(colon + 1)));
    if (key.empty()) throw Error(ErrorKind::SyntaxError, "missing key", line_no);

    if (indented) {
      if (records.empty()) throw Error(ErrorKind::SyntaxError, "indented field '" + key + "' outside a sensor", line_no);
      if (!records.back().fields.emplace(key, detail::Field{value, line_no}).second) {
        throw Error(ErrorKind::SyntaxError, "duplicate field '" + key + "'", line_no);
      }
    } else if (key == "inner" || key == "outer") {
      if (value.empty()) throw Error(ErrorKind::SyntaxError, "sensor id missing", line_no);
      records.push_back({key, value, line_no, {}});
    } else if (key == "name" || key == "epsilon" || key == "budget_x" || key == "budget_y" || key == "objective") {
      if (!top.emplace(key, detail::Field{value, line_no}).second) {
        throw Error(ErrorKind::SyntaxError, "duplicate field '" + key + "'", line_no);
      }
    } else {
      throw Error(ErrorKind::UnknownField, "'" + key + "'", line_no);
    }
  }
  if (top.empty() && records.empty()) throw Error(ErrorKind::SyntaxError, "empty scenario", line_no);

  Scenario sc;
  for (const char* key : {"epsilon", "budget_x", "budget_y"}) {
    if (!top.count(key)) throw Error(ErrorKind::SyntaxError, std::string("missing '") + key + "'", line_no);
  }
  sc.name = top.count("name") ? top["name"].value : "";
  sc.epsilon = detail::parse_number(top["epsilon"].value, "epsilon", top["epsilon"].line);
  sc.budgets.inner = detail::parse_number(top["budget_x"].value, "budget_x", top["budget_x"].line);
  sc.budgets.outer = detail::parse_number(top["budget_y"].value, "budget_y", top["budget_y"].line);
  if (auto it = top.find("objective"); it != top.end()) {
    if (it->second.value == "expected") {
      sc.objective = Objective::Expected;
    } else if (it->second.value == "minimax") {
      sc.objective = Objective::Minimax;
    } else {
      throw Error(ErrorKind::SyntaxError, "objective must be 'expected' or 'minimax'", it->second.line);
    }
  }

  for (const auto& rec : records) {
    if (rec.kind == "inner") {
      detail::require_fields(rec, {"adjacent", "domain_max", "lines", "breakpoints"}, {"adjacent"});
      const auto& adj = rec.fields.at("adjacent");
      auto curve = detail::build_curve(rec);
      if (curve.clamped()) sc.warnings.push_back("inner sensor " + rec.id + ": curve clamped at rate 1");
      sc.network.inner.push_back({rec.id, std::move(curve), detail::parse_id_list(adj.value, "adjacent", adj.line)});
    } else {
      detail::require_fields(rec, {"flow", "domain_max", "lines", "breakpoints"}, {"flow"});
      const auto& flow = rec.fields.at("flow");
      auto curve = detail::build_curve(rec);
      if (curve.clamped()) sc.warnings.push_back("outer sensor " + rec.id + ": curve clamped at rate 1");
      sc.network.outer.push_back({rec.id, std::move(curve), detail::parse_number(flow.value, "flow", flow.line)});
    }
  }

  if (const auto violations = validate_network(sc.network); !violations.empty()) {
    std::string msg;
    for (const auto& v : violations) msg += (msg.empty() ? "" : ", ") + v.describe();
    throw Error(ErrorKind::SemanticError, msg);
  }
  make_mesh(sc.budgets.inner, sc.epsilon);
  make_mesh(sc.budgets.outer, sc.epsilon);
  return sc;
}

namespace detail {

inline std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string breakpoint_list(const PwlCurve& curve) {
  std::string out = "[";
  for (const auto& p : curve.breakpoints()) {
    if (out.size() > 1) out += ", ";
    out += "[" + exact(p.budget) + ", " + exact(p.value) + "]";
  }
  return out + "]";
}

}  // namespace detail

/// Canonical text form; curves are written as breakpoints with round-trip
/// precision.
inline std::string serialize_scenario(const Scenario& sc) {
  std::string out;
  if (!sc.name.empty()) out += "name: " + sc.name + "\n";
  out += "epsilon: " + detail::exact(sc.epsilon) + "\n";
  out += "budget_x: " + detail::exact(sc.budgets.inner) + "\n";
  out += "budget_y: " + detail::exact(sc.budgets.outer) + "\n";
  out += "objective: " + std::string(to_string(sc.objective)) + "\n";
  for (const auto& s : sc.network.inner) {
    out += "\ninner: " + s.id + "\n  adjacent: [";
    for (std::size_t k = 0; k < s.adjacent.size(); ++k) out += (k ? ", " : "") + s.adjacent[k];
    out += "]\n  breakpoints: " + detail::breakpoint_list(s.curve) + "\n";
  }
  for (const auto& o : sc.network.outer) {
    out += "\nouter: " + o.id + "\n  flow: " + detail::exact(o.flow) + "\n";
    out += "  breakpoints: " + detail::breakpoint_list(o.curve) + "\n";
  }
  return out;
}

}  // namespace twolayer
