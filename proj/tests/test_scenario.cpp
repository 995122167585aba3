#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "test_support.hpp"
#include "twolayer/bundled.hpp"
#include "twolayer/dp.hpp"
#include "twolayer/minimax.hpp"
#include "twolayer/report.hpp"
#include "twolayer/scenario.hpp"

namespace twolayer {
namespace {

ErrorKind parse_error(std::string_view text) {
  try {
    parse_scenario(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "scenario parsed";
  return ErrorKind::InvalidArgument;
}

void expect_same_network(const SensorNetwork& a, const SensorNetwork& b) {
  ASSERT_EQ(a.inner.size(), b.inner.size());
  ASSERT_EQ(a.outer.size(), b.outer.size());
  for (std::size_t i = 0; i < a.inner.size(); ++i) {
    EXPECT_EQ(a.inner[i].id, b.inner[i].id);
    EXPECT_EQ(a.inner[i].adjacent, b.inner[i].adjacent);
    EXPECT_EQ(a.inner[i].curve.breakpoints(), b.inner[i].curve.breakpoints());
  }
  for (std::size_t j = 0; j < a.outer.size(); ++j) {
    EXPECT_EQ(a.outer[j].id, b.outer[j].id);
    EXPECT_EQ(a.outer[j].flow, b.outer[j].flow);
    EXPECT_EQ(a.outer[j].curve.breakpoints(), b.outer[j].curve.breakpoints());
  }
}

TEST(Scenario, BundledExamplesMatchBuilders) {
  const Scenario a = parse_scenario(*bundled_scenario("example_8_1"));
  EXPECT_EQ(a.name, "example_8_1");
  EXPECT_EQ(a.epsilon, 0.1);
  EXPECT_EQ(a.budgets.inner, 10.0);
  EXPECT_EQ(a.budgets.outer, 10.1);
  EXPECT_EQ(a.objective, Objective::Expected);
  // every example curve passes rate 1 before budget 20
  EXPECT_EQ(a.warnings.size(), 13u);
  expect_same_network(a.network, build_example_8_1());
  expect_same_network(parse_scenario(*bundled_scenario("example_8_2")).network, build_example_8_2());
  expect_same_network(parse_scenario(*bundled_scenario("two_branch_small")).network, testing::two_branch());
  EXPECT_FALSE(bundled_scenario("nope"));
}

TEST(Scenario, BundledTextMatchesFiles) {
  for (const char* name : {"example_8_1", "example_8_2", "two_branch_small"}) {
    std::ifstream in(std::string(TWOLAYER_SOURCE_DIR) + "/scenarios/" + name + ".scn", std::ios::binary);
    ASSERT_TRUE(in) << name;
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), *bundled_scenario(name)) << name;
  }
}

TEST(Scenario, Errors) {
  EXPECT_EQ(parse_error(""), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error("# only a comment\n"), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error("epsilon 0.1\n"), ErrorKind::SyntaxError);

  const std::string head = "epsilon: 0.5\nbudget_x: 1\nbudget_y: 1\n";
  const std::string pair =
      "inner: a\n  adjacent: [p]\n  breakpoints: [[0, 0], [1, 1]]\n"
      "outer: p\n  flow: 1\n  breakpoints: [[0, 0], [1, 1]]\n";
  EXPECT_NO_THROW(parse_scenario(head + pair));
  EXPECT_EQ(parse_error(head + "colour: blue\n" + pair), ErrorKind::UnknownField);
  EXPECT_EQ(parse_error(head + pair + "  colour: blue\n"), ErrorKind::UnknownField);
  EXPECT_EQ(parse_error("epsilon: 0.5\nbudget_x: 1\n" + pair), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error(head + "epsilon: 0.5\n" + pair), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error(head + pair + "inner: b\n  adjacent: [p]\n  breakpoints: [[0, 0], [1, 1]]\n"),
            ErrorKind::SemanticError);
  EXPECT_EQ(parse_error(head + pair + "outer: q\n  flow: -1\n  breakpoints: [[0, 0], [1, 1]]\n"),
            ErrorKind::SemanticError);
  // convex curve
  EXPECT_EQ(parse_error(head + "inner: a\n  adjacent: [p]\n  breakpoints: [[0, 0], [0.5, 0.1], [1, 1]]\n" +
                        "outer: p\n  flow: 1\n  breakpoints: [[0, 0], [1, 1]]\n"),
            ErrorKind::SemanticError);
  EXPECT_EQ(parse_error("epsilon: 0.3\nbudget_x: 1\nbudget_y: 1\n" + pair), ErrorKind::NonDivisibleBudget);
}

TEST(Scenario, ErrorsCarryLineNumbers) {
  try {
    parse_scenario("epsilon: 0.5\nbudget_x: 1\nbudget_y: 1\nbogus: 3\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownField);
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(Scenario, OverlapNamesTheSensor) {
  const std::string text =
      "epsilon: 0.5\nbudget_x: 1\nbudget_y: 1\n"
      "inner: a\n  adjacent: [p]\n  breakpoints: [[0, 0], [1, 1]]\n"
      "inner: b\n  adjacent: [p]\n  breakpoints: [[0, 0], [1, 1]]\n"
      "outer: p\n  flow: 1\n  breakpoints: [[0, 0], [1, 1]]\n";
  try {
    parse_scenario(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SemanticError);
    EXPECT_NE(std::string(e.what()).find("OverlappingAdjacency(p)"), std::string::npos) << e.what();
  }
}

TEST(Scenario, ClampedCurveWarns) {
  const Scenario sc = parse_scenario(
      "epsilon: 0.5\nbudget_x: 1\nbudget_y: 1\n"
      "inner: a\n  adjacent: [p]\n  domain_max: 1\n  lines: [[2, 0]]\n"
      "outer: p\n  flow: 1\n  breakpoints: [[0, 0], [1, 1]]\n");
  ASSERT_EQ(sc.warnings.size(), 1u);
  EXPECT_EQ(sc.network.inner[0].curve(1.0), 1.0);
  EXPECT_EQ(sc.network.inner[0].curve(0.5), 1.0);
}

TEST(Scenario, SerializeRoundTrip) {
  for (const char* name : {"example_8_1", "example_8_2", "two_branch_small"}) {
    const Scenario a = parse_scenario(*bundled_scenario(name));
    const std::string text = serialize_scenario(a);
    const Scenario b = parse_scenario(text);
    EXPECT_EQ(b.name, a.name);
    EXPECT_EQ(b.epsilon, a.epsilon);
    EXPECT_EQ(b.budgets.inner, a.budgets.inner);
    EXPECT_EQ(b.budgets.outer, a.budgets.outer);
    expect_same_network(a.network, b.network);
    EXPECT_EQ(serialize_scenario(b), text);
  }
}

TEST(ExportSurface, SingleCell) {
  const ValueTable t = sweep_expected(testing::single_pair(), {0, 0}, 0.5);
  std::ostringstream os;
  const std::size_t bytes = export_surface(t, os);
  EXPECT_EQ(os.str(), "x_budget,y_budget,value\n0,0,0\n");
  EXPECT_EQ(bytes, os.str().size());
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::size_t& lines) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  lines = 1;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lines;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

TEST(ExportSurface, ExampleSurfaces) {
  const SensorNetwork net = build_example_8_1();
  const ValueTable expected = sweep_expected(net, {10, 10.1}, 0.1);
  std::ostringstream os;
  export_surface(expected, os);
  std::size_t lines = 0;
  const auto rows = parse_csv(os.str(), lines);
  EXPECT_EQ(lines, 10303u);
  ASSERT_EQ(rows.size(), 10302u);
  for (std::size_t a = 0; a < expected.rows(); ++a) {
    for (std::size_t b = 0; b < expected.cols(); ++b) {
      const auto& r = rows[a * expected.cols() + b];
      ASSERT_EQ(r.size(), 3u);
      EXPECT_NEAR(r[0], expected.x_mesh().at(a), 1e-9);
      EXPECT_NEAR(r[1], expected.y_mesh().at(b), 1e-9);
      EXPECT_NEAR(r[2], expected(a, b), 1e-9);
    }
  }
  EXPECT_EQ(rows.back()[0], 10.0);
  EXPECT_EQ(rows.back()[1], 10.1);

  std::ostringstream mm;
  export_surface(sweep_minimax(net, {10, 10}, 0.05), mm);
  parse_csv(mm.str(), lines);
  EXPECT_EQ(lines, 40402u);
}

TEST(ExportSurface, FailingSinkIsReported) {
  std::ostringstream os;
  os.setstate(std::ios::badbit);
  try {
    export_surface(sweep_expected(testing::single_pair(), {1, 1}, 0.5), os);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SinkFailure);
  }
}

TEST(Report, FieldOrder) {
  const SensorNetwork net = testing::single_pair();
  SolveReport r;
  r.epsilon = 0.5;
  r.budgets = {1, 1};
  r.mesh_x = 3;
  r.mesh_y = 3;
  r.value = 1.0;
  r.allocation = {{{"i", 0.0}}, {{"j", 1.0}}};
  r.slack_x = 1.0;
  EXPECT_EQ(render_report(r, net),
            "solver: twolayer-dp 0.1.0\nobjective: expected\nepsilon: 0.5\nbudget_x: 1\nbudget_y: 1\n"
            "mesh: 3x3\nvalue: 1\nslack_x: 1\nslack_y: 0\nduration_ms: 0\ninner i: 0\nouter j: 1\n");
}

}  // namespace
}  // namespace twolayer
