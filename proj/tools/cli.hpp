#pragma once

// Command-line front end. Exit codes: 0 success, 1 input error, 2 internal
// failure (including a DP/oracle disagreement in `verify`).

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "twolayer/twolayer.hpp"

namespace twolayer::cli {

inline constexpr double kVerifyTolerance = 1e-9;

struct Options {
  std::string scenario;
  std::optional<std::string> objective;
  std::optional<double> epsilon;
  std::optional<double> budget_x;
  std::optional<double> budget_y;
  std::optional<std::string> out;
  double oracle_cap = kDefaultOracleCap;
  std::size_t halvings = 3;
  std::string inner_alloc;
  std::string outer_alloc;
};

/// A path to a scenario file, or the name of a bundled scenario.
inline Scenario load_scenario(const std::string& ref) {
  std::ifstream file(ref);
  if (file) {
    std::stringstream ss;
    ss << file.rdbuf();
    return parse_scenario(ss.str());
  }
  if (auto text = bundled_scenario(ref)) return parse_scenario(*text);
  throw Error(ErrorKind::InvalidArgument, "no scenario file or bundled scenario named '" + ref + "'");
}

inline Objective parse_objective(const std::string& s) {
  if (s == "expected") return Objective::Expected;
  if (s == "minimax") return Objective::Minimax;
  throw Error(ErrorKind::InvalidArgument, "--objective must be 'expected' or 'minimax'");
}

/// `id=value,id=value`
inline std::map<std::string, double> parse_assignments(const std::string& text, const char* flag) {
  std::map<std::string, double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorKind::InvalidArgument, std::string(flag) + " expects id=value pairs, got '" + item + "'");
    }
    try {
      std::size_t used = 0;
      const std::string num = item.substr(eq + 1);
      const double v = std::stod(num, &used);
      if (used != num.size()) throw std::invalid_argument(num);
      out[item.substr(0, eq)] = v;
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidArgument, std::string(flag) + ": bad number in '" + item + "'");
    }
  }
  return out;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::string& command, const Options& opt) {
    Scenario sc = load_scenario(opt.scenario);
    for (const auto& w : sc.warnings) err_ << "warning: " << w << '\n';
    if (opt.objective) sc.objective = parse_objective(*opt.objective);
    if (opt.epsilon) sc.epsilon = *opt.epsilon;
    if (opt.budget_x) sc.budgets.inner = *opt.budget_x;
    if (opt.budget_y) sc.budgets.outer = *opt.budget_y;
    make_mesh(sc.budgets.inner, sc.epsilon);
    make_mesh(sc.budgets.outer, sc.epsilon);

    if (command == "solve") return solve(sc, opt);
    if (command == "sweep") return sweep(sc, opt);
    if (command == "evaluate") return evaluate(sc, opt);
    if (command == "verify") return verify(sc, opt);
    return converge(sc, opt);
  }

 private:
  template <class Fn>
  void emit(const Options& opt, Fn&& write) {
    if (!opt.out) {
      write(out_);
      return;
    }
    std::ofstream file(*opt.out, std::ios::binary);
    if (!file) throw Error(ErrorKind::SinkFailure, "cannot open " + *opt.out);
    write(file);
  }

  int solve(const Scenario& sc, const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    SolveResult result = sc.objective == Objective::Expected ? solve_expected(sc.network, sc.budgets, sc.epsilon)
                                                             : solve_minimax(sc.network, sc.budgets, sc.epsilon);
    const auto stop = std::chrono::steady_clock::now();
    SolveReport report;
    report.objective = sc.objective;
    report.epsilon = sc.epsilon;
    report.budgets = sc.budgets;
    report.mesh_x = result.table.rows();
    report.mesh_y = result.table.cols();
    report.value = result.value;
    report.allocation = result.allocation;
    report.slack_x = std::max(0.0, sc.budgets.inner - result.allocation.inner_total());
    report.slack_y = std::max(0.0, sc.budgets.outer - result.allocation.outer_total());
    report.duration_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    emit(opt, [&](std::ostream& os) { os << render_report(report, sc.network); });
    return 0;
  }

  int sweep(const Scenario& sc, const Options& opt) {
    const ValueTable table = sc.objective == Objective::Expected ? sweep_expected(sc.network, sc.budgets, sc.epsilon)
                                                                 : sweep_minimax(sc.network, sc.budgets, sc.epsilon);
    std::size_t bytes = 0;
    emit(opt, [&](std::ostream& os) { bytes = export_surface(table, os); });
    if (opt.out) err_ << "wrote " << table.cell_count() << " cells (" << bytes << " bytes) to " << *opt.out << '\n';
    return 0;
  }

  int evaluate(const Scenario& sc, const Options& opt) {
    Allocation alloc;
    alloc.inner = parse_assignments(opt.inner_alloc, "--inner-alloc");
    alloc.outer = parse_assignments(opt.outer_alloc, "--outer-alloc");
    const double value = sc.objective == Objective::Expected ? eval_expected(sc.network, alloc, sc.budgets)
                                                             : eval_minimax(sc.network, alloc, sc.budgets);
    emit(opt, [&](std::ostream& os) {
      os << "objective: " << to_string(sc.objective) << '\n' << "value: " << format_g12(value) << '\n';
    });
    return 0;
  }

  int verify(const Scenario& sc, const Options& opt) {
    const double dp = sc.objective == Objective::Expected ? solve_expected(sc.network, sc.budgets, sc.epsilon).value
                                                          : solve_minimax(sc.network, sc.budgets, sc.epsilon).value;
    const double oracle = grid_enumerate(sc.network, sc.budgets, sc.epsilon, sc.objective, opt.oracle_cap).value;
    const double gap = std::abs(dp - oracle);
    emit(opt, [&](std::ostream& os) {
      os << "objective: " << to_string(sc.objective) << '\n'
         << "dp_value: " << format_g12(dp) << '\n'
         << "oracle_value: " << format_g12(oracle) << '\n'
         << "discrepancy: " << format_g12(gap) << '\n';
    });
    if (gap > kVerifyTolerance) {
      err_ << "error: DP and oracle disagree by " << gap << '\n';
      return 2;
    }
    return 0;
  }

  int converge(const Scenario& sc, const Options& opt) {
    const ConvergenceReport report =
        refinement_study(sc.network, sc.budgets, sc.epsilon, opt.halvings, sc.objective);
    emit(opt, [&](std::ostream& os) { export_convergence(report, os); });
    return 0;
  }

  std::ostream& out_;
  std::ostream& err_;
};

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Budget allocation for two-layer sensor defenses", "twolayer"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("scenario", opt.scenario, "Scenario file, or a bundled name (example_8_1, example_8_2, two_branch_small)")
        ->required();
    sub->add_option("--objective", opt.objective, "expected | minimax (default: from scenario)");
    sub->add_option("--epsilon", opt.epsilon, "Mesh step");
    sub->add_option("--budget-x", opt.budget_x, "Inner-layer budget (sweep: maximum)");
    sub->add_option("--budget-y", opt.budget_y, "Outer-layer budget (sweep: maximum)");
    sub->add_option("--out", opt.out, "Write output to this file instead of stdout");
  };
  auto* solve = app.add_subcommand("solve", "Optimal allocation for one budget pair");
  auto* sweep = app.add_subcommand("sweep", "Whole value surface as CSV");
  auto* evaluate = app.add_subcommand("evaluate", "Score a given allocation");
  auto* verify = app.add_subcommand("verify", "Compare the DP against brute-force enumeration");
  auto* converge = app.add_subcommand("converge", "Mesh refinement report as CSV");
  for (auto* sub : {solve, sweep, evaluate, verify, converge}) common(sub);
  evaluate->add_option("--inner-alloc", opt.inner_alloc, "id=budget,... for inner sensors")->required();
  evaluate->add_option("--outer-alloc", opt.outer_alloc, "id=budget,... for outer sensors")->required();
  verify->add_option("--oracle-cap", opt.oracle_cap, "Maximum brute-force evaluations");
  converge->add_option("--halvings", opt.halvings, "Number of times epsilon is halved");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    Runner runner(out, err);
    return runner.run(app.get_subcommands().front()->get_name(), opt);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace twolayer::cli
