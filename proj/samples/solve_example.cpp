// Solves the bundled four-branch network at one budget pair for both
// objectives and prints the resulting allocations.

#include <iostream>

#include "twolayer/twolayer.hpp"

int main() {
  const twolayer::SensorNetwork net = twolayer::build_example_8_1();
  const twolayer::BudgetPair budgets{2.0, 3.0};

  const auto expected = twolayer::solve_expected(net, budgets, 0.05);
  std::cout << "expected capture: " << expected.value << '\n';
  for (const auto& [id, x] : expected.allocation.inner) std::cout << "  inner " << id << " x=" << x << '\n';
  for (const auto& [id, y] : expected.allocation.outer) std::cout << "  outer " << id << " y=" << y << '\n';

  const auto robust = twolayer::solve_minimax(net, budgets, 0.05);
  std::cout << "worst-path detection: " << robust.value << '\n';
  return 0;
}
