#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "test_support.hpp"
#include "twolayer/dp.hpp"
#include "twolayer/oracle.hpp"

namespace twolayer {
namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::InvalidArgument;
}

TEST(Mesh, Sizes) {
  EXPECT_EQ(make_mesh(1.0, 0.01).size(), 101u);
  const Mesh single = make_mesh(0.0, 0.5);
  EXPECT_EQ(single.size(), 1u);
  EXPECT_EQ(single.at(0), 0.0);
  EXPECT_EQ(make_mesh(10.1, 0.1).size(), 102u);
  EXPECT_EQ(make_mesh(10.1, 0.1).at(101), 10.1);
  EXPECT_EQ(kind_of([] { make_mesh(1.0, 0.3); }), ErrorKind::NonDivisibleBudget);
  EXPECT_EQ(kind_of([] { make_mesh(1.0, 0.0); }), ErrorKind::NonpositiveStep);
  EXPECT_EQ(kind_of([] { make_mesh(1.0, -0.1); }), ErrorKind::NonpositiveStep);
  EXPECT_EQ(kind_of([] { make_mesh(-1.0, 0.5); }), ErrorKind::NegativeBudget);
}

class HalfMesh : public ::testing::Test {
 protected:
  const PwlCurve id = testing::identity_curve();
  const Mesh mesh = make_mesh(1.0, 0.5);
};

TEST_F(HalfMesh, PairTableValues) {
  const ValueTable t = pair_table(id, id, 1.0, mesh, mesh);
  EXPECT_EQ(t(2, 2), 1.0);
  EXPECT_EQ(t(1, 1), 0.75);
  EXPECT_EQ(t(0, 2), 1.0);
  EXPECT_EQ(t(2, 0), 1.0);
  EXPECT_EQ(t(0, 0), 0.0);
  EXPECT_TRUE(testing::is_monotone(t));
}

TEST_F(HalfMesh, PairTableDomain) {
  const Mesh wide = make_mesh(2.0, 0.5);
  EXPECT_EQ(kind_of([&] { pair_table(id, id, 1.0, wide, mesh); }), ErrorKind::DomainExceeded);
  EXPECT_EQ(kind_of([&] { pair_table(id, id, 1.0, mesh, wide); }), ErrorKind::DomainExceeded);
}

TEST_F(HalfMesh, MergeOuterLinearTie) {
  const ValueTable left = pair_table(id, id, 1.0, mesh, mesh, {0, 0});
  const ValueTable right = pair_table(id, id, 1.0, mesh, mesh, {0, 1});
  const ValueTable m = merge_outer(left, right);
  // every split of the x=0 row sums to 1; the smallest left share wins
  EXPECT_EQ(m(0, 2), 1.0);
  EXPECT_EQ(m.y_split(0, 2), 0u);
  for (std::size_t a = 0; a < 3; ++a) EXPECT_EQ(m(a, 0), left(a, 0) + right(a, 0));
}

TEST_F(HalfMesh, MergeOuterZeroLeftIsIdentity) {
  const ValueTable zero = pair_table(id, id, 0.0, mesh, mesh, {0, 0});
  const ValueTable right = pair_table(id, id, 1.0, mesh, mesh, {0, 1});
  const ValueTable m = merge_outer(zero, right);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) EXPECT_EQ(m(a, b), right(a, b));
  }
}

TEST_F(HalfMesh, MergeOuterPreconditions) {
  const ValueTable a = pair_table(id, id, 1.0, mesh, mesh, {0, 0});
  const ValueTable other_inner = pair_table(id, id, 1.0, mesh, mesh, {1, 1});
  const ValueTable same_outer = pair_table(id, id, 1.0, mesh, mesh, {0, 0});
  const ValueTable fine = pair_table(id, id, 1.0, make_mesh(1.0, 0.25), mesh, {0, 1});
  EXPECT_EQ(kind_of([&] { merge_outer(a, other_inner); }), ErrorKind::BranchMismatch);
  EXPECT_EQ(kind_of([&] { merge_outer(a, same_outer); }), ErrorKind::BranchMismatch);
  EXPECT_EQ(kind_of([&] { merge_outer(a, fine); }), ErrorKind::MeshMismatch);
  EXPECT_EQ(kind_of([&] { merge_inner(a, fine); }), ErrorKind::MeshMismatch);
  EXPECT_EQ(kind_of([&] { merge_inner(a, same_outer); }), ErrorKind::BranchMismatch);
}

TEST_F(HalfMesh, MergeInnerTwoIdentityBranches) {
  const ValueTable a = pair_table(id, id, 1.0, mesh, mesh, {0, 0});
  const ValueTable b = pair_table(id, id, 1.0, mesh, mesh, {1, 1});
  const ValueTable m = merge_inner(a, b);
  // test-local enumeration of every split of (X, Y) = (1, 1)
  double best = -1;
  for (std::size_t xs = 0; xs <= 2; ++xs) {
    for (std::size_t ys = 0; ys <= 2; ++ys) best = std::max(best, a(xs, ys) + b(2 - xs, 2 - ys));
  }
  // one branch takes all inner budget, the other all outer budget
  EXPECT_EQ(best, 2.0);
  EXPECT_EQ(m(2, 2), 2.0);
  EXPECT_EQ(m.x_split(2, 2), 0u);
  EXPECT_EQ(m.y_split(2, 2), 2u);
  EXPECT_EQ(merge_inner(b, a).values(), m.values());
}

TEST_F(HalfMesh, MergeInnerDeadBranch) {
  const ValueTable a = pair_table(id, id, 1.0, mesh, mesh, {0, 0});
  const ValueTable dead = pair_table(id, id, 0.0, mesh, mesh, {1, 1});
  const ValueTable m = merge_inner(a, dead);
  for (std::size_t x = 0; x < 3; ++x) {
    for (std::size_t y = 0; y < 3; ++y) {
      EXPECT_EQ(m(x, y), a(x, y));
      // saturated cells tie; any recorded split must still attain the value
      EXPECT_EQ(a(m.x_split(x, y), m.y_split(x, y)), m(x, y));
    }
  }
}

TEST(SolveExpected, SinglePair) {
  const auto r = solve_expected(testing::single_pair(), {1, 1}, 0.5);
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.allocation.inner.at("i"), 1.0);
  EXPECT_EQ(r.allocation.outer.at("j"), 1.0);
}

TEST(SolveExpected, ZeroBudgets) {
  const SensorNetwork net = build_example_8_1();
  const auto r = solve_expected(net, {0, 0}, 0.1);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.table.cell_count(), 1u);
  for (const auto& [id, x] : r.allocation.inner) EXPECT_EQ(x, 0.0);
  for (const auto& [id, y] : r.allocation.outer) EXPECT_EQ(y, 0.0);
}

TEST(SolveExpected, TwoBranch) {
  const SensorNetwork net = testing::two_branch();
  const auto r = solve_expected(net, {1, 1}, 0.5);
  const auto oracle = grid_enumerate(net, {1, 1}, 0.5, Objective::Expected);
  EXPECT_EQ(oracle.value, 2.0);
  EXPECT_EQ(r.value, 2.0);
  EXPECT_DOUBLE_EQ(eval_expected(net, r.allocation, BudgetPair{1, 1}), 2.0);
}

TEST(SolveExpected, RejectsNonDivisibleBudget) {
  EXPECT_EQ(kind_of([] { solve_expected(testing::single_pair(), {1, 1}, 0.3); }), ErrorKind::NonDivisibleBudget);
}

TEST(SweepExpected, ExampleSurface) {
  const ValueTable t = sweep_expected(build_example_8_1(), {10, 10.1}, 0.1);
  EXPECT_EQ(t.rows(), 101u);
  EXPECT_EQ(t.cols(), 102u);
  EXPECT_EQ(t.cell_count(), 10302u);
  EXPECT_EQ(t(0, 0), 0.0);
  EXPECT_TRUE(testing::is_monotone(t));
  // nine unit flows bound the capture
  EXPECT_LE(t(100, 101), 9.0 + 1e-12);
}

TEST(SweepExpected, EmptyBudgets) {
  const ValueTable t = sweep_expected(build_example_8_1(), {0, 0}, 0.25);
  EXPECT_EQ(t.cell_count(), 1u);
  EXPECT_EQ(t(0, 0), 0.0);
}

TEST(SolveExpected, MatchesOracleOnRandomInstances) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> steps(0, 6);
  for (int trial = 0; trial < 60; ++trial) {
    const SensorNetwork net = testing::random_network(rng, {.max_inner = 3, .max_siblings = 2});
    const BudgetPair budgets{steps(rng) * 0.1, steps(rng) * 0.1};
    const auto dp = solve_expected(net, budgets, 0.1);
    const auto oracle = grid_enumerate(net, budgets, 0.1, Objective::Expected);
    EXPECT_NEAR(dp.value, oracle.value, 1e-9) << "trial " << trial;
    EXPECT_NEAR(eval_expected(net, dp.allocation, budgets), dp.value, 1e-9);
  }
}

TEST(SolveExpected, EveryCellRecoversAFeasibleAllocation) {
  std::mt19937_64 rng(12);
  const SensorNetwork net = testing::random_network(rng, {.domain = 2.0});
  const BudgetPair budgets{2.0, 2.0};
  const auto r = solve_expected(net, budgets, 0.05);
  std::uniform_int_distribution<std::size_t> row(0, r.table.rows() - 1);
  std::uniform_int_distribution<std::size_t> col(0, r.table.cols() - 1);
  for (int k = 0; k < 100; ++k) {
    const std::size_t a = row(rng);
    const std::size_t b = col(rng);
    const Allocation alloc = recover_allocation(net, r.table, a, b);
    const BudgetPair cell{r.table.x_mesh().at(a), r.table.y_mesh().at(b)};
    EXPECT_NEAR(eval_expected(net, alloc, cell), r.table(a, b), 1e-9);
  }
}

TEST(SolveExpected, FoldOrderDoesNotChangeValue) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const SensorNetwork net = testing::random_network(rng, {.max_inner = 3, .max_siblings = 3});
    const Topology topo(net);
    FoldOrder order;
    order.branches.resize(net.inner.size());
    std::iota(order.branches.begin(), order.branches.end(), std::size_t{0});
    std::shuffle(order.branches.begin(), order.branches.end(), rng);
    for (auto sib : topo.branches) {
      std::shuffle(sib.begin(), sib.end(), rng);
      order.siblings.push_back(sib);
    }
    const BudgetPair budgets{0.8, 1.0};
    const double base = solve_expected(net, budgets, 0.1).value;
    const auto permuted = solve_expected(net, budgets, 0.1, order);
    EXPECT_NEAR(permuted.value, base, 1e-9);
    EXPECT_NEAR(eval_expected(net, permuted.allocation, budgets), permuted.value, 1e-9);
  }
}

TEST(SolveExpected, RejectsBadFoldOrder) {
  FoldOrder order{{0, 0}, {}};
  EXPECT_EQ(kind_of([&] { solve_expected(testing::two_branch(), {1, 1}, 0.5, order); }), ErrorKind::InvalidArgument);
}

TEST(SolveExpected, RejectsInvalidNetwork) {
  SensorNetwork net = testing::two_branch();
  net.outer[0].flow = -1;
  EXPECT_EQ(kind_of([&] { solve_expected(net, {1, 1}, 0.5); }), ErrorKind::InvalidNetwork);
}

}  // namespace
}  // namespace twolayer
