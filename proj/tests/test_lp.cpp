#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ngc/formulation.hpp"
#include "ngc/lp.hpp"
#include "support/oracles.hpp"

using namespace ngc;
using ngc::testing::t1;

namespace {

Polytope dense_polytope(const std::vector<std::vector<double>>& a, std::vector<double> b,
                        std::vector<double> lower, std::vector<double> upper) {
  std::vector<Triplet> entries;
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < a[r].size(); ++c) entries.push_back({r, c, a[r][c]});
  }
  Polytope p;
  p.matrix = SparseMatrix(a.size(), lower.size(), std::move(entries));
  p.rhs = std::move(b);
  p.lower = std::move(lower);
  p.upper = std::move(upper);
  return p;
}

ngc::testing::DenseLp to_dense(const Polytope& p) {
  ngc::testing::DenseLp lp;
  lp.a.assign(p.rows(), std::vector<double>(p.cols(), 0.0));
  for (const Triplet& t : p.matrix.entries()) lp.a[t.row][t.col] = t.value;
  lp.b = p.rhs;
  lp.lower = p.lower;
  lp.upper = p.upper;
  return lp;
}

std::vector<double> negated(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = -v[j];
  return out;
}

std::size_t strictly_between(const Polytope& p, const std::vector<double>& x) {
  std::size_t k = 0;
  for (std::size_t j = 0; j < x.size(); ++j) k += (x[j] > p.lower[j] && x[j] < p.upper[j]) ? 1 : 0;
  return k;
}

}  // namespace

TEST(SolveLp, BoxOnly) {
  const Polytope p = dense_polytope({}, {}, {0.0}, {1.0});
  const std::vector<double> c{-1.0};
  const auto sol = solve_lp(p, c);
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_EQ(sol.x, (std::vector<double>{1.0}));
  EXPECT_EQ(sol.objective, -1.0);
}

TEST(SolveLp, T1RelaxationIsIntegral) {
  const auto f = formulate(t1());
  const auto sol = solve_lp(f.full, negated(f.values));
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_EQ(sol.objective, -18.0);
  EXPECT_EQ(sol.x, (std::vector<double>{1, 1, 0, 0}));
}

TEST(SolveLp, T1ZeroCost) {
  const auto f = formulate(t1());
  const std::vector<double> c(4, 0.0);
  const auto sol = solve_lp(f.full, c);
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_EQ(sol.objective, 0.0);
  EXPECT_TRUE(f.full.contains(sol.x));
}

TEST(SolveLp, MatchesVertexEnumeration) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coef(-3, 3), rhs(-2, 6), cost(-5, 5), ncols(1, 5), nrows(0, 5);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = ncols(rng), m = nrows(rng);
    std::vector<std::vector<double>> a(m, std::vector<double>(n));
    for (auto& row : a) for (double& v : row) v = coef(rng);
    std::vector<double> b(m);
    for (double& v : b) v = rhs(rng);
    std::vector<double> lo(n, 0.0), hi(n);
    for (double& v : hi) v = 1.0 + (coef(rng) > 1 ? 1.0 : 0.0);
    std::vector<double> c(n);
    for (double& v : c) v = cost(rng);
    const Polytope p = dense_polytope(a, b, lo, hi);
    const auto sol = solve_lp(p, c);
    const auto oracle = ngc::testing::vertex_minimum(to_dense(p), c);
    if (!oracle) {
      EXPECT_EQ(sol.status, LpStatus::infeasible) << "trial " << trial;
      ++infeasible;
      continue;
    }
    ++feasible;
    ASSERT_EQ(sol.status, LpStatus::optimal) << "trial " << trial;
    EXPECT_NEAR(sol.objective, *oracle, 1e-9) << "trial " << trial;
    EXPECT_LE(p.max_violation(sol.x), 1e-9);
  }
  EXPECT_GT(feasible, 100);
  EXPECT_GT(infeasible, 10);
}

TEST(SolveLp, FormulationsAgainstOracles) {
  std::mt19937 rng(7);
  ngc::testing::RandomSpec small;
  small.max_vars = 5;
  ngc::testing::RandomSpec medium;
  medium.max_vars = 12;
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const bool tiny = trial % 2 == 0;
    const auto f = formulate(ngc::testing::random_instance(rng, tiny ? small : medium, "r"));
    std::vector<double> c = negated(f.values);
    if (trial % 3 == 0) for (double& v : c) v += 10.0 * unit(rng);
    const auto sol = solve_lp(f.full, c);
    ASSERT_EQ(sol.status, LpStatus::optimal);
    EXPECT_LE(f.full.max_violation(sol.x), 1e-9);
    EXPECT_LE(strictly_between(f.full, sol.x), f.full.rows());
    if (tiny) {
      const auto oracle = ngc::testing::vertex_minimum(to_dense(f.full), c);
      ASSERT_TRUE(oracle.has_value());
      EXPECT_NEAR(sol.objective, *oracle, 1e-9);
    }
    double best_binary = std::numeric_limits<double>::infinity();
    ngc::testing::for_each_binary(f.size(), [&](const std::vector<double>& x) {
      if (!f.full.contains(x, 0.0)) return;
      double v = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) v += c[j] * x[j];
      best_binary = std::min(best_binary, v);
    });
    EXPECT_LE(sol.objective, best_binary + 1e-9);
  }
}

TEST(SolveLp, DeterministicAndScaleInvariant) {
  std::mt19937 rng(13);
  ngc::testing::RandomSpec spec;
  spec.max_stock = 14;
  spec.max_pieces = 5;
  spec.max_vars = 400;
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = formulate(ngc::testing::random_instance(rng, spec, "r"));
    const auto c = negated(f.values);
    const auto first = solve_lp(f.full, c);
    const auto second = solve_lp(f.full, c);
    ASSERT_EQ(first.status, LpStatus::optimal);
    EXPECT_EQ(first.x, second.x);
    EXPECT_EQ(first.objective, second.objective);
    EXPECT_EQ(first.iterations, second.iterations);
    for (double lambda : {0.5, 4.0}) {
      std::vector<double> scaled = c;
      for (double& v : scaled) v *= lambda;
      EXPECT_EQ(solve_lp(f.full, scaled).x, first.x) << "lambda " << lambda;
    }
  }
}

TEST(SolveLp, PerturbationDoesNotChangeTheOptimum) {
  std::mt19937 rng(19);
  ngc::testing::RandomSpec spec;
  spec.max_stock = 16;
  spec.max_pieces = 6;
  spec.max_vars = 600;
  LpTolerances plain;
  plain.perturbation = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = formulate(ngc::testing::random_instance(rng, spec, "r"));
    const auto c = negated(f.values);
    const auto with = SimplexSolver(f.full).solve(c);
    const auto without = SimplexSolver(f.full, plain).solve(c);
    ASSERT_EQ(with.status, LpStatus::optimal);
    ASSERT_EQ(without.status, LpStatus::optimal);
    EXPECT_NEAR(with.objective, without.objective, 1e-7);
    EXPECT_LE(f.full.max_violation(with.x), 1e-9);
  }
}

TEST(SolveLp, Infeasible) {
  const Polytope p = dense_polytope({{1.0, 1.0}}, {-1.0}, {0.0, 0.0}, {1.0, 1.0});
  const std::vector<double> c{1.0, 1.0};
  EXPECT_EQ(solve_lp(p, c).status, LpStatus::infeasible);
  const Polytope box = dense_polytope({}, {}, {0.0}, {1.0});
  const std::vector<double> lo{1.0}, hi{0.0}, c1{1.0};
  EXPECT_EQ(solve_lp(box, c1, lo, hi).status, LpStatus::infeasible);
}

TEST(SolveLp, NegativeRhsFeasibleViaPhaseOne) {
  // x0 - x1 <= -0.5 forces x1 >= 0.5 + x0.
  const Polytope p = dense_polytope({{1.0, -1.0}}, {-0.5}, {0.0, 0.0}, {1.0, 1.0});
  const std::vector<double> c{-1.0, 1.0};
  const auto sol = solve_lp(p, c);
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_NEAR(sol.objective, 0.5, 1e-12);
  EXPECT_LE(sol.x[0] - sol.x[1], -0.5 + 1e-12);
}

TEST(SolveLp, BoundOverrides) {
  const auto f = formulate(t1());
  const auto c = negated(f.values);
  std::vector<double> lo(4, 0.0), hi(4, 1.0);
  lo[3] = 1.0;  // B at (0,2) leaves no room for either A
  const auto sol = solve_lp(f.full, c, lo, hi);
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_EQ(sol.x[3], 1.0);
  EXPECT_EQ(sol.x[0], 0.0);
  EXPECT_EQ(sol.x[1], 0.0);
  EXPECT_NEAR(sol.objective, -8.0, 1e-9);
}

TEST(SolveLp, IterationLimitAndBadInput) {
  const auto f = formulate(t1());
  const auto c = negated(f.values);
  LpLimits limits;
  limits.max_iterations = 1;
  EXPECT_EQ(solve_lp(f.full, c, limits).status, LpStatus::iteration_limit);
  const std::vector<double> short_cost(3, 0.0);
  EXPECT_THROW(solve_lp(f.full, short_cost), std::invalid_argument);
  std::vector<double> nan_cost(4, 0.0);
  nan_cost[0] = std::nan("");
  EXPECT_THROW(solve_lp(f.full, nan_cost), std::invalid_argument);
}

TEST(SimplexSolver, WarmStartReachesSameObjective) {
  std::mt19937 rng(23);
  ngc::testing::RandomSpec spec;
  spec.max_stock = 14;
  spec.max_pieces = 5;
  spec.max_vars = 400;
  std::uniform_real_distribution<double> unit(-20.0, 20.0);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = formulate(ngc::testing::random_instance(rng, spec, "r"));
    SimplexSolver warm(f.full);
    warm.set_warm_start(true);
    for (int k = 0; k < 4; ++k) {
      std::vector<double> c = negated(f.values);
      for (double& v : c) v += unit(rng);
      const auto a = warm.solve(c);
      const auto b = solve_lp(f.full, c);
      ASSERT_EQ(a.status, LpStatus::optimal);
      EXPECT_NEAR(a.objective, b.objective, 1e-7);
      EXPECT_LE(f.full.max_violation(a.x), 1e-9);
    }
  }
}
