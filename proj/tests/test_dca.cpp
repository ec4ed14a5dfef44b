#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "ngc/dca.hpp"
#include "ngc/exact.hpp"
#include "ngc/io.hpp"
#include "support/oracles.hpp"

using namespace ngc;
using ngc::testing::t1;

namespace {

double h_value(const std::vector<double>& x, double t) {
  double sum = 0.0;
  for (double v : x) sum += v * (v - 1.0);
  return t * sum;
}

void expect_descent(const DcaTrace& trace) {
  for (std::size_t k = 1; k < trace.objective_values.size(); ++k) {
    EXPECT_LE(trace.objective_values[k], trace.objective_values[k - 1] + 1e-9) << "step " << k;
  }
}

}  // namespace

TEST(Penalty, Alpha) {
  EXPECT_EQ(integrality_penalty(std::vector<double>{0, 0, 0, 0}), 0.0);
  EXPECT_EQ(integrality_penalty(std::vector<double>{0.5, 0.5, 0.5, 0.5}), 1.0);
  EXPECT_EQ(integrality_penalty(std::vector<double>{1, 0, 1, 0}), 0.0);
  EXPECT_GT(integrality_penalty(std::vector<double>{1e-3}), 0.0);
}

TEST(Penalty, MeritFunction) {
  const auto f = formulate(t1());
  EXPECT_EQ(penalized_objective(f, std::vector<double>{1, 1, 0, 0}, 30.0), -18.0);
  EXPECT_EQ(penalized_objective(f, std::vector<double>{1, 1, 0, 0}, 1e6), -18.0);
  EXPECT_EQ(penalized_objective(f, std::vector<double>(4, 0.0), 30.0), 0.0);
  EXPECT_DOUBLE_EQ(penalized_objective(f, std::vector<double>{0.5, 0, 0, 0}, 30.0), 3.0);
  EXPECT_THROW(penalized_objective(f, std::vector<double>{1, 1}, 30.0), std::invalid_argument);
}

TEST(Penalty, Gradient) {
  EXPECT_EQ(penalty_gradient(std::vector<double>{0.0, 1.0, 0.5}, 30.0),
            (std::vector<double>{-30.0, 30.0, 0.0}));
}

TEST(Penalty, GradientMatchesFiniteDifferences) {
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> interior(0.05, 0.95), tdist(0.5, 200.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(6);
    for (double& v : x) v = interior(rng);
    const double t = tdist(rng);
    const auto y = penalty_gradient(x, t);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double fd = ngc::testing::central_difference(
          [&](const std::vector<double>& z) { return h_value(z, t); }, x, j, 1e-5);
      EXPECT_LE(std::abs(fd - y[j]), 1e-6 * std::max(1.0, std::abs(y[j])));
    }
  }
}

TEST(Beta, T1) {
  const auto f = formulate(t1());
  EXPECT_EQ(overlap_violation(f, std::vector<double>{1, 1, 0, 0}), 0.0);
  EXPECT_EQ(overlap_violation(f, std::vector<double>{1, 0, 1, 1}), 1.0);
  EXPECT_EQ(overlap_violation(f, std::vector<double>(4, 0.0)), 0.0);
}

TEST(Beta, ZeroExactlyOnOverlapFeasiblePoints) {
  std::mt19937 rng(59);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = formulate(ngc::testing::random_instance(rng, {}, "r"));
    for (int k = 0; k < 50; ++k) {
      std::vector<double> x(f.size());
      for (double& v : x) v = unit(rng) < 0.3 ? unit(rng) : 0.0;
      const double beta = overlap_violation(f, x);
      EXPECT_GE(beta, 0.0);
      const auto activity = f.full.matrix.multiply(x);
      bool overlap_ok = true;
      for (std::size_t r = 0; r < activity.size(); ++r) {
        if (std::holds_alternative<OverlapRow>(f.full.labels[r])) overlap_ok &= activity[r] <= 1.0 + 1e-9;
      }
      EXPECT_EQ(beta <= 1e-9, overlap_ok);
    }
  }
}

TEST(StartSubgradient, T1Cases) {
  const auto f = formulate(t1());
  EXPECT_EQ(start_subgradient(f, std::vector<double>{1, 0, 1, 1}, 30.0, 10.0),
            (std::vector<double>{20, -30, 20, 30}));
  const std::vector<double> feasible{1, 1, 0, 0};
  EXPECT_EQ(start_subgradient(f, feasible, 30.0, 10.0), penalty_gradient(feasible, 30.0));
  EXPECT_EQ(start_subgradient(f, std::vector<double>(4, 0.0), 30.0, 10.0),
            std::vector<double>(4, -30.0));
}

TEST(DcaStep, T1) {
  const auto f = formulate(t1());
  const auto fixed = dca_step(f, std::vector<double>{1, 1, 0, 0}, 30.0);
  ASSERT_EQ(fixed.status, LpStatus::optimal);
  EXPECT_EQ(fixed.x, (std::vector<double>{1, 1, 0, 0}));
  const auto stall = dca_step(f, std::vector<double>(4, 0.0), 30.0);
  EXPECT_EQ(stall.x, std::vector<double>(4, 0.0));
  const auto relaxation = dca_step(f, std::vector<double>{0.3, 0.1, 0.7, 0.2}, 0.0);
  EXPECT_EQ(relaxation.x, lp_relaxation_start(f));
}

TEST(RunDca, T1Starts) {
  const auto f = formulate(t1());
  DcaConfig config;
  config.t = 30.0;
  config.u = 10.0;
  const auto from_opt = run_dca(f, config, std::vector<double>{1, 1, 0, 0});
  EXPECT_EQ(from_opt.trace.iterations, 1u);
  EXPECT_TRUE(from_opt.feasible);
  EXPECT_EQ(from_opt.total_value, 18);
  EXPECT_EQ(from_opt.trace.termination, Termination::displacement_below_epsilon);

  const auto from_zero = run_dca(f, config, std::vector<double>(4, 0.0));
  EXPECT_TRUE(from_zero.feasible);
  EXPECT_EQ(from_zero.total_value, 0);
  EXPECT_TRUE(from_zero.placements.empty());
}

TEST(RunDca, T1InitialDca) {
  const auto f = formulate(t1());
  DcaConfig config;
  config.t = 30.0;
  config.u = 10.0;
  const auto x0 = run_initial_dca(f, config);
  EXPECT_TRUE(f.relaxed.contains(x0));
  const auto result = solve_dca(f, config);
  ASSERT_TRUE(result.feasible);
  EXPECT_EQ(result.total_value, 18);
  EXPECT_EQ(result.total_value, solve_brute_force(f.instance).optimal_value);
  ASSERT_TRUE(result.start_trace.has_value());
  EXPECT_EQ(result.start_trace->termination, Termination::displacement_below_epsilon);
}

TEST(RunDca, SinglePieceFillingStock) {
  const auto f = formulate(Instance{"one", 5, 3, {{5, 3, 7, 1}}});
  DcaConfig config;
  EXPECT_EQ(run_initial_dca(f, config), (std::vector<double>{1.0}));
  EXPECT_EQ(lp_relaxation_start(f), (std::vector<double>{1.0}));
  EXPECT_EQ(solve_dca(f, config).total_value, 7);
}

TEST(RunDca, NoOverlapPossibleMatchesPlainDcaOverB) {
  // Stock exactly one piece wide and tall: at most one column fits, so no
  // overlap row can ever be violated.
  const auto f = formulate(Instance{"flat", 3, 3, {{3, 3, 4, 2}, {3, 3, 4, 1}}});
  DcaConfig config;
  config.t = 10.0;
  config.u = 10.0;
  config.keep_iterates = true;
  DcaTrace trace;
  run_initial_dca(f, config, &trace);
  std::vector<double> x = lp_relaxation_start(f);
  for (std::size_t k = 0; k + 1 < trace.iterates.size(); ++k) {
    EXPECT_EQ(start_subgradient(f, trace.iterates[k], config.t, config.u),
              penalty_gradient(trace.iterates[k], config.t));
  }
  EXPECT_EQ(trace.iterates.front(), x);
}

TEST(RunDca, InitStrategies) {
  const auto f = formulate(t1());
  for (auto init : {InitStrategy::zeros, InitStrategy::ones, InitStrategy::lp_relaxation,
                    InitStrategy::initial_dca}) {
    DcaConfig config;
    config.t = 30.0;
    config.u = 10.0;
    config.init = init;
    const auto result = solve_dca(f, config);
    expect_descent(result.trace);
    EXPECT_LE(result.trace.iterations, config.max_iter);
  }
  DcaConfig given;
  given.init = InitStrategy::given;
  given.x0 = {1, 1, 0, 0};
  EXPECT_EQ(solve_dca(f, given).total_value, 18);
  given.x0 = {1, 1};
  EXPECT_THROW(solve_dca(f, given), std::invalid_argument);
  given.x0 = {2, 0, 0, 0};
  EXPECT_THROW(solve_dca(f, given), std::invalid_argument);
}

TEST(RunDca, ConfigValidation) {
  DcaConfig config;
  config.t = 0.0;
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config = {};
  config.u = -1.0;
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config = {};
  config.epsilon = 0.0;
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config = {};
  config.max_iter = 0;
  EXPECT_THROW(config.validate(), std::invalid_argument);
  EXPECT_EQ(parse_init_strategy("lp"), InitStrategy::lp_relaxation);
  EXPECT_FALSE(parse_init_strategy("random").has_value());
}

TEST(RunDca, DescentAndTerminationOnRandomInstances) {
  std::mt19937 rng(61);
  ngc::testing::RandomSpec spec;
  spec.max_stock = 14;
  spec.max_pieces = 5;
  spec.max_vars = 500;
  std::uniform_real_distribution<double> tdist(1.0, 100.0);
  for (int trial = 0; trial < 25; ++trial) {
    const auto f = formulate(ngc::testing::random_instance(rng, spec, "r"));
    DcaConfig config;
    config.t = tdist(rng);
    config.u = tdist(rng);
    config.keep_iterates = true;
    const auto result = solve_dca(f, config);
    expect_descent(result.trace);
    EXPECT_EQ(result.trace.termination, Termination::displacement_below_epsilon);
    EXPECT_LE(result.trace.iterations, 200u);
    // Idempotence at termination.
    const auto again = dca_step(f, result.x_final, config.t);
    EXPECT_LE(std::sqrt(std::inner_product(again.x.begin(), again.x.end(), result.x_final.begin(), 0.0,
                                           std::plus<>(), [](double a, double b) { return (a - b) * (a - b); })),
              config.epsilon);
    if (result.feasible) {
      EXPECT_TRUE(feasibility_check(f.instance, result.placements).ok());
      EXPECT_EQ(*result.total_value, placements_value(f.instance, result.placements));
    }
  }
}

TEST(RunDca, ExactPenaltyGivesIntegralPoints) {
  std::mt19937 rng(67);
  ngc::testing::RandomSpec spec;
  spec.max_vars = 12;
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = formulate(ngc::testing::random_instance(rng, spec, "r"));
    double t = 1.0;
    for (const auto& p : f.instance.pieces) t += static_cast<double>(p.value) * p.max_count;
    DcaConfig config;
    config.t = t;
    std::vector<std::vector<double>> starts;
    ngc::testing::for_each_binary(f.size(), [&](const std::vector<double>& x) {
      if (f.full.contains(x, 0.0) && starts.size() < 40) starts.push_back(x);
    });
    for (const auto& x0 : starts) {
      const auto result = run_dca(f, config, x0);
      EXPECT_LE(integrality_penalty(result.x_final), 1e-7);
      expect_descent(result.trace);
    }
  }
}

TEST(RunDca, Deterministic) {
  std::mt19937 rng(71);
  ngc::testing::RandomSpec spec;
  spec.max_stock = 12;
  spec.max_vars = 300;
  const auto f = formulate(ngc::testing::random_instance(rng, spec, "r"));
  DcaConfig config;
  const auto a = solve_dca(f, config);
  const auto b = solve_dca(f, config);
  EXPECT_EQ(a.x_final, b.x_final);
  EXPECT_EQ(a.trace.objective_values, b.trace.objective_values);
}

TEST(RunDca, PastDeadlineThrows) {
  const auto f = formulate(t1());
  DcaConfig config;
  config.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  EXPECT_THROW(solve_dca(f, config), std::runtime_error);
  config.deadline = std::chrono::steady_clock::now() + std::chrono::hours(1);
  EXPECT_EQ(solve_dca(f, config).total_value, 18);
}

TEST(Rounding, Cases) {
  const auto f = formulate(t1());
  const auto near = round_and_check(f, std::vector<double>{1 - 1e-9, 1, 0, 0}, 1e-6);
  EXPECT_TRUE(near.accepted);
  EXPECT_EQ(near.binary, (std::vector<std::uint8_t>{1, 1, 0, 0}));
  EXPECT_EQ(near.total_value, 18);
  const auto frac = round_and_check(f, std::vector<double>{0.4, 0, 0, 0}, 1e-6);
  EXPECT_FALSE(frac.accepted);
  EXPECT_EQ(frac.fractional, (std::vector<std::size_t>{0}));
  const auto overlapping = round_and_check(f, std::vector<double>{1, 0, 1, 0}, 1e-6);
  EXPECT_FALSE(overlapping.accepted);
  EXPECT_FALSE(overlapping.violations.empty());
}
