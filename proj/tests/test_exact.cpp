#include <gtest/gtest.h>

#include <random>

#include "ngc/dca.hpp"
#include "ngc/exact.hpp"
#include "ngc/io.hpp"
#include "support/oracles.hpp"

using namespace ngc;
using ngc::testing::t1;

namespace {

// Best value over all subsets of admissible rectangles.
long long enumerate_best(const Instance& inst) {
  const auto rects = ngc::testing::admissible_rects(inst);
  long long best = 0;
  ngc::testing::for_each_binary(rects.size(), [&](const std::vector<double>& x) {
    std::vector<ngc::testing::Rect> chosen;
    long long value = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] < 0.5) continue;
      chosen.push_back(rects[j]);
      value += inst.pieces[rects[j].piece].value;
    }
    if (value > best && ngc::testing::geometrically_feasible(inst, chosen)) best = value;
  });
  return best;
}

void expect_valid(const Instance& inst, const ExactResult& r) {
  EXPECT_TRUE(feasibility_check(inst, r.placements).ok());
  EXPECT_EQ(placements_value(inst, r.placements), r.optimal_value);
}

}  // namespace

TEST(Exact, T1) {
  const auto bb = solve_exact_bb(t1());
  EXPECT_EQ(bb.status, ExactStatus::proved_optimal);
  EXPECT_EQ(bb.optimal_value, 18);
  auto placements = bb.placements;
  std::sort(placements.begin(), placements.end());
  EXPECT_EQ(placements, (std::vector<Placement>{{0, 0, 0}, {0, 2, 0}}));
  EXPECT_EQ(solve_brute_force(t1()).optimal_value, 18);
  EXPECT_EQ(enumerate_best(t1()), 18);
}

TEST(Exact, T1WithOneCopyOfA) {
  Instance inst = t1();
  inst.pieces[0].max_count = 1;
  const long long oracle = enumerate_best(inst);
  EXPECT_EQ(solve_brute_force(inst).optimal_value, oracle);
  EXPECT_EQ(solve_exact_bb(inst).optimal_value, oracle);
}

TEST(Exact, TrivialInstances) {
  const Instance fill{"fill", 3, 2, {{3, 2, 5, 1}}};
  EXPECT_EQ(solve_exact_bb(fill).optimal_value, 5);
  EXPECT_EQ(solve_brute_force(fill).optimal_value, 5);
  const Instance none{"none", 2, 2, {{3, 1, 5, 1}, {1, 3, 5, 1}}};
  const auto bb = solve_exact_bb(none);
  EXPECT_EQ(bb.optimal_value, 0);
  EXPECT_TRUE(bb.placements.empty());
  EXPECT_EQ(solve_brute_force(none).optimal_value, 0);
}

TEST(Exact, BruteForceCap) {
  const Instance wide{"wide", 21, 1, {{1, 1, 1, 21}}};
  EXPECT_THROW(solve_brute_force(wide), std::invalid_argument);
  EXPECT_EQ(solve_brute_force(wide, 21).optimal_value, 21);
}

TEST(Exact, OptionsValidation) {
  ExactOptions options;
  options.time_limit = 0.0;
  EXPECT_THROW(solve_exact_bb(t1(), options), std::invalid_argument);
}

TEST(Exact, AgreesWithEnumeration) {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = ngc::testing::random_instance(rng, {}, "r" + std::to_string(trial));
    const auto brute = solve_brute_force(inst);
    ExactOptions options;
    options.seed_with_dca = trial % 2 == 0;
    const auto bb = solve_exact_bb(inst, options);
    ASSERT_EQ(bb.status, ExactStatus::proved_optimal);
    EXPECT_EQ(bb.optimal_value, brute.optimal_value) << write_canonical(inst);
    if (trial < 25) EXPECT_EQ(brute.optimal_value, enumerate_best(inst)) << write_canonical(inst);
    expect_valid(inst, bb);
    expect_valid(inst, brute);
  }
}

TEST(Exact, BoundsSandwich) {
  std::mt19937 rng(103);
  ngc::testing::RandomSpec spec;
  spec.max_stock = 10;
  spec.max_pieces = 4;
  spec.max_vars = 120;
  for (int trial = 0; trial < 15; ++trial) {
    const auto f = formulate(ngc::testing::random_instance(rng, spec, "r"));
    const auto x = lp_relaxation_start(f);
    double lp_value = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) lp_value += f.values[j] * x[j];
    const auto bb = solve_exact_bb(f);
    ASSERT_EQ(bb.status, ExactStatus::proved_optimal);
    EXPECT_GE(lp_value + 1e-9, static_cast<double>(bb.optimal_value));
    DcaConfig config;
    const auto dca = solve_dca(f, config);
    if (dca.feasible) EXPECT_GE(bb.optimal_value, *dca.total_value);
    std::vector<int> used(f.instance.pieces.size(), 0);
    for (const auto& p : bb.placements) ++used[p.piece];
    for (std::size_t i = 0; i < used.size(); ++i) EXPECT_LE(used[i], f.instance.pieces[i].max_count);
  }
}

TEST(Exact, TimeLimitKeepsIncumbent) {
  std::mt19937 rng(107);
  ngc::testing::RandomSpec spec;
  spec.max_stock = 20;
  spec.max_pieces = 8;
  spec.max_value = 50;
  spec.max_count = 4;
  spec.max_vars = 3000;
  Instance inst;
  do {
    inst = ngc::testing::random_instance(rng, spec, "big");
  } while (model_stats(inst).n_vars < 800);
  ExactOptions options;
  options.time_limit = 1e-3;
  const auto r = solve_exact_bb(inst, options);
  EXPECT_EQ(r.status, ExactStatus::time_limit);
  expect_valid(inst, r);
}
