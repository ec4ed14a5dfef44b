#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ngc/formulation.hpp"

namespace ngc {

enum class LpStatus { optimal, infeasible, iteration_limit };

const char* to_string(LpStatus status);

struct LpLimits {
  /// 0 selects max(10000, 20 * (rows + cols)).
  std::size_t max_iterations = 0;
  /// Reaching the deadline is reported as iteration_limit.
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Consecutive degenerate pivots before pricing switches to Bland's rule.
  std::size_t bland_after = 50;
  /// Pivots between refactorizations of the basis inverse.
  std::size_t refactor_every = 200;
};

struct LpTolerances {
  double feasibility = 1e-9;
  double optimality = 1e-9;
  double pivot = 1e-9;
  /// Scale of the row loosening applied while pivoting; 0 disables it.
  double perturbation = 1e-7;
};

struct LpSolution {
  LpStatus status = LpStatus::iteration_limit;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
  /// Basic variables at termination: indices < cols are structural, the
  /// rest are row slacks (cols + row).
  std::vector<std::size_t> basis;
};

/// Bounded-variable primal simplex over {x : Mx <= rhs, lower <= x <= upper}.
///
/// A revised method with a dense explicit basis inverse. Phase 1 uses one
/// artificial per row whose slack would start negative. Pricing is Dantzig
/// (largest reduced cost, lowest index on ties) and falls back to Bland's
/// rule after a run of degenerate pivots. The ratio test prefers a bound
/// flip, then the largest pivot among near-minimal ratios, then the lowest
/// index.
///
/// Rows are loosened by tiny fixed amounts while pivoting so that degenerate
/// vertices do not stall the method. The true rows are then restored and a
/// few dual simplex pivots recover an optimal basic solution of the original
/// problem. No randomness: identical inputs produce bit-identical outputs.
///
/// A solver keeps its final basis. With warm starts enabled, the next call
/// on the same bounds starts from it instead of the slack basis.
class SimplexSolver {
 public:
  explicit SimplexSolver(const Polytope& polytope, LpTolerances tol = {});
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;
  SimplexSolver(const SimplexSolver&) = delete;
  SimplexSolver& operator=(const SimplexSolver&) = delete;

  /// Minimizes cost . x with the polytope's own bounds.
  LpSolution solve(std::span<const double> cost, const LpLimits& limits = {});
  /// Minimizes cost . x with overriding variable bounds.
  LpSolution solve(std::span<const double> cost, std::span<const double> lower,
                   std::span<const double> upper, const LpLimits& limits = {});

  void set_warm_start(bool enabled) { warm_start_ = enabled; }

 private:
  struct Engine;
  const Polytope* polytope_;
  LpTolerances tol_;
  bool warm_start_ = false;
  std::vector<std::size_t> saved_basis_;
  std::vector<double> saved_lower_, saved_upper_;
  std::vector<unsigned char> saved_at_upper_;
};

LpSolution solve_lp(const Polytope& polytope, std::span<const double> cost,
                    const LpLimits& limits = {});

LpSolution solve_lp(const Polytope& polytope, std::span<const double> cost,
                    std::span<const double> lower, std::span<const double> upper,
                    const LpLimits& limits = {});

}  // namespace ngc
