#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ngc/formulation.hpp"
#include "ngc/lp.hpp"

namespace ngc {

enum class InitStrategy { initial_dca, zeros, ones, lp_relaxation, given };

const char* to_string(InitStrategy strategy);
/// Accepts "initial-dca", "zeros", "ones", "lp" (and the enum spellings).
std::optional<InitStrategy> parse_init_strategy(const std::string& text);

struct DcaConfig {
  double t = 50.0;   ///< exact-penalty weight on the integrality gap
  double u = 100.0;  ///< weight on the overlap violation in the start-point search
  double epsilon = 1e-6;
  std::size_t max_iter = 500;
  InitStrategy init = InitStrategy::initial_dca;
  std::vector<double> x0;  ///< used when init == given
  double rounding_tol = 1e-6;
  /// Keep every iterate in the trace, not just its objective value.
  bool keep_iterates = false;
  /// Reuse the previous optimal basis between consecutive LPs.
  bool warm_start = false;
  /// LP solves stop here; a run that reaches it throws std::runtime_error.
  std::optional<std::chrono::steady_clock::time_point> deadline;

  /// Throws std::invalid_argument if a parameter is out of range.
  void validate() const;
};

enum class Termination { displacement_below_epsilon, max_iter };

const char* to_string(Termination termination);

struct DcaTrace {
  /// Objective at x^0, x^1, ..., x^K. Entry 0 is +inf when x^0 lies outside
  /// the feasible polytope (the objective includes its indicator).
  std::vector<double> objective_values;
  std::vector<double> displacements;
  std::vector<std::vector<double>> iterates;  ///< only with keep_iterates
  std::size_t iterations = 0;
  std::size_t lp_iterations = 0;
  Termination termination = Termination::max_iter;
};

struct DcaResult {
  std::vector<double> x_final;
  double objective_final = 0.0;  ///< penalized objective at x_final
  std::optional<std::vector<std::uint8_t>> rounded;
  std::optional<long long> total_value;
  std::vector<Placement> placements;
  bool feasible = false;
  DcaTrace trace;
  /// Trace of the start-point search when init == initial_dca.
  std::optional<DcaTrace> start_trace;
  /// Columns that failed the rounding tolerance, or rounding diagnostics.
  std::vector<std::size_t> fractional;
  std::vector<std::string> diagnostics;
};

/// Integrality gap sum_j x_j (1 - x_j): zero exactly on binary vectors.
double integrality_penalty(std::span<const double> x);

/// -v.x + t * integrality_penalty(x).
double penalized_objective(const Formulation& f, std::span<const double> x, double t);

/// Gradient of the convex part t * sum_j x_j (x_j - 1): y_j = t (2 x_j - 1).
std::vector<double> penalty_gradient(std::span<const double> x, double t);

/// Largest overlap-row excess over 1, floored at zero.
double overlap_violation(const Formulation& f, std::span<const double> x);

/// -v.x + t * integrality_penalty(x) + u * overlap_violation(x).
double relaxed_objective(const Formulation& f, std::span<const double> x, double t, double u);

/// One DCA step: the LP optimum over the full polytope of
/// (-v - penalty_gradient(x, t)) . x.
LpSolution dca_step(const Formulation& f, std::span<const double> x, double t);

/// Runs the main DCA loop from x0 and rounds the final iterate.
DcaResult run_dca(const Formulation& f, const DcaConfig& config, std::span<const double> x0);

/// Runs the configured start-point strategy, then run_dca.
DcaResult solve_dca(const Formulation& f, const DcaConfig& config);

/// Start-point subgradient. Equal to penalty_gradient when no overlap row is
/// violated; otherwise the most violated cell (lexicographically smallest on
/// ties) has u subtracted from every column covering it.
std::vector<double> start_subgradient(const Formulation& f, std::span<const double> x, double t,
                                      double u);

/// Start-point search over the availability-only polytope, initialised at the
/// LP relaxation optimum. The returned point may violate overlap rows.
std::vector<double> run_initial_dca(const Formulation& f, const DcaConfig& config,
                                    DcaTrace* trace = nullptr);

/// Optimum of the LP relaxation min { -v.x : x in A }.
std::vector<double> lp_relaxation_start(const Formulation& f, const LpLimits& limits = {});

struct RoundingOutcome {
  bool accepted = false;
  std::vector<std::uint8_t> binary;
  std::vector<Placement> placements;
  long long total_value = 0;
  std::vector<std::size_t> fractional;  ///< columns farther than tol from {0,1}
  std::vector<std::string> violations;  ///< geometric check failures
};

/// Rounds x if every component is within tol of 0 or 1 and verifies the
/// result geometrically. Never repairs.
RoundingOutcome round_and_check(const Formulation& f, std::span<const double> x, double tol);

}  // namespace ngc
