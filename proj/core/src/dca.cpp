#include "ngc/dca.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ngc/io.hpp"

namespace ngc {

const char* to_string(InitStrategy strategy) {
  switch (strategy) {
    case InitStrategy::initial_dca: return "initial-dca";
    case InitStrategy::zeros: return "zeros";
    case InitStrategy::ones: return "ones";
    case InitStrategy::lp_relaxation: return "lp";
    case InitStrategy::given: return "given";
  }
  return "unknown";
}

std::optional<InitStrategy> parse_init_strategy(const std::string& text) {
  if (text == "initial-dca" || text == "initial_dca") return InitStrategy::initial_dca;
  if (text == "zeros") return InitStrategy::zeros;
  if (text == "ones") return InitStrategy::ones;
  if (text == "lp" || text == "lp_relaxation" || text == "lp-relaxation") return InitStrategy::lp_relaxation;
  if (text == "given") return InitStrategy::given;
  return std::nullopt;
}

const char* to_string(Termination termination) {
  return termination == Termination::displacement_below_epsilon ? "displacement_below_epsilon"
                                                                : "max_iter";
}

void DcaConfig::validate() const {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be positive and finite");
  if (!(u > 0.0) || !std::isfinite(u)) throw std::invalid_argument("u must be positive and finite");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (!(rounding_tol >= 0.0 && rounding_tol < 0.5)) {
    throw std::invalid_argument("rounding tolerance must lie in [0, 0.5)");
  }
}

namespace {

void check_length(const Formulation& f, std::span<const double> x) {
  if (x.size() != f.size()) {
    throw std::invalid_argument("vector of length " + std::to_string(x.size()) + " for " +
                                std::to_string(f.size()) + " columns");
  }
}

void check_unit_box(std::span<const double> x) {
  for (double v : x) {
    if (!(v >= -1e-9 && v <= 1.0 + 1e-9)) throw std::invalid_argument("start point outside [0,1]^n");
  }
}

std::vector<double> linearized_cost(const Formulation& f, std::span<const double> gradient) {
  std::vector<double> cost(f.size());
  for (std::size_t j = 0; j < cost.size(); ++j) cost[j] = -f.values[j] - gradient[j];
  return cost;
}

double distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(sum);
}

LpSolution require_optimal(LpSolution sol, const char* where) {
  if (sol.status != LpStatus::optimal) {
    throw std::runtime_error(std::string(where) + ": LP subproblem ended with status " +
                             to_string(sol.status));
  }
  return sol;
}

LpLimits lp_limits(const DcaConfig& config) {
  LpLimits limits;
  limits.deadline = config.deadline;
  return limits;
}

// Index of the most violated overlap row, or nullopt if none exceeds 1.
std::optional<std::size_t> most_violated_row(const Formulation& f, std::span<const double> x,
                                             double* excess = nullptr) {
  const auto activity = f.full.matrix.multiply(x);
  std::optional<std::size_t> best;
  double best_excess = 0.0;
  for (std::size_t r = 0; r < activity.size(); ++r) {
    if (!std::holds_alternative<OverlapRow>(f.full.labels[r])) continue;
    const double e = activity[r] - 1.0;
    // Rows are in lexicographic (r, s) order, so the first maximum wins ties.
    if (e > best_excess) {
      best_excess = e;
      best = r;
    }
  }
  if (excess) *excess = best_excess;
  // Excess within LP noise does not count as a violated row.
  return best_excess > 1e-9 ? best : std::nullopt;
}

}  // namespace

double integrality_penalty(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v * (1.0 - v);
  return sum;
}

double penalized_objective(const Formulation& f, std::span<const double> x, double t) {
  check_length(f, x);
  double linear = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) linear -= f.values[j] * x[j];
  return linear + t * integrality_penalty(x);
}

std::vector<double> penalty_gradient(std::span<const double> x, double t) {
  std::vector<double> y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) y[j] = t * (2.0 * x[j] - 1.0);
  return y;
}

double overlap_violation(const Formulation& f, std::span<const double> x) {
  check_length(f, x);
  double excess = 0.0;
  most_violated_row(f, x, &excess);
  return excess;
}

double relaxed_objective(const Formulation& f, std::span<const double> x, double t, double u) {
  return penalized_objective(f, x, t) + u * overlap_violation(f, x);
}

LpSolution dca_step(const Formulation& f, std::span<const double> x, double t) {
  check_length(f, x);
  const auto cost = linearized_cost(f, penalty_gradient(x, t));
  return solve_lp(f.full, cost);
}

std::vector<double> start_subgradient(const Formulation& f, std::span<const double> x, double t,
                                      double u) {
  check_length(f, x);
  auto y = penalty_gradient(x, t);
  const auto row = most_violated_row(f, x);
  if (!row) return y;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const auto rows = f.full.matrix.col_rows(j);
    const auto vals = f.full.matrix.col_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[k] == *row) y[j] -= u * vals[k];
    }
  }
  return y;
}

std::vector<double> lp_relaxation_start(const Formulation& f, const LpLimits& limits) {
  std::vector<double> cost(f.size());
  for (std::size_t j = 0; j < cost.size(); ++j) cost[j] = -f.values[j];
  return require_optimal(solve_lp(f.full, cost, limits), "LP relaxation").x;
}

std::vector<double> run_initial_dca(const Formulation& f, const DcaConfig& config,
                                    DcaTrace* trace) {
  config.validate();
  const LpLimits limits = lp_limits(config);
  std::vector<double> x = lp_relaxation_start(f, limits);
  DcaTrace local;
  local.termination = Termination::max_iter;
  local.objective_values.push_back(relaxed_objective(f, x, config.t, config.u));
  if (config.keep_iterates) local.iterates.push_back(x);

  SimplexSolver solver(f.relaxed);
  solver.set_warm_start(config.warm_start);
  for (std::size_t k = 0; k < config.max_iter; ++k) {
    const auto cost = linearized_cost(f, start_subgradient(f, x, config.t, config.u));
    const LpSolution sol = require_optimal(solver.solve(cost, limits), "start-point search");
    const double step = distance(sol.x, x);
    x = sol.x;
    ++local.iterations;
    local.lp_iterations += sol.iterations;
    local.displacements.push_back(step);
    local.objective_values.push_back(relaxed_objective(f, x, config.t, config.u));
    if (config.keep_iterates) local.iterates.push_back(x);
    if (step <= config.epsilon) {
      local.termination = Termination::displacement_below_epsilon;
      break;
    }
  }
  if (trace) *trace = std::move(local);
  return x;
}

RoundingOutcome round_and_check(const Formulation& f, std::span<const double> x, double tol) {
  check_length(f, x);
  RoundingOutcome out;
  out.binary.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double nearest = x[j] >= 0.5 ? 1.0 : 0.0;
    if (std::abs(x[j] - nearest) > tol) out.fractional.push_back(j);
    out.binary[j] = static_cast<std::uint8_t>(nearest);
  }
  if (!out.fractional.empty()) {
    out.binary.clear();
    return out;
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (out.binary[j]) {
      const Column& c = f.index.column(j);
      out.placements.push_back({c.piece, c.x, c.y});
    }
  }
  const auto report = feasibility_check(f.instance, out.placements);
  for (const auto& v : report.violations) out.violations.push_back(v.message);
  if (!report.ok()) return out;
  out.accepted = true;
  out.total_value = placements_value(f.instance, out.placements);
  return out;
}

DcaResult run_dca(const Formulation& f, const DcaConfig& config, std::span<const double> x0) {
  config.validate();
  check_length(f, x0);
  check_unit_box(x0);

  DcaResult result;
  DcaTrace& trace = result.trace;
  std::vector<double> x(x0.begin(), x0.end());
  trace.objective_values.push_back(f.full.contains(x, 1e-9)
                                       ? penalized_objective(f, x, config.t)
                                       : std::numeric_limits<double>::infinity());
  if (config.keep_iterates) trace.iterates.push_back(x);

  const LpLimits limits = lp_limits(config);
  SimplexSolver solver(f.full);
  solver.set_warm_start(config.warm_start);
  for (std::size_t k = 0; k < config.max_iter; ++k) {
    const auto cost = linearized_cost(f, penalty_gradient(x, config.t));
    const LpSolution sol = require_optimal(solver.solve(cost, limits), "DCA");
    const double step = distance(sol.x, x);
    x = sol.x;
    ++trace.iterations;
    trace.lp_iterations += sol.iterations;
    trace.displacements.push_back(step);
    trace.objective_values.push_back(penalized_objective(f, x, config.t));
    if (config.keep_iterates) trace.iterates.push_back(x);
    if (step <= config.epsilon) {
      trace.termination = Termination::displacement_below_epsilon;
      break;
    }
  }

  result.objective_final = penalized_objective(f, x, config.t);
  auto rounding = round_and_check(f, x, config.rounding_tol);
  result.x_final = std::move(x);
  result.fractional = std::move(rounding.fractional);
  result.diagnostics = std::move(rounding.violations);
  if (rounding.accepted) {
    result.feasible = true;
    result.rounded = std::move(rounding.binary);
    result.total_value = rounding.total_value;
    result.placements = std::move(rounding.placements);
  }
  return result;
}

DcaResult solve_dca(const Formulation& f, const DcaConfig& config) {
  config.validate();
  std::vector<double> x0;
  std::optional<DcaTrace> start_trace;
  switch (config.init) {
    case InitStrategy::initial_dca:
      start_trace.emplace();
      x0 = run_initial_dca(f, config, &*start_trace);
      break;
    case InitStrategy::zeros: x0.assign(f.size(), 0.0); break;
    case InitStrategy::ones: x0.assign(f.size(), 1.0); break;
    case InitStrategy::lp_relaxation: x0 = lp_relaxation_start(f, lp_limits(config)); break;
    case InitStrategy::given: x0 = config.x0; break;
  }
  DcaResult result = run_dca(f, config, x0);
  result.start_trace = std::move(start_trace);
  return result;
}

}  // namespace ngc
