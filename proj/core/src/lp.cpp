#include "ngc/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace ngc {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
// Step lengths and ratios closer than this are treated as equal.
constexpr double kTie = 1e-12;

enum class PhaseOutcome { optimal, limit, infeasible };

// Fixed pseudo-random factor in [1, 2) for variable j.
double spread(std::size_t j) {
  std::uint64_t h = static_cast<std::uint64_t>(j) + 0x9e3779b97f4a7c15ull;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
  h ^= h >> 31;
  return 1.0 + static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

// Working state of one solve. Variables are laid out as
// [structural 0..n) [slack n..n+m) [artificial n+m..).
//
// lb/ub are the working bounds and true_lb/true_ub the real ones. While
// perturbed, slack lower bounds sit slightly below zero, which loosens every
// row by a different small amount.
struct SimplexSolver::Engine {
  const Polytope& poly;
  const LpTolerances& tol;
  const LpLimits& limits;
  std::size_t m;
  std::size_t n;
  std::vector<std::size_t> artificial_row;
  std::vector<double> lb, ub, true_lb, true_ub, x, cost;
  std::vector<unsigned char> at_upper;
  std::vector<std::size_t> head;
  std::vector<std::size_t> where;  // basis position or kNone
  Eigen::MatrixXd binv;
  std::size_t iterations = 0;
  std::size_t pivots_since_refactor = 0;
  std::size_t max_iterations;
  bool perturbed = false;

  Engine(const Polytope& p, const LpTolerances& t, const LpLimits& l)
      : poly(p), tol(t), limits(l), m(p.rows()), n(p.cols()) {
    max_iterations = limits.max_iterations != 0 ? limits.max_iterations
                                                : std::max<std::size_t>(10000, 20 * (m + n));
  }

  std::size_t total() const { return n + m + artificial_row.size(); }

  template <class F>
  void for_column(std::size_t j, F&& f) const {
    if (j < n) {
      const auto rows = poly.matrix.col_rows(j);
      const auto vals = poly.matrix.col_values(j);
      for (std::size_t k = 0; k < rows.size(); ++k) f(rows[k], vals[k]);
    } else if (j < n + m) {
      f(j - n, 1.0);
    } else {
      f(artificial_row[j - n - m], -1.0);
    }
  }

  void set_bounds(std::span<const double> lower, std::span<const double> upper) {
    artificial_row.clear();
    true_lb.assign(lower.begin(), lower.end());
    true_ub.assign(upper.begin(), upper.end());
    true_lb.resize(n + m, 0.0);
    true_ub.resize(n + m, kInf);
    lb = true_lb;
    ub = true_ub;
  }

  // Slack basis; rows whose slack would start negative get an artificial.
  void install_cold() {
    at_upper.assign(n + m, 0);
    x.assign(n + m, 0.0);
    for (std::size_t j = 0; j < n; ++j) x[j] = lb[j];
    std::vector<double> residual(poly.rhs.begin(), poly.rhs.end());
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j] != 0.0) for_column(j, [&](std::size_t r, double a) { residual[r] -= a * x[j]; });
    }
    head.assign(m, kNone);
    binv = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t r = 0; r < m; ++r) {
      if (residual[r] >= 0.0) {
        head[r] = n + r;
        x[n + r] = residual[r];
        continue;
      }
      head[r] = n + m + artificial_row.size();
      artificial_row.push_back(r);
      for (auto* v : {&lb, &true_lb}) v->push_back(0.0);
      for (auto* v : {&ub, &true_ub}) v->push_back(kInf);
      at_upper.push_back(0);
      x.push_back(-residual[r]);
      binv(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = -1.0;
    }
    rebuild_where();
  }

  // Returns false if the saved basis is singular or infeasible.
  bool install_warm(const std::vector<std::size_t>& basis,
                    const std::vector<unsigned char>& upper_flags) {
    if (basis.size() != m || upper_flags.size() != n + m) return false;
    head = basis;
    at_upper = upper_flags;
    x.assign(n + m, 0.0);
    for (std::size_t j = 0; j < n + m; ++j) x[j] = at_upper[j] ? ub[j] : lb[j];
    rebuild_where();
    if (!refactor()) return false;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = head[i];
      if (x[j] < lb[j] - tol.feasibility || x[j] > ub[j] + tol.feasibility) return false;
    }
    return true;
  }

  void rebuild_where() {
    where.assign(total(), kNone);
    for (std::size_t i = 0; i < m; ++i) where[head[i]] = i;
  }

  // Recomputes the basis inverse from scratch and the basic values from the
  // nonbasic ones.
  bool refactor() {
    pivots_since_refactor = 0;
    if (m == 0) return true;
    const auto mi = static_cast<Eigen::Index>(m);
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(mi, mi);
    for (std::size_t i = 0; i < m; ++i) {
      for_column(head[i], [&](std::size_t r, double a) {
        basis(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = a;
      });
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
    if (!(std::abs(lu.determinant()) > 0.0)) return false;
    binv = lu.inverse();
    if (!binv.allFinite()) return false;
    recompute_basics();
    return true;
  }

  void recompute_basics() {
    Eigen::VectorXd residual(static_cast<Eigen::Index>(m));
    for (std::size_t r = 0; r < m; ++r) residual(static_cast<Eigen::Index>(r)) = poly.rhs[r];
    for (std::size_t j = 0; j < total(); ++j) {
      if (where[j] != kNone || x[j] == 0.0) continue;
      for_column(j, [&](std::size_t r, double a) {
        residual(static_cast<Eigen::Index>(r)) -= a * x[j];
      });
    }
    const Eigen::VectorXd xb = binv * residual;
    for (std::size_t i = 0; i < m; ++i) x[head[i]] = xb(static_cast<Eigen::Index>(i));
  }

  // Moves nonbasic variables onto the working bounds and recomputes the
  // basic values.
  void settle() {
    for (std::size_t j = 0; j < total(); ++j) {
      if (where[j] == kNone) x[j] = at_upper[j] ? ub[j] : lb[j];
    }
    refactor();
  }

  // Loosens the slack lower bounds. A basic variable pushed outside its
  // working bounds by the shift gets its bound widened past it.
  void perturb() {
    if (!(tol.perturbation > 0.0)) return;
    perturbed = true;
    const auto shift = [&](std::size_t j) {
      const double scale = j >= n && j < n + m ? 1.0 + std::abs(poly.rhs[j - n]) : 1.0;
      return tol.perturbation * scale * spread(j);
    };
    for (std::size_t r = 0; r < m; ++r) lb[n + r] = true_lb[n + r] - shift(n + r);
    settle();
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = head[i];
      if (x[j] < lb[j]) lb[j] = x[j] - shift(j);
      if (x[j] > ub[j]) ub[j] = x[j] + shift(j);
    }
  }

  void restore() {
    lb = true_lb;
    ub = true_ub;
    perturbed = false;
    settle();
  }

  bool deadline_passed() const {
    return limits.deadline && std::chrono::steady_clock::now() >= *limits.deadline;
  }

  bool out_of_budget() const {
    return iterations >= max_iterations || ((iterations & 15u) == 0 && deadline_passed());
  }

  void compute_duals(Eigen::VectorXd& pi) const {
    Eigen::VectorXd basic_cost(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) basic_cost(static_cast<Eigen::Index>(i)) = cost[head[i]];
    pi.noalias() = binv.transpose() * basic_cost;
  }

  double reduced_cost(std::size_t j, const Eigen::VectorXd& pi) const {
    double d = cost[j];
    for_column(j, [&](std::size_t r, double a) { d -= pi(static_cast<Eigen::Index>(r)) * a; });
    return d;
  }

  void column(std::size_t j, Eigen::VectorXd& alpha) const {
    alpha.setZero();
    for_column(j, [&](std::size_t r, double a) {
      alpha.noalias() += a * binv.col(static_cast<Eigen::Index>(r));
    });
  }

  // Replaces the basic variable at position pos by `entering`; alpha is the
  // entering column in the current basis.
  void pivot(std::size_t pos, std::size_t entering, Eigen::VectorXd& alpha) {
    const std::size_t leaving = head[pos];
    head[pos] = entering;
    where[entering] = pos;
    where[leaving] = kNone;
    const auto r = static_cast<Eigen::Index>(pos);
    Eigen::RowVectorXd pivot_row = binv.row(r) / alpha(r);
    alpha(r) = 0.0;
    binv.noalias() -= alpha * pivot_row;
    binv.row(r) = pivot_row;
    ++pivots_since_refactor;
  }

  PhaseOutcome run_primal() {
    const auto mi = static_cast<Eigen::Index>(m);
    Eigen::VectorXd pi(mi);
    Eigen::VectorXd alpha(mi);
    std::size_t degenerate_run = 0;

    for (;;) {
      if (out_of_budget()) return PhaseOutcome::limit;
      if (pivots_since_refactor >= limits.refactor_every) refactor();
      compute_duals(pi);

      // Pricing.
      const bool bland = degenerate_run >= limits.bland_after;
      std::size_t entering = kNone;
      double best_score = 0.0;
      for (std::size_t j = 0; j < total(); ++j) {
        if (where[j] != kNone || !(ub[j] > lb[j])) continue;
        const double d = reduced_cost(j, pi);
        double score = 0.0;
        if (!at_upper[j] && d < -tol.optimality) score = -d;
        if (at_upper[j] && d > tol.optimality) score = d;
        if (score <= 0.0) continue;
        if (bland) {
          entering = j;
          break;
        }
        if (score > best_score) {
          best_score = score;
          entering = j;
        }
      }
      if (entering == kNone) return PhaseOutcome::optimal;

      column(entering, alpha);
      const double dir = at_upper[entering] ? -1.0 : 1.0;

      // Ratio test in two passes: bound the step using bounds relaxed by the
      // feasibility tolerance, then take the largest pivot among the rows
      // that block within that bound.
      double step = ub[entering] - lb[entering];
      double limit = kInf;
      for (std::size_t i = 0; i < m; ++i) {
        const double delta = dir * alpha(static_cast<Eigen::Index>(i));
        const std::size_t j = head[i];
        if (delta > tol.pivot) {
          limit = std::min(limit, (x[j] - lb[j] + tol.feasibility) / delta);
        } else if (delta < -tol.pivot && ub[j] < kInf) {
          limit = std::min(limit, (ub[j] - x[j] + tol.feasibility) / -delta);
        }
      }
      std::size_t leave_pos = kNone;
      double best_ratio = kInf;
      if (limit < kInf && !(step <= limit)) {
        double best_pivot = 0.0;
        std::size_t best_var = kNone;
        for (std::size_t i = 0; i < m; ++i) {
          const double delta = dir * alpha(static_cast<Eigen::Index>(i));
          const std::size_t j = head[i];
          double ratio;
          if (delta > tol.pivot) {
            ratio = (x[j] - lb[j]) / delta;
          } else if (delta < -tol.pivot && ub[j] < kInf) {
            ratio = (ub[j] - x[j]) / -delta;
          } else {
            continue;
          }
          if (ratio > limit) continue;
          const double size = std::abs(delta);
          if (size > best_pivot * (1.0 + kTie) ||
              (size >= best_pivot * (1.0 - kTie) && j < best_var)) {
            best_pivot = size;
            best_var = j;
            best_ratio = std::max(ratio, 0.0);
            leave_pos = i;
          }
        }
      }
      if (leave_pos == kNone && !(step < kInf)) {
        throw std::logic_error("simplex: unbounded ray in a bounded problem");
      }
      const bool flip = leave_pos == kNone || step <= best_ratio + kTie;
      if (!flip) step = best_ratio;

      ++iterations;
      degenerate_run = step <= kTie ? degenerate_run + 1 : 0;

      if (step > 0.0) {
        for (std::size_t i = 0; i < m; ++i) {
          x[head[i]] -= dir * step * alpha(static_cast<Eigen::Index>(i));
        }
      }
      if (flip) {
        at_upper[entering] = !at_upper[entering];
        x[entering] = at_upper[entering] ? ub[entering] : lb[entering];
        continue;
      }
      x[entering] += dir * step;

      const std::size_t leaving = head[leave_pos];
      const bool to_lower = dir * alpha(static_cast<Eigen::Index>(leave_pos)) > 0.0;
      at_upper[leaving] = to_lower ? 0 : 1;
      x[leaving] = to_lower ? lb[leaving] : ub[leaving];
      pivot(leave_pos, entering, alpha);
    }
  }

  // Bounded dual simplex from a dual feasible basis. Clears the small primal
  // infeasibilities left behind when the true bounds come back.
  PhaseOutcome run_dual() {
    const auto mi = static_cast<Eigen::Index>(m);
    Eigen::VectorXd pi(mi);
    Eigen::VectorXd alpha(mi);
    std::vector<double> row(total()), reduced(total());

    for (;;) {
      if (out_of_budget()) return PhaseOutcome::limit;
      if (pivots_since_refactor >= limits.refactor_every) refactor();

      // Leaving: largest bound violation, lowest index on ties.
      std::size_t leave_pos = kNone;
      std::size_t worst_var = kNone;
      double worst = tol.feasibility;
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = head[i];
        const double v = std::max(lb[j] - x[j], x[j] - ub[j]);
        if (!(v > tol.feasibility)) continue;
        if (v > worst + kTie || (v >= worst - kTie && j < worst_var)) {
          worst = std::max(v, worst);
          worst_var = j;
          leave_pos = i;
        }
      }
      if (leave_pos == kNone) return PhaseOutcome::optimal;
      const std::size_t leaving = head[leave_pos];
      const bool below = x[leaving] < lb[leaving];
      const double target = below ? lb[leaving] : ub[leaving];

      // Raising nonbasic j moves the leaving variable by -row[j]. Candidates
      // move it toward the violated bound in their feasible direction.
      compute_duals(pi);
      const Eigen::RowVectorXd rho = binv.row(static_cast<Eigen::Index>(leave_pos));
      const auto eligible = [&](std::size_t j) {
        if (where[j] != kNone || !(ub[j] > lb[j])) return false;
        const double a = at_upper[j] ? -row[j] : row[j];
        return below ? a < -tol.pivot : a > tol.pivot;
      };
      double limit = kInf;
      for (std::size_t j = 0; j < total(); ++j) {
        row[j] = 0.0;
        if (where[j] != kNone || !(ub[j] > lb[j])) continue;
        double a = 0.0;
        for_column(j, [&](std::size_t r, double v) { a += rho(static_cast<Eigen::Index>(r)) * v; });
        row[j] = a;
        if (!eligible(j)) continue;
        reduced[j] = reduced_cost(j, pi);
        limit = std::min(limit, (std::abs(reduced[j]) + tol.optimality) / std::abs(a));
      }
      if (!(limit < kInf)) return PhaseOutcome::infeasible;
      std::size_t entering = kNone;
      double best_pivot = 0.0;
      for (std::size_t j = 0; j < total(); ++j) {
        if (!eligible(j) || std::abs(reduced[j]) / std::abs(row[j]) > limit) continue;
        if (std::abs(row[j]) > best_pivot * (1.0 + kTie)) {
          best_pivot = std::abs(row[j]);
          entering = j;
        }
      }

      ++iterations;
      column(entering, alpha);
      const double theta = (x[leaving] - target) / alpha(static_cast<Eigen::Index>(leave_pos));
      for (std::size_t i = 0; i < m; ++i) x[head[i]] -= theta * alpha(static_cast<Eigen::Index>(i));
      x[entering] += theta;
      x[leaving] = target;
      at_upper[leaving] = below ? 0 : 1;
      pivot(leave_pos, entering, alpha);
    }
  }

  // Perturbed primal pass, then exact cleanup on the true bounds.
  PhaseOutcome optimize() {
    perturb();
    PhaseOutcome outcome = run_primal();
    if (!perturbed) return outcome;
    restore();
    if (outcome != PhaseOutcome::optimal) return outcome;
    outcome = run_dual();
    if (outcome != PhaseOutcome::optimal) return outcome;
    return run_primal();
  }
};

SimplexSolver::SimplexSolver(const Polytope& polytope, LpTolerances tol)
    : polytope_(&polytope), tol_(tol) {}
SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

LpSolution SimplexSolver::solve(std::span<const double> cost, const LpLimits& limits) {
  return solve(cost, polytope_->lower, polytope_->upper, limits);
}

LpSolution SimplexSolver::solve(std::span<const double> cost, std::span<const double> lower,
                                std::span<const double> upper, const LpLimits& limits) {
  const Polytope& poly = *polytope_;
  const std::size_t n = poly.cols();
  const std::size_t m = poly.rows();
  if (cost.size() != n || lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("solve_lp: cost/bounds length does not match polytope columns");
  }
  if (poly.rhs.size() != m) throw std::invalid_argument("solve_lp: rhs length mismatch");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(lower[j]) || !std::isfinite(cost[j]) || std::isnan(upper[j])) {
      throw std::invalid_argument("solve_lp: lower bounds and costs must be finite");
    }
  }

  LpSolution out;
  for (std::size_t j = 0; j < n; ++j) {
    if (lower[j] > upper[j]) {
      out.status = LpStatus::infeasible;
      return out;
    }
  }

  Engine engine(poly, tol_, limits);
  engine.set_bounds(lower, upper);
  const bool same_bounds = std::equal(lower.begin(), lower.end(), saved_lower_.begin(),
                                      saved_lower_.end()) &&
                           std::equal(upper.begin(), upper.end(), saved_upper_.begin(),
                                      saved_upper_.end());
  if (!(warm_start_ && same_bounds && engine.install_warm(saved_basis_, saved_at_upper_))) {
    engine.set_bounds(lower, upper);
    engine.install_cold();
  }
  const auto fail = [&](LpStatus status) {
    out.status = status;
    out.iterations = engine.iterations;
    saved_basis_.clear();
    return out;
  };

  // Phase 1: drive artificials to zero.
  if (!engine.artificial_row.empty()) {
    engine.cost.assign(engine.total(), 0.0);
    for (std::size_t a = n + m; a < engine.total(); ++a) engine.cost[a] = 1.0;
    const PhaseOutcome phase1 = engine.optimize();
    if (phase1 == PhaseOutcome::limit) return fail(LpStatus::iteration_limit);
    double infeasibility = 0.0;
    for (std::size_t a = n + m; a < engine.total(); ++a) infeasibility += engine.x[a];
    if (phase1 == PhaseOutcome::infeasible ||
        infeasibility > tol_.feasibility * static_cast<double>(engine.artificial_row.size())) {
      return fail(LpStatus::infeasible);
    }
    for (std::size_t a = n + m; a < engine.total(); ++a) {
      engine.ub[a] = engine.true_ub[a] = 0.0;
      if (engine.where[a] == kNone) engine.x[a] = 0.0;
    }
  }

  engine.cost.assign(engine.total(), 0.0);
  std::copy(cost.begin(), cost.end(), engine.cost.begin());
  const PhaseOutcome outcome = engine.optimize();
  if (outcome == PhaseOutcome::infeasible) return fail(LpStatus::infeasible);
  engine.refactor();

  out.iterations = engine.iterations;
  out.status = outcome == PhaseOutcome::optimal ? LpStatus::optimal : LpStatus::iteration_limit;
  out.x.assign(engine.x.begin(), engine.x.begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t j = 0; j < n; ++j) {
    double& v = out.x[j];
    if (std::abs(v - lower[j]) <= tol_.feasibility) v = lower[j];
    if (std::abs(v - upper[j]) <= tol_.feasibility) v = upper[j];
  }
  out.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) out.objective += cost[j] * out.x[j];
  out.basis = engine.head;

  const bool clean_basis = std::none_of(engine.head.begin(), engine.head.end(),
                                        [&](std::size_t j) { return j >= n + m; });
  if (out.status == LpStatus::optimal && clean_basis) {
    saved_basis_ = engine.head;
    saved_at_upper_.assign(engine.at_upper.begin(),
                           engine.at_upper.begin() + static_cast<std::ptrdiff_t>(n + m));
    saved_lower_.assign(lower.begin(), lower.end());
    saved_upper_.assign(upper.begin(), upper.end());
  } else {
    saved_basis_.clear();
  }
  return out;
}

LpSolution solve_lp(const Polytope& polytope, std::span<const double> cost,
                    const LpLimits& limits) {
  return SimplexSolver(polytope).solve(cost, limits);
}

LpSolution solve_lp(const Polytope& polytope, std::span<const double> cost,
                    std::span<const double> lower, std::span<const double> upper,
                    const LpLimits& limits) {
  return SimplexSolver(polytope).solve(cost, lower, upper, limits);
}

}  // namespace ngc
