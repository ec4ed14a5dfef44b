#include "ngc/exact.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ngc/io.hpp"
#include "ngc/lp.hpp"

namespace ngc {

const char* to_string(ExactStatus status) {
  return status == ExactStatus::proved_optimal ? "proved_optimal" : "time_limit";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Fixing {
  std::size_t column;
  double value;
};

struct Node {
  std::vector<Fixing> fixings;
};

}  // namespace

ExactResult solve_exact_bb(const Formulation& f, const ExactOptions& options) {
  if (!(options.time_limit > 0.0)) throw std::invalid_argument("time limit must be positive");
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(options.time_limit));

  ExactResult result;
  auto offer = [&](const std::vector<Placement>& placements) {
    if (!feasibility_check(f.instance, placements).ok()) return;
    const long long value = placements_value(f.instance, placements);
    if (value > result.optimal_value) {
      result.optimal_value = value;
      result.placements = placements;
    }
  };
  if (options.incumbent) offer(*options.incumbent);
  if (options.seed_with_dca && f.size() > 0) {
    try {
      DcaConfig config = options.dca;
      config.deadline = deadline;
      const DcaResult dca = solve_dca(f, config);
      if (dca.feasible) offer(dca.placements);
    } catch (const std::exception&) {
      // A failed seed only costs search time.
    }
  }

  const std::size_t n = f.size();
  std::vector<double> cost(n);
  for (std::size_t j = 0; j < n; ++j) cost[j] = -f.values[j];

  SimplexSolver solver(f.full);
  LpLimits limits;
  limits.deadline = deadline;

  std::vector<Node> stack{Node{}};
  std::vector<double> lower(n), upper(n);
  bool timed_out = false;

  while (!stack.empty()) {
    if (Clock::now() >= deadline) {
      timed_out = true;
      break;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    ++result.nodes_explored;

    std::fill(lower.begin(), lower.end(), 0.0);
    std::fill(upper.begin(), upper.end(), 1.0);
    for (const Fixing& fx : node.fixings) lower[fx.column] = upper[fx.column] = fx.value;

    const LpSolution lp = solver.solve(cost, lower, upper, limits);
    if (lp.status == LpStatus::infeasible) continue;
    if (lp.status != LpStatus::optimal) {
      timed_out = true;
      break;
    }
    // Integer objective: the node can only beat the incumbent by at least 1.
    const auto bound = static_cast<long long>(std::floor(-lp.objective + 1e-9));
    if (bound <= result.optimal_value) continue;

    std::size_t branch = n;
    double best_frac = 1e-9;
    for (std::size_t j = 0; j < n; ++j) {
      const double frac = std::min(lp.x[j], 1.0 - lp.x[j]);
      if (frac > best_frac) {
        best_frac = frac;
        branch = j;
      }
    }
    if (branch == n) {
      offer(placements_from_vector(f.index, lp.x));
      continue;
    }

    Node zero{node.fixings};
    zero.fixings.push_back({branch, 0.0});
    node.fixings.push_back({branch, 1.0});
    stack.push_back(std::move(zero));
    stack.push_back(std::move(node));
  }

  result.status = timed_out ? ExactStatus::time_limit : ExactStatus::proved_optimal;
  result.wall_time = seconds_since(start);
  return result;
}

ExactResult solve_exact_bb(const Instance& instance, const ExactOptions& options) {
  return solve_exact_bb(formulate(instance), options);
}

namespace {

// Depth-first enumeration over columns with a cell occupancy grid.
class Enumerator {
 public:
  Enumerator(const Instance& instance, const VarIndex& index)
      : instance_(instance),
        index_(index),
        occupied_(static_cast<std::size_t>(instance.stock_length) *
                      static_cast<std::size_t>(instance.stock_width),
                  0),
        used_(instance.pieces.size(), 0) {}

  void run(ExactResult& result) {
    visit(0);
    result.optimal_value = best_value_;
    result.placements = best_;
    result.nodes_explored = leaves_;
  }

 private:
  bool fits(const Column& c) const {
    const Piece& piece = instance_.pieces[c.piece];
    if (used_[c.piece] >= piece.max_count) return false;
    if (c.x < 0 || c.y < 0 || c.x + piece.length > instance_.stock_length ||
        c.y + piece.width > instance_.stock_width) {
      return false;
    }
    for (int y = c.y; y < c.y + piece.width; ++y) {
      for (int x = c.x; x < c.x + piece.length; ++x) {
        if (occupied_[cell(x, y)]) return false;
      }
    }
    return true;
  }

  void mark(const Column& c, char value) {
    const Piece& piece = instance_.pieces[c.piece];
    for (int y = c.y; y < c.y + piece.width; ++y) {
      for (int x = c.x; x < c.x + piece.length; ++x) occupied_[cell(x, y)] = value;
    }
  }

  std::size_t cell(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(instance_.stock_length) +
           static_cast<std::size_t>(x);
  }

  void visit(std::size_t j) {
    if (j == index_.size()) {
      ++leaves_;
      if (value_ > best_value_) {
        best_value_ = value_;
        best_ = current_;
      }
      return;
    }
    visit(j + 1);
    const Column& c = index_.column(j);
    if (!fits(c)) return;
    mark(c, 1);
    ++used_[c.piece];
    value_ += instance_.pieces[c.piece].value;
    current_.push_back({c.piece, c.x, c.y});
    visit(j + 1);
    current_.pop_back();
    value_ -= instance_.pieces[c.piece].value;
    --used_[c.piece];
    mark(c, 0);
  }

  const Instance& instance_;
  const VarIndex& index_;
  std::vector<char> occupied_;
  std::vector<int> used_;
  std::vector<Placement> current_;
  std::vector<Placement> best_;
  long long value_ = 0;
  long long best_value_ = 0;
  std::size_t leaves_ = 0;
};

}  // namespace

ExactResult solve_brute_force(const Instance& instance, std::size_t var_cap) {
  const auto start = Clock::now();
  const VarIndex index(compute_positions(instance));
  if (index.size() > var_cap) {
    throw std::invalid_argument("brute force refused: " + std::to_string(index.size()) +
                                " columns exceed the cap of " + std::to_string(var_cap));
  }
  ExactResult result;
  Enumerator(instance, index).run(result);
  result.status = ExactStatus::proved_optimal;
  result.wall_time = seconds_since(start);
  return result;
}

}  // namespace ngc
