#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ngc/dca.hpp"
#include "ngc/formulation.hpp"
#include "ngc/model.hpp"

namespace ngc {

enum class ExactStatus { proved_optimal, time_limit };

const char* to_string(ExactStatus status);

struct ExactResult {
  long long optimal_value = 0;  ///< best incumbent when status is time_limit
  std::vector<Placement> placements;
  std::size_t nodes_explored = 0;
  ExactStatus status = ExactStatus::proved_optimal;
  double wall_time = 0.0;
};

struct ExactOptions {
  double time_limit = 60.0;  ///< seconds, must be positive
  /// Start from the rounded DCA solution when it is feasible.
  bool seed_with_dca = true;
  DcaConfig dca;
  /// Additional starting incumbent; ignored unless geometrically feasible.
  std::optional<std::vector<Placement>> incumbent;
};

/// Depth-first branch-and-bound on the 0-1 model with LP bounds over the
/// full polytope. Branches on the most fractional column (lowest index on
/// ties), exploring x_j = 1 before x_j = 0.
ExactResult solve_exact_bb(const Formulation& f, const ExactOptions& options = {});
ExactResult solve_exact_bb(const Instance& instance, const ExactOptions& options = {});

/// Exhaustive enumeration of every geometrically feasible 0-1 vector.
/// Throws std::invalid_argument when the instance has more than var_cap
/// columns.
ExactResult solve_brute_force(const Instance& instance, std::size_t var_cap = 20);

}  // namespace ngc
