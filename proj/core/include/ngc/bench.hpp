#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ngc/model.hpp"

namespace ngc {

/// Published figures for the twelve OR-Library ngcut test problems:
/// model sizes, the MIP solver's optimum and the DCA result with its
/// penalty parameters.
struct ReferenceRow {
  int index = 0;
  int stock_length = 0;
  int stock_width = 0;
  std::size_t pieces = 0;
  std::size_t x_positions = 0;
  std::size_t y_positions = 0;
  std::size_t n_vars = 0;
  std::size_t n_cons = 0;
  double mip_seconds = 0.0;
  long long mip_value = 0;
  double dca_seconds = 0.0;
  long long dca_value = 0;
  std::size_t dca_iterations = 0;
  double t = 0.0;
  double u = 0.0;
};

std::span<const ReferenceRow> reference_rows();
std::optional<ReferenceRow> reference_row(int index);

struct PenaltyPair {
  double t = 0.0;
  double u = 0.0;
};

/// Lines "<index> <t> <u>"; '#' starts a comment. Throws ParseError.
std::map<int, PenaltyPair> parse_penalty_file(std::string_view text);

/// (t, u) for an instance index: explicit map first, then the reference
/// table, then the DCA defaults.
PenaltyPair penalty_for(int index, const std::map<int, PenaltyPair>& overrides);

struct BenchRow {
  int index = 0;
  std::string instance;
  int stock_length = 0;
  int stock_width = 0;
  std::size_t pieces = 0;
  std::size_t x_positions = 0;
  std::size_t y_positions = 0;
  std::size_t n_vars = 0;
  std::size_t n_cons = 0;
  std::string algorithm;
  std::optional<long long> objective;
  std::size_t iterations = 0;
  double wall_time = 0.0;
  double t = 0.0;
  double u = 0.0;
  std::string status;  ///< "feasible", "fractional", "proved_optimal", "time_limit", "error: ..."
};

struct BenchOptions {
  bool with_exact = false;
  double exact_time_limit = 60.0;
  double epsilon = 1e-6;
  std::size_t max_iter = 500;
  std::size_t jobs = 1;
};

/// Runs DCA (and optionally the exact solver) on one instance. Failures are
/// recorded in the status column instead of thrown.
std::vector<BenchRow> bench_instance(int index, const Instance& instance, PenaltyPair penalty,
                                     const BenchOptions& options);

/// All instances, rows ordered by instance index regardless of completion
/// order. Up to options.jobs instances run concurrently.
std::vector<BenchRow> bench_all(std::span<const Instance> instances,
                                const std::map<int, PenaltyPair>& overrides,
                                const BenchOptions& options);

std::string format_bench_table(std::span<const BenchRow> rows);
std::string format_bench_csv(std::span<const BenchRow> rows);

}  // namespace ngc
