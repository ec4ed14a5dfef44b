#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "ngc/model.hpp"

namespace ngc {

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

/// Column-compressed sparse matrix. Built from triplets; at most one entry
/// per (row, col) and every index in range.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  /// Throws std::invalid_argument on out-of-range indices, duplicate
  /// positions or non-finite values. Explicit zeros are dropped.
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const { return values_.size(); }

  std::span<const std::size_t> col_rows(std::size_t col) const {
    return {row_index_.data() + col_start_[col], col_start_[col + 1] - col_start_[col]};
  }
  std::span<const double> col_values(std::size_t col) const {
    return {values_.data() + col_start_[col], col_start_[col + 1] - col_start_[col]};
  }

  /// Entries in column-major order.
  std::vector<Triplet> entries() const;
  /// y = M x
  std::vector<double> multiply(std::span<const double> x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> col_start_{0};
  std::vector<std::size_t> row_index_;
  std::vector<double> values_;
};

struct OverlapRow {
  int r = 0;
  int s = 0;
  friend bool operator==(const OverlapRow&, const OverlapRow&) = default;
};

struct AvailabilityRow {
  std::size_t piece = 0;
  friend bool operator==(const AvailabilityRow&, const AvailabilityRow&) = default;
};

using RowLabel = std::variant<OverlapRow, AvailabilityRow>;

/// { x : matrix x <= rhs, lower <= x <= upper }.
struct Polytope {
  SparseMatrix matrix;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<RowLabel> labels;

  std::size_t rows() const { return matrix.rows(); }
  std::size_t cols() const { return matrix.cols(); }

  /// Largest violation over rows and bounds (0 when x is feasible).
  double max_violation(std::span<const double> x) const;
  bool contains(std::span<const double> x, double tol = 1e-9) const;
};

struct FormulationOptions {
  /// Drop overlap rows with no nonzero coefficient. Off by default so that
  /// the row count equals |P||Q| + m.
  bool drop_empty_rows = false;
};

/// Full non-overlap polytope: one row per grid cell (r, s), in lexicographic
/// order, then one availability row per piece.
Polytope build_A(const Instance& instance, const PositionGrid& grid, const VarIndex& index,
                 const FormulationOptions& options = {});

/// Availability-only relaxation: the m availability rows and the 0-1 box.
Polytope build_B(const Instance& instance, const PositionGrid& grid, const VarIndex& index);

using ObjectiveVector = std::vector<double>;

/// Entry j is the value of the piece behind column j.
ObjectiveVector objective_vector(const Instance& instance, const VarIndex& index);

struct ModelStats {
  std::size_t pieces = 0;
  std::size_t x_positions = 0;
  std::size_t y_positions = 0;
  std::size_t n_vars = 0;
  std::size_t n_rows_raw = 0;
  std::size_t n_rows_nonzero = 0;
};

ModelStats model_stats(const Instance& instance);

/// Everything derived from an instance that the solvers need, built once.
struct Formulation {
  Instance instance;
  PositionGrid grid;
  VarIndex index;
  Polytope full;     ///< set A
  Polytope relaxed;  ///< set B
  ObjectiveVector values;

  std::size_t size() const { return index.size(); }
};

Formulation formulate(const Instance& instance, const FormulationOptions& options = {});

/// Placements selected by a binary (or rounded) column vector: every column
/// with x_j > 0.5.
std::vector<Placement> placements_from_vector(const VarIndex& index, std::span<const double> x);

/// Inverse of placements_from_vector. Throws std::invalid_argument if a
/// placement is not an admissible column.
std::vector<double> vector_from_placements(const VarIndex& index,
                                           std::span<const Placement> placements);

}  // namespace ngc
