#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ngc {

/// One piece type: an axis-aligned rectangle with fixed orientation.
struct Piece {
  int length = 0;     ///< extent along the stock length
  int width = 0;      ///< extent along the stock width
  int value = 0;
  int max_count = 0;  ///< how many copies may be cut

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// A stock rectangle plus the ordered list of piece types. Piece order is
/// significant: index i identifies the piece everywhere downstream.
struct Instance {
  std::string name;
  int stock_length = 0;
  int stock_width = 0;
  std::vector<Piece> pieces;

  std::size_t piece_count() const { return pieces.size(); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// A cut piece: piece index (0-based) and the coordinates of its lower-left
/// corner, x along the length and y along the width.
struct Placement {
  std::size_t piece = 0;
  int x = 0;
  int y = 0;

  friend bool operator==(const Placement&, const Placement&) = default;
  friend auto operator<=>(const Placement&, const Placement&) = default;
};

enum class Severity { warning, error };

struct ValidationIssue {
  Severity severity = Severity::error;
  std::optional<std::size_t> piece;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  /// True when no issue is an error. Warnings do not make an instance invalid.
  bool ok() const;
  std::size_t warning_count() const;
  std::size_t error_count() const;
};

ValidationReport validate_instance(const Instance& instance);

/// Discretized corner coordinates. x_coords/y_coords are the normal-pattern
/// sets (non-negative integer combinations of piece lengths/widths that
/// leave room for the smallest piece); piece_x_coords[i]/piece_y_coords[i]
/// keep only the coordinates at which piece i still fits inside the stock.
struct PositionGrid {
  std::vector<int> x_coords;
  std::vector<int> y_coords;
  std::vector<std::vector<int>> piece_x_coords;
  std::vector<std::vector<int>> piece_y_coords;
};

PositionGrid compute_positions(const Instance& instance);

/// Sorted set of values in [0, cap] reachable as non-negative integer
/// combinations of `sizes`. Always contains 0. Sizes < 1 are ignored.
std::vector<int> reachable_combinations(std::span<const int> sizes, int cap);

/// 1 iff a copy of `piece` placed with its corner at (x, y) covers the unit
/// cell whose corner is (r, s).
inline int coefficient(const Piece& piece, int x, int y, int r, int s) {
  return (x <= r && r <= x + piece.length - 1 && y <= s && s <= y + piece.width - 1) ? 1 : 0;
}

/// One decision variable: piece i cut with its corner at (x, y).
struct Column {
  std::size_t piece = 0;
  int x = 0;
  int y = 0;

  friend bool operator==(const Column&, const Column&) = default;
};

/// Bijection between admissible (piece, x, y) triples and column indices.
/// Columns are ordered by piece, then x ascending, then y ascending.
class VarIndex {
 public:
  VarIndex() = default;
  explicit VarIndex(const PositionGrid& grid);

  std::size_t size() const { return columns_.size(); }
  const Column& column(std::size_t j) const { return columns_.at(j); }
  std::span<const Column> columns() const { return columns_; }

  /// Column index of (piece, x, y), or nullopt if the triple is not admissible.
  std::optional<std::size_t> find(std::size_t piece, int x, int y) const;

  /// Columns belonging to one piece form the half-open range [begin, end).
  std::size_t piece_begin(std::size_t piece) const { return offsets_.at(piece); }
  std::size_t piece_end(std::size_t piece) const { return offsets_.at(piece + 1); }

 private:
  std::vector<Column> columns_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::vector<int>> xs_;
  std::vector<std::vector<int>> ys_;
};

VarIndex build_var_index(const PositionGrid& grid);

}  // namespace ngc
