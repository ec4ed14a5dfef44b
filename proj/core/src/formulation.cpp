#include "ngc/formulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ngc {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries)
    : rows_(rows), cols_(cols) {
  for (const Triplet& t : entries) {
    if (t.row >= rows || t.col >= cols) {
      throw std::invalid_argument("sparse entry (" + std::to_string(t.row) + ", " +
                                  std::to_string(t.col) + ") out of range");
    }
    if (!std::isfinite(t.value)) throw std::invalid_argument("non-finite sparse entry");
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].row == entries[k - 1].row && entries[k].col == entries[k - 1].col) {
      throw std::invalid_argument("duplicate sparse entry (" + std::to_string(entries[k].row) +
                                  ", " + std::to_string(entries[k].col) + ")");
    }
  }

  col_start_.assign(cols + 1, 0);
  for (const Triplet& t : entries) {
    if (t.value == 0.0) continue;
    ++col_start_[t.col + 1];
    row_index_.push_back(t.row);
    values_.push_back(t.value);
  }
  for (std::size_t c = 0; c < cols; ++c) col_start_[c + 1] += col_start_[c];
}

std::vector<Triplet> SparseMatrix::entries() const {
  std::vector<Triplet> out;
  out.reserve(values_.size());
  for (std::size_t c = 0; c < cols_; ++c) {
    for (std::size_t k = col_start_[c]; k < col_start_[c + 1]; ++k) {
      out.push_back({row_index_[k], c, values_[k]});
    }
  }
  return out;
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
  if (x.size() != cols_) throw std::invalid_argument("dimension mismatch in multiply");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (x[c] == 0.0) continue;
    for (std::size_t k = col_start_[c]; k < col_start_[c + 1]; ++k) {
      y[row_index_[k]] += values_[k] * x[c];
    }
  }
  return y;
}

double Polytope::max_violation(std::span<const double> x) const {
  if (x.size() != cols()) throw std::invalid_argument("dimension mismatch in max_violation");
  double worst = 0.0;
  const auto activity = matrix.multiply(x);
  for (std::size_t r = 0; r < rows(); ++r) worst = std::max(worst, activity[r] - rhs[r]);
  for (std::size_t j = 0; j < cols(); ++j) {
    worst = std::max(worst, lower[j] - x[j]);
    worst = std::max(worst, x[j] - upper[j]);
  }
  return worst;
}

bool Polytope::contains(std::span<const double> x, double tol) const {
  return max_violation(x) <= tol;
}

namespace {

std::size_t index_of(const std::vector<int>& sorted, int value) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), value) -
                                  sorted.begin());
}

void add_availability_rows(const Instance& instance, const VarIndex& index, std::size_t first_row,
                           std::vector<Triplet>& entries, std::vector<double>& rhs,
                           std::vector<RowLabel>& labels) {
  for (std::size_t i = 0; i < instance.pieces.size(); ++i) {
    const std::size_t row = first_row + i;
    for (std::size_t j = index.piece_begin(i); j < index.piece_end(i); ++j) {
      entries.push_back({row, j, 1.0});
    }
    rhs.push_back(static_cast<double>(instance.pieces[i].max_count));
    labels.emplace_back(AvailabilityRow{i});
  }
}

Polytope box_polytope(std::size_t rows, std::size_t cols, std::vector<Triplet> entries,
                      std::vector<double> rhs, std::vector<RowLabel> labels) {
  Polytope poly;
  poly.matrix = SparseMatrix(rows, cols, std::move(entries));
  poly.rhs = std::move(rhs);
  poly.labels = std::move(labels);
  poly.lower.assign(cols, 0.0);
  poly.upper.assign(cols, 1.0);
  return poly;
}

}  // namespace

Polytope build_A(const Instance& instance, const PositionGrid& grid, const VarIndex& index,
                 const FormulationOptions& options) {
  const auto& xs = grid.x_coords;
  const auto& ys = grid.y_coords;
  const std::size_t cells = xs.size() * ys.size();

  std::vector<Triplet> entries;
  for (std::size_t j = 0; j < index.size(); ++j) {
    const Column& col = index.column(j);
    const Piece& piece = instance.pieces[col.piece];
    const std::size_t r_begin = index_of(xs, col.x);
    const std::size_t r_end = index_of(xs, col.x + piece.length);
    const std::size_t s_begin = index_of(ys, col.y);
    const std::size_t s_end = index_of(ys, col.y + piece.width);
    for (std::size_t ri = r_begin; ri < r_end; ++ri) {
      for (std::size_t si = s_begin; si < s_end; ++si) {
        entries.push_back({ri * ys.size() + si, j, 1.0});
      }
    }
  }

  std::vector<std::size_t> row_map(cells);
  std::vector<RowLabel> labels;
  std::size_t kept = 0;
  if (options.drop_empty_rows) {
    std::vector<char> used(cells, 0);
    for (const Triplet& t : entries) used[t.row] = 1;
    for (std::size_t c = 0; c < cells; ++c) {
      if (used[c]) {
        row_map[c] = kept++;
        labels.emplace_back(OverlapRow{xs[c / ys.size()], ys[c % ys.size()]});
      }
    }
    for (Triplet& t : entries) t.row = row_map[t.row];
  } else {
    for (std::size_t c = 0; c < cells; ++c) {
      labels.emplace_back(OverlapRow{xs[c / ys.size()], ys[c % ys.size()]});
    }
    kept = cells;
  }

  std::vector<double> rhs(kept, 1.0);
  add_availability_rows(instance, index, kept, entries, rhs, labels);
  const std::size_t rows = kept + instance.pieces.size();
  return box_polytope(rows, index.size(), std::move(entries), std::move(rhs), std::move(labels));
}

Polytope build_B(const Instance& instance, const PositionGrid&, const VarIndex& index) {
  std::vector<Triplet> entries;
  std::vector<double> rhs;
  std::vector<RowLabel> labels;
  add_availability_rows(instance, index, 0, entries, rhs, labels);
  return box_polytope(instance.pieces.size(), index.size(), std::move(entries), std::move(rhs),
                      std::move(labels));
}

ObjectiveVector objective_vector(const Instance& instance, const VarIndex& index) {
  ObjectiveVector v(index.size());
  for (std::size_t j = 0; j < index.size(); ++j) {
    v[j] = static_cast<double>(instance.pieces[index.column(j).piece].value);
  }
  return v;
}

ModelStats model_stats(const Instance& instance) {
  const PositionGrid grid = compute_positions(instance);
  const VarIndex index(grid);
  const Polytope reduced = build_A(instance, grid, index, {.drop_empty_rows = true});

  ModelStats stats;
  stats.pieces = instance.pieces.size();
  stats.x_positions = grid.x_coords.size();
  stats.y_positions = grid.y_coords.size();
  stats.n_vars = index.size();
  stats.n_rows_raw = stats.x_positions * stats.y_positions + stats.pieces;
  stats.n_rows_nonzero = reduced.rows();
  return stats;
}

Formulation formulate(const Instance& instance, const FormulationOptions& options) {
  Formulation f;
  f.instance = instance;
  f.grid = compute_positions(instance);
  f.index = VarIndex(f.grid);
  f.full = build_A(instance, f.grid, f.index, options);
  f.relaxed = build_B(instance, f.grid, f.index);
  f.values = objective_vector(instance, f.index);
  return f;
}

std::vector<Placement> placements_from_vector(const VarIndex& index, std::span<const double> x) {
  if (x.size() != index.size()) throw std::invalid_argument("vector length does not match columns");
  std::vector<Placement> out;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] > 0.5) {
      const Column& c = index.column(j);
      out.push_back({c.piece, c.x, c.y});
    }
  }
  return out;
}

std::vector<double> vector_from_placements(const VarIndex& index,
                                           std::span<const Placement> placements) {
  std::vector<double> x(index.size(), 0.0);
  for (const Placement& p : placements) {
    auto j = index.find(p.piece, p.x, p.y);
    if (!j) {
      throw std::invalid_argument("placement (piece " + std::to_string(p.piece + 1) + ", " +
                                  std::to_string(p.x) + ", " + std::to_string(p.y) +
                                  ") is not an admissible column");
    }
    x[*j] += 1.0;
  }
  return x;
}

}  // namespace ngc
