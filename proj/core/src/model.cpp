#include "ngc/model.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ngc {

bool ValidationReport::ok() const { return error_count() == 0; }

std::size_t ValidationReport::warning_count() const {
  return static_cast<std::size_t>(std::count_if(issues.begin(), issues.end(), [](const auto& issue) {
    return issue.severity == Severity::warning;
  }));
}

std::size_t ValidationReport::error_count() const {
  return issues.size() - warning_count();
}

ValidationReport validate_instance(const Instance& instance) {
  ValidationReport report;
  auto add = [&](Severity severity, std::optional<std::size_t> piece, std::string message) {
    report.issues.push_back({severity, piece, std::move(message)});
  };

  if (instance.stock_length < 1 || instance.stock_width < 1) {
    std::ostringstream msg;
    msg << "non-positive stock dimension (" << instance.stock_length << " x "
        << instance.stock_width << ")";
    add(Severity::error, std::nullopt, msg.str());
  }
  if (instance.pieces.empty()) add(Severity::error, std::nullopt, "empty piece list");

  for (std::size_t i = 0; i < instance.pieces.size(); ++i) {
    const Piece& piece = instance.pieces[i];
    auto field = [&](const char* name, int value) {
      if (value < 1) {
        std::ostringstream msg;
        msg << "piece " << i + 1 << ": non-positive " << name << " (" << value << ")";
        add(Severity::error, i, msg.str());
      }
    };
    field("length", piece.length);
    field("width", piece.width);
    field("value", piece.value);
    field("max_count", piece.max_count);

    if (instance.stock_length >= 1 && instance.stock_width >= 1 &&
        (piece.length > instance.stock_length || piece.width > instance.stock_width)) {
      std::ostringstream msg;
      msg << "piece " << i + 1 << " (" << piece.length << " x " << piece.width
          << ") does not fit the stock; it generates no variables";
      add(Severity::warning, i, msg.str());
    }
  }
  return report;
}

std::vector<int> reachable_combinations(std::span<const int> sizes, int cap) {
  if (cap < 0) return {0};
  std::vector<char> reachable(static_cast<std::size_t>(cap) + 1, 0);
  reachable[0] = 1;
  for (int size : sizes) {
    if (size < 1) continue;
    // Unbounded multiplicity: sweep upwards so a size can be reused.
    for (int v = size; v <= cap; ++v) {
      if (reachable[v - size]) reachable[v] = 1;
    }
  }
  std::vector<int> out;
  for (int v = 0; v <= cap; ++v) {
    if (reachable[v]) out.push_back(v);
  }
  return out;
}

namespace {

std::vector<int> filter_upto(const std::vector<int>& coords, int cap) {
  std::vector<int> out;
  for (int c : coords) {
    if (c <= cap) out.push_back(c);
  }
  return out;
}

}  // namespace

PositionGrid compute_positions(const Instance& instance) {
  std::vector<int> lengths;
  std::vector<int> widths;
  int min_length = std::numeric_limits<int>::max();
  int min_width = std::numeric_limits<int>::max();
  for (const Piece& piece : instance.pieces) {
    lengths.push_back(piece.length);
    widths.push_back(piece.width);
    min_length = std::min(min_length, piece.length);
    min_width = std::min(min_width, piece.width);
  }

  PositionGrid grid;
  if (instance.pieces.empty()) {
    grid.x_coords = {0};
    grid.y_coords = {0};
    return grid;
  }
  grid.x_coords = reachable_combinations(lengths, instance.stock_length - min_length);
  grid.y_coords = reachable_combinations(widths, instance.stock_width - min_width);

  for (const Piece& piece : instance.pieces) {
    grid.piece_x_coords.push_back(filter_upto(grid.x_coords, instance.stock_length - piece.length));
    grid.piece_y_coords.push_back(filter_upto(grid.y_coords, instance.stock_width - piece.width));
  }
  return grid;
}

VarIndex::VarIndex(const PositionGrid& grid)
    : xs_(grid.piece_x_coords), ys_(grid.piece_y_coords) {
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    for (int x : xs_[i]) {
      for (int y : ys_[i]) columns_.push_back({i, x, y});
    }
    offsets_.push_back(columns_.size());
  }
}

std::optional<std::size_t> VarIndex::find(std::size_t piece, int x, int y) const {
  if (piece >= xs_.size()) return std::nullopt;
  const auto& xs = xs_[piece];
  const auto& ys = ys_[piece];
  auto xi = std::lower_bound(xs.begin(), xs.end(), x);
  auto yi = std::lower_bound(ys.begin(), ys.end(), y);
  if (xi == xs.end() || *xi != x || yi == ys.end() || *yi != y) return std::nullopt;
  return offsets_[piece] + static_cast<std::size_t>(xi - xs.begin()) * ys.size() +
         static_cast<std::size_t>(yi - ys.begin());
}

VarIndex build_var_index(const PositionGrid& grid) { return VarIndex(grid); }

}  // namespace ngc
