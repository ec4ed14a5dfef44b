#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ngc/model.hpp"

namespace ngc {

/// Parse failure with a 1-based source position (0 when not applicable).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Canonical instance format, LF line endings, single spaces:
//   name <text>
//   stock <L> <W>
//   pieces <m>
//   <l> <w> <v> <b>      (m lines, in piece order)
Instance parse_canonical(std::string_view text);
std::string write_canonical(const Instance& instance);

enum class NgcutField { length, width, value, max_count, min_count, skip };

/// Per-piece column order of an OR-Library style cutting file.
struct NgcutLayout {
  std::vector<NgcutField> fields{NgcutField::length, NgcutField::width, NgcutField::max_count,
                                 NgcutField::value};

  /// Comma-separated names: length|l, width|w, value|v, max_count|max|b,
  /// min_count|min, skip. Must mention length, width and value.
  static NgcutLayout parse(std::string_view spec);
  std::string to_string() const;
};

/// Reads an OR-Library style file. Accepted layouts (blank lines ignored):
///   <problem count> then per problem: <m> / <L> <W> / m piece lines
///   or a single problem without the leading count.
/// Instances are named "<name_prefix><k>" with k counted from 1. A min_count
/// column is read and discarded.
std::vector<Instance> parse_ngcut(std::string_view text, const NgcutLayout& layout = {},
                                  const std::string& name_prefix = "ngcut");

enum class ViolationKind { bad_piece, out_of_bounds, overlap, availability };

struct Violation {
  ViolationKind kind = ViolationKind::bad_piece;
  std::size_t first = 0;   ///< placement index (piece index for availability)
  std::size_t second = 0;  ///< other placement for overlaps
  int r = 0;               ///< overlap: lowest shared cell
  int s = 0;
  std::string message;
};

struct FeasibilityReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Purely geometric check: every placement inside the stock, no two
/// placements sharing a unit cell, per-piece counts within availability.
FeasibilityReport feasibility_check(const Instance& instance,
                                    std::span<const Placement> placements);

/// Sum of piece values. Throws std::out_of_range on a bad piece index.
long long placements_value(const Instance& instance, std::span<const Placement> placements);

/// Character used for piece i in ASCII renders.
char piece_glyph(std::size_t piece);

/// W lines of L characters; top line is the highest y. '.' marks waste.
/// Throws std::invalid_argument on infeasible placements.
std::string render_ascii(const Instance& instance, std::span<const Placement> placements);

struct SvgOptions {
  double scale = 20.0;  ///< pixels per length unit
  bool labels = true;
};

/// Stock outline plus one rectangle per placement, labelled "piece:value".
/// Throws std::invalid_argument on infeasible placements.
std::string render_svg(const Instance& instance, std::span<const Placement> placements,
                       const SvgOptions& options = {});

/// A solved pattern together with how it was obtained. Piece indices are
/// 0-based in memory and 1-based on disk.
struct SolutionRecord {
  std::string instance;
  std::string algorithm;
  std::vector<Placement> placements;
  long long total_value = 0;
  double t = 0.0;
  double u = 0.0;
  double epsilon = 0.0;
  std::string init;
  std::size_t iterations = 0;
  double wall_time = 0.0;  ///< seconds

  friend bool operator==(const SolutionRecord&, const SolutionRecord&) = default;
};

// Solution format: one "key value" line per scalar field, then
//   placements <k>
//   <piece> <x> <y>       (k lines, piece counted from 1)
//   end
std::string write_solution(const SolutionRecord& record);
SolutionRecord read_solution(std::string_view text);

/// Throws std::runtime_error naming the path on failure.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

}  // namespace ngc
