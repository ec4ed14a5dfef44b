#pragma once

// Reference implementations used only by the tests. None of them calls into
// the solver library beyond plain data types.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ngc/model.hpp"

namespace ngc::testing {

/// 4x4 stock; A = 2x4 (value 9, two copies), B = 4x2 (value 8, one copy).
Instance t1();

struct RandomSpec {
  int max_stock = 8;
  int max_pieces = 3;
  int max_value = 20;
  int max_count = 3;
  std::size_t min_vars = 1;
  std::size_t max_vars = 20;
};

/// Random instance within spec, redrawn until its column count is in
/// [min_vars, max_vars].
Instance random_instance(std::mt19937& rng, const RandomSpec& spec, const std::string& name);

/// Every sum of non-negative multiples of `sizes` not exceeding cap, found by
/// enumerating the multiplier vectors directly.
std::vector<int> enumerate_combinations(std::span<const int> sizes, int cap);

/// True when the rectangle [x, x+l) x [y, y+w) and the unit square with
/// corner (r, s) share positive area.
bool covers_cell(int x, int y, int l, int w, int r, int s);

struct Rect {
  std::size_t piece;
  int x, y, l, w;
};

/// Pairwise rectangle test: inside the stock, no positive-area
/// intersections, counts within availability.
bool geometrically_feasible(const Instance& instance, std::span<const Rect> rects);

/// Admissible (piece, x, y) triples from brute-force position enumeration,
/// in (piece, x, y) order.
std::vector<Rect> admissible_rects(const Instance& instance);

/// Calls f on every 0-1 vector of length n.
void for_each_binary(std::size_t n, const std::function<void(const std::vector<double>&)>& f);

struct DenseLp {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> lower, upper;
};

/// Minimum of c.x over {a x <= b, lower <= x <= upper} by enumerating every
/// basic solution. Exponential; meant for n <= 5.
std::optional<double> vertex_minimum(const DenseLp& lp, std::span<const double> c);

/// Central difference of f at x along coordinate j.
double central_difference(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x, std::size_t j, double h);

}  // namespace ngc::testing
