#include "ngc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <thread>

#include "ngc/dca.hpp"
#include "ngc/exact.hpp"
#include "ngc/formulation.hpp"
#include "ngc/io.hpp"

namespace ngc {

namespace {

// index, L, W, m, |P|, |Q|, vars, cons, MIP cpu, MIP value, DCA cpu, DCA value, iterations, t, u
constexpr ReferenceRow kReference[] = {
    {1, 10, 10, 5, 8, 6, 60, 51, 0.140, 164, 0.062, 146, 4, 30, 10},
    {2, 10, 10, 7, 10, 10, 250, 107, 0.891, 230, 0.156, 212, 5, 30, 30},
    {3, 10, 10, 10, 10, 10, 411, 110, 0.281, 247, 0.156, 242, 4, 20, 5},
    {4, 15, 10, 5, 3, 10, 68, 35, 0.031, 268, 0.063, 268, 4, 25, 25},
    {5, 15, 10, 7, 10, 10, 154, 107, 0.047, 358, 0.329, 358, 23, 20, 80},
    {6, 15, 10, 10, 13, 10, 552, 140, 12.094, 289, 1.019, 283, 26, 25, 200},
    {7, 20, 20, 5, 20, 20, 763, 405, 0.110, 430, 0.328, 404, 4, 50, 100},
    {8, 20, 20, 7, 6, 20, 343, 127, 9.719, 834, 0.234, 828, 6, 50, 100},
    {9, 20, 20, 10, 20, 18, 1413, 370, 3.094, 924, 2.531, 924, 8, 5, 5},
    {10, 30, 30, 5, 30, 26, 363, 785, 4.860, 1452, 0.562, 1452, 4, 100, 100},
    {11, 30, 30, 7, 21, 27, 1120, 574, 60.266, 1688, 1.094, 1688, 4, 100, 100},
    {12, 70, 40, 20, 45, 18, 3657, 830, 60.312, 2726, 7.204, 2568, 4, 180, 10},
};

using Clock = std::chrono::steady_clock;

BenchRow describe(int index, const Instance& instance, const ModelStats& stats) {
  BenchRow row;
  row.index = index;
  row.instance = instance.name;
  row.stock_length = instance.stock_length;
  row.stock_width = instance.stock_width;
  row.pieces = stats.pieces;
  row.x_positions = stats.x_positions;
  row.y_positions = stats.y_positions;
  row.n_vars = stats.n_vars;
  row.n_cons = stats.n_rows_raw;
  return row;
}

}  // namespace

std::span<const ReferenceRow> reference_rows() { return kReference; }

std::optional<ReferenceRow> reference_row(int index) {
  for (const ReferenceRow& row : kReference) {
    if (row.index == index) return row;
  }
  return std::nullopt;
}

std::map<int, PenaltyPair> parse_penalty_file(std::string_view text) {
  std::map<int, PenaltyPair> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    int index = 0;
    PenaltyPair pair;
    if (!(fields >> index)) {
      std::string rest;
      if (std::istringstream(line) >> rest) throw ParseError(number, 1, "expected '<index> <t> <u>'");
      continue;
    }
    if (!(fields >> pair.t >> pair.u)) throw ParseError(number, 1, "expected '<index> <t> <u>'");
    std::string extra;
    if (fields >> extra) throw ParseError(number, 1, "trailing data '" + extra + "'");
    if (index < 1) throw ParseError(number, 1, "instance index must be at least 1");
    if (!(pair.t > 0.0) || !(pair.u > 0.0)) throw ParseError(number, 1, "t and u must be positive");
    if (!out.emplace(index, pair).second) {
      throw ParseError(number, 1, "instance " + std::to_string(index) + " listed twice");
    }
  }
  return out;
}

PenaltyPair penalty_for(int index, const std::map<int, PenaltyPair>& overrides) {
  if (auto it = overrides.find(index); it != overrides.end()) return it->second;
  if (auto ref = reference_row(index)) return {ref->t, ref->u};
  const DcaConfig defaults;
  return {defaults.t, defaults.u};
}

std::vector<BenchRow> bench_instance(int index, const Instance& instance, PenaltyPair penalty,
                                     const BenchOptions& options) {
  std::vector<BenchRow> rows;
  BenchRow base;
  base.index = index;
  base.instance = instance.name;
  base.t = penalty.t;
  base.u = penalty.u;

  std::optional<Formulation> f;
  try {
    const auto report = validate_instance(instance);
    if (!report.ok()) {
      for (const auto& issue : report.issues) {
        if (issue.severity == Severity::error) throw std::invalid_argument(issue.message);
      }
    }
    base = describe(index, instance, model_stats(instance));
    base.t = penalty.t;
    base.u = penalty.u;
    f = formulate(instance);
  } catch (const std::exception& e) {
    base.algorithm = "dca";
    base.status = std::string("error: ") + e.what();
    rows.push_back(base);
    return rows;
  }

  DcaConfig config;
  config.t = penalty.t;
  config.u = penalty.u;
  config.epsilon = options.epsilon;
  config.max_iter = options.max_iter;

  BenchRow dca_row = base;
  dca_row.algorithm = "dca";
  std::optional<DcaResult> dca;
  const auto start = Clock::now();
  try {
    dca = solve_dca(*f, config);
    dca_row.iterations = dca->trace.iterations;
    dca_row.objective = dca->total_value;
    dca_row.status = dca->feasible ? "feasible" : "fractional";
  } catch (const std::exception& e) {
    dca_row.status = std::string("error: ") + e.what();
  }
  dca_row.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  rows.push_back(dca_row);

  if (options.with_exact) {
    BenchRow exact_row = base;
    exact_row.algorithm = "exact";
    try {
      ExactOptions eo;
      eo.time_limit = options.exact_time_limit;
      eo.seed_with_dca = false;
      if (dca && dca->feasible) eo.incumbent = dca->placements;
      const ExactResult ex = solve_exact_bb(*f, eo);
      exact_row.objective = ex.optimal_value;
      exact_row.iterations = ex.nodes_explored;
      exact_row.wall_time = ex.wall_time;
      exact_row.status = to_string(ex.status);
    } catch (const std::exception& e) {
      exact_row.status = std::string("error: ") + e.what();
    }
    rows.push_back(exact_row);
  }
  return rows;
}

std::vector<BenchRow> bench_all(std::span<const Instance> instances,
                                const std::map<int, PenaltyPair>& overrides,
                                const BenchOptions& options) {
  std::vector<std::vector<BenchRow>> per_instance(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < instances.size(); k = next++) {
      const int index = static_cast<int>(k + 1);
      per_instance[k] = bench_instance(index, instances[k], penalty_for(index, overrides), options);
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(instances.size(), 1));
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  std::vector<BenchRow> rows;
  for (auto& group : per_instance) {
    for (auto& row : group) rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_bench_table(std::span<const BenchRow> rows) {
  std::ostringstream out;
  out << std::left << std::setw(4) << "#" << std::setw(12) << "instance" << std::right
      << std::setw(9) << "(L;W)" << std::setw(12) << "m-|P|-|Q|" << std::setw(8) << "vars"
      << std::setw(8) << "cons" << "  " << std::left << std::setw(7) << "algo" << std::right
      << std::setw(8) << "value" << std::setw(7) << "iter" << std::setw(10) << "time[s]"
      << std::setw(8) << "t" << std::setw(8) << "u" << "  " << "status" << '\n';
  for (const BenchRow& r : rows) {
    std::ostringstream dims;
    dims << '(' << r.stock_length << ';' << r.stock_width << ')';
    std::ostringstream sizes;
    sizes << r.pieces << '-' << r.x_positions << '-' << r.y_positions;
    out << std::left << std::setw(4) << r.index << std::setw(12) << r.instance << std::right
        << std::setw(9) << dims.str() << std::setw(12) << sizes.str() << std::setw(8) << r.n_vars
        << std::setw(8) << r.n_cons << "  " << std::left << std::setw(7) << r.algorithm
        << std::right << std::setw(8) << (r.objective ? std::to_string(*r.objective) : "-")
        << std::setw(7) << r.iterations << std::setw(10) << std::fixed << std::setprecision(3)
        << r.wall_time << std::defaultfloat << std::setw(8) << format_double(r.t) << std::setw(8)
        << format_double(r.u) << "  " << r.status << '\n';
  }
  return out.str();
}

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string format_bench_csv(std::span<const BenchRow> rows) {
  std::ostringstream out;
  out << "index,instance,L,W,m,P,Q,n_vars,n_cons,algorithm,objective,iterations,wall_time,t,u,status\n";
  for (const BenchRow& r : rows) {
    std::ostringstream time;
    time << std::fixed << std::setprecision(6) << r.wall_time;
    out << r.index << ',' << csv_field(r.instance) << ',' << r.stock_length << ',' << r.stock_width
        << ',' << r.pieces << ',' << r.x_positions << ',' << r.y_positions << ',' << r.n_vars << ','
        << r.n_cons << ',' << r.algorithm << ',' << (r.objective ? std::to_string(*r.objective) : "")
        << ',' << r.iterations << ',' << time.str() << ',' << format_double(r.t) << ','
        << format_double(r.u) << ',' << csv_field(r.status) << '\n';
  }
  return out.str();
}

}  // namespace ngc
