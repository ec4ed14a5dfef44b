#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>

#include "ngc/bench.hpp"
#include "ngc/dca.hpp"
#include "ngc/exact.hpp"
#include "ngc/formulation.hpp"
#include "ngc/io.hpp"

namespace ngc::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Source {
  std::string instance;
  std::string ngcut;
  int index = 1;
  std::string columns = "length,width,max_count,value";
};

void add_source_options(CLI::App& cmd, Source& src) {
  auto* inst = cmd.add_option("--instance", src.instance, "Instance file in canonical format");
  auto* ngcut = cmd.add_option("--ngcut", src.ngcut, "OR-Library cutting file");
  inst->excludes(ngcut);
  cmd.add_option("--index", src.index, "Problem number inside the OR-Library file (from 1)")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--columns", src.columns, "Per-piece column order of the OR-Library file");
}

// Relative paths that do not exist are looked up under NGCUT_DATA_DIR.
fs::path resolve(const std::string& name) {
  fs::path path(name);
  if (fs::exists(path) || path.is_absolute()) return path;
  if (const char* dir = std::getenv("NGCUT_DATA_DIR"); dir && *dir) {
    fs::path alt = fs::path(dir) / path;
    if (fs::exists(alt)) return alt;
  }
  return path;
}

std::vector<Instance> load_ngcut(const std::string& path, const std::string& columns) {
  const fs::path resolved = resolve(path);
  const std::string text = read_text_file(resolved);
  try {
    return parse_ngcut(text, NgcutLayout::parse(columns), "ngcut");
  } catch (const ParseError& e) {
    throw std::runtime_error(resolved.string() + ": " + e.what());
  }
}

Instance load_instance(const Source& src) {
  if (!src.ngcut.empty()) {
    auto all = load_ngcut(src.ngcut, src.columns);
    if (static_cast<std::size_t>(src.index) > all.size()) {
      throw std::runtime_error(src.ngcut + " holds " + std::to_string(all.size()) +
                               " problem(s); no index " + std::to_string(src.index));
    }
    return all[static_cast<std::size_t>(src.index) - 1];
  }
  if (src.instance.empty()) throw std::runtime_error("one of --instance or --ngcut is required");
  const fs::path resolved = resolve(src.instance);
  const std::string text = read_text_file(resolved);
  try {
    return parse_canonical(text);
  } catch (const ParseError& e) {
    throw std::runtime_error(resolved.string() + ": " + e.what());
  }
}

void require_valid(const Instance& instance, std::ostream& err) {
  const auto report = validate_instance(instance);
  for (const auto& issue : report.issues) {
    err << (issue.severity == Severity::error ? "error: " : "warning: ") << issue.message << '\n';
  }
  if (!report.ok()) throw std::runtime_error("invalid instance '" + instance.name + "'");
}

void print_stats(std::ostream& out, const Instance& instance) {
  const ModelStats s = model_stats(instance);
  out << "instance " << instance.name << ": stock " << instance.stock_length << 'x'
      << instance.stock_width << ", m " << s.pieces << ", |P| " << s.x_positions << ", |Q| "
      << s.y_positions << ", vars " << s.n_vars << ", rows " << s.n_rows_raw << " (nonempty "
      << s.n_rows_nonzero << ")\n";
}

void print_placements(std::ostream& out, const std::vector<Placement>& placements) {
  for (const Placement& p : placements) {
    out << "  piece " << p.piece + 1 << " at (" << p.x << ", " << p.y << ")\n";
  }
}

// ------------------------------------------------------------------ solve

struct SolveArgs {
  Source src;
  std::optional<double> t;
  std::optional<double> u;
  double eps = 1e-6;
  std::size_t max_iter = 500;
  std::string init = "initial-dca";
  std::string out_path;
  std::string svg_path;
  bool trace = false;
  bool ascii = false;
  bool warm = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Instance instance = load_instance(a.src);
  require_valid(instance, err);

  DcaConfig config;
  if (!a.src.ngcut.empty()) {
    if (auto ref = reference_row(a.src.index)) {
      config.t = ref->t;
      config.u = ref->u;
    }
  }
  if (a.t) config.t = *a.t;
  if (a.u) config.u = *a.u;
  config.epsilon = a.eps;
  config.max_iter = a.max_iter;
  config.warm_start = a.warm;
  auto init = parse_init_strategy(a.init);
  if (!init || *init == InitStrategy::given) throw std::runtime_error("unknown --init '" + a.init + "'");
  config.init = *init;
  config.validate();

  print_stats(out, instance);
  const auto start = Clock::now();
  const Formulation f = formulate(instance);
  const DcaResult result = solve_dca(f, config);
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();

  if (a.trace) {
    if (result.start_trace) {
      out << "start-point search: " << result.start_trace->iterations << " iteration(s)\n";
      for (std::size_t k = 0; k < result.start_trace->objective_values.size(); ++k) {
        out << "  k " << k << "  G " << format_double(result.start_trace->objective_values[k]) << '\n';
      }
    }
    out << "dca trace:\n";
    for (std::size_t k = 0; k < result.trace.objective_values.size(); ++k) {
      out << "  k " << k << "  F " << format_double(result.trace.objective_values[k]);
      if (k > 0) out << "  step " << format_double(result.trace.displacements[k - 1]);
      out << '\n';
    }
  }

  out << "t " << format_double(config.t) << ", u " << format_double(config.u) << ", eps "
      << format_double(config.epsilon) << ", init " << to_string(config.init) << '\n';
  out << "iterations " << result.trace.iterations << " (" << to_string(result.trace.termination)
      << "), F " << format_double(result.objective_final) << '\n';
  out << "time " << std::fixed << std::setprecision(3) << seconds << std::defaultfloat << " s\n";

  if (!result.feasible) {
    out << "value - (final iterate not integral-feasible)\n";
    if (!result.fractional.empty()) {
      err << result.fractional.size() << " fractional component(s), first at column "
          << result.fractional.front() << '\n';
    }
    for (const auto& d : result.diagnostics) err << d << '\n';
    return kNotFeasible;
  }

  out << "value " << *result.total_value << '\n';
  print_placements(out, result.placements);
  if (a.ascii) out << render_ascii(instance, result.placements);

  if (!a.out_path.empty()) {
    SolutionRecord rec;
    rec.instance = instance.name;
    rec.algorithm = "dca";
    rec.placements = result.placements;
    rec.total_value = *result.total_value;
    rec.t = config.t;
    rec.u = config.u;
    rec.epsilon = config.epsilon;
    rec.init = to_string(config.init);
    rec.iterations = result.trace.iterations;
    rec.wall_time = seconds;
    write_text_file(a.out_path, write_solution(rec));
  }
  if (!a.svg_path.empty()) write_text_file(a.svg_path, render_svg(instance, result.placements));
  return kOk;
}

// ------------------------------------------------------------------ exact

struct ExactArgs {
  Source src;
  double time_limit = 60.0;
  bool no_seed = false;
  std::string out_path;
  std::string svg_path;
};

int cmd_exact(const ExactArgs& a, std::ostream& out, std::ostream& err) {
  const Instance instance = load_instance(a.src);
  require_valid(instance, err);
  print_stats(out, instance);

  ExactOptions options;
  options.time_limit = a.time_limit;
  options.seed_with_dca = !a.no_seed;
  if (!a.src.ngcut.empty()) {
    if (auto ref = reference_row(a.src.index)) {
      options.dca.t = ref->t;
      options.dca.u = ref->u;
    }
  }
  const ExactResult result = solve_exact_bb(formulate(instance), options);

  out << "status " << to_string(result.status) << '\n';
  out << (result.status == ExactStatus::proved_optimal ? "optimal value " : "best value ")
      << result.optimal_value << '\n';
  out << "nodes " << result.nodes_explored << ", time " << std::fixed << std::setprecision(3)
      << result.wall_time << std::defaultfloat << " s\n";
  print_placements(out, result.placements);

  if (!a.out_path.empty()) {
    SolutionRecord rec;
    rec.instance = instance.name;
    rec.algorithm = "exact";
    rec.placements = result.placements;
    rec.total_value = result.optimal_value;
    rec.init = to_string(result.status);
    rec.iterations = result.nodes_explored;
    rec.wall_time = result.wall_time;
    write_text_file(a.out_path, write_solution(rec));
  }
  if (!a.svg_path.empty()) write_text_file(a.svg_path, render_svg(instance, result.placements));
  return kOk;
}

// ------------------------------------------------------------------ bench

struct BenchArgs {
  std::string ngcut;
  std::string columns = "length,width,max_count,value";
  std::string params;
  std::string csv_path;
  std::vector<int> only;
  BenchOptions options;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream&) {
  std::vector<Instance> instances = load_ngcut(a.ngcut, a.columns);
  std::map<int, PenaltyPair> overrides;
  if (!a.params.empty()) {
    const fs::path path = resolve(a.params);
    try {
      overrides = parse_penalty_file(read_text_file(path));
    } catch (const ParseError& e) {
      throw std::runtime_error(path.string() + ": " + e.what());
    }
  }

  std::vector<BenchRow> rows = bench_all(instances, overrides, a.options);
  if (!a.only.empty()) {
    std::erase_if(rows, [&](const BenchRow& r) {
      return std::find(a.only.begin(), a.only.end(), r.index) == a.only.end();
    });
  }
  out << format_bench_table(rows);
  if (!a.csv_path.empty()) write_text_file(a.csv_path, format_bench_csv(rows));
  return kOk;
}

// ------------------------------------------------------------------ render / convert

struct RenderArgs {
  Source src;
  std::string solution;
  std::string svg_path;
  double scale = 20.0;
  bool no_ascii = false;
};

int cmd_render(const RenderArgs& a, std::ostream& out, std::ostream&) {
  const Instance instance = load_instance(a.src);
  const fs::path path = resolve(a.solution);
  SolutionRecord rec;
  try {
    rec = read_solution(read_text_file(path));
  } catch (const ParseError& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  if (rec.instance != instance.name) {
    throw std::runtime_error("solution is for instance '" + rec.instance + "', not '" +
                             instance.name + "'");
  }
  const auto report = feasibility_check(instance, rec.placements);
  if (!report.ok()) throw std::runtime_error("infeasible solution: " + report.violations.front().message);
  if (placements_value(instance, rec.placements) != rec.total_value) {
    throw std::runtime_error("recorded total_value does not match the placements");
  }
  if (!a.no_ascii) out << render_ascii(instance, rec.placements);
  if (!a.svg_path.empty()) {
    write_text_file(a.svg_path, render_svg(instance, rec.placements, {.scale = a.scale}));
  }
  return kOk;
}

struct ConvertArgs {
  std::string ngcut;
  std::string columns = "length,width,max_count,value";
  std::string out_dir = ".";
  std::string prefix = "ngcut";
};

int cmd_convert(const ConvertArgs& a, std::ostream& out, std::ostream&) {
  const fs::path resolved = resolve(a.ngcut);
  std::vector<Instance> instances;
  try {
    instances = parse_ngcut(read_text_file(resolved), NgcutLayout::parse(a.columns), a.prefix);
  } catch (const ParseError& e) {
    throw std::runtime_error(resolved.string() + ": " + e.what());
  }
  fs::create_directories(a.out_dir);
  for (const Instance& instance : instances) {
    const fs::path target = fs::path(a.out_dir) / (instance.name + ".txt");
    write_text_file(target, write_canonical(instance));
    out << target.string() << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rectangle cutting solver: DCA heuristic and branch-and-bound", "ngcut"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run DCA on one instance");
  add_source_options(*solve_cmd, solve.src);
  solve_cmd->add_option("--t", solve.t, "Exact-penalty parameter")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--u", solve.u, "Overlap penalty in the start-point search")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--eps", solve.eps, "Stopping tolerance on the iterate displacement")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-iter", solve.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--init", solve.init, "Start point: initial-dca | zeros | ones | lp")
      ->check(CLI::IsMember({"initial-dca", "zeros", "ones", "lp"}));
  solve_cmd->add_option("--out", solve.out_path, "Write the solution record here");
  solve_cmd->add_option("--svg", solve.svg_path, "Write an SVG of the pattern here");
  solve_cmd->add_flag("--trace", solve.trace, "Print the objective at every iteration");
  solve_cmd->add_flag("--ascii", solve.ascii, "Print the pattern as a character grid");
  solve_cmd->add_flag("--warm-start", solve.warm, "Reuse LP bases between DCA iterations");

  ExactArgs exact;
  auto* exact_cmd = app.add_subcommand("exact", "Solve to proven optimality by branch-and-bound");
  add_source_options(*exact_cmd, exact.src);
  exact_cmd->add_option("--time-limit", exact.time_limit, "Seconds")->check(CLI::PositiveNumber);
  exact_cmd->add_flag("--no-dca-seed", exact.no_seed, "Start without a DCA incumbent");
  exact_cmd->add_option("--out", exact.out_path, "Write the solution record here");
  exact_cmd->add_option("--svg", exact.svg_path, "Write an SVG of the pattern here");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run every problem of an OR-Library file");
  bench_cmd->add_option("--ngcut", bench.ngcut, "OR-Library cutting file")->required();
  bench_cmd->add_option("--columns", bench.columns, "Per-piece column order");
  bench_cmd->add_option("--params", bench.params, "File of '<index> <t> <u>' lines");
  bench_cmd->add_option("--csv", bench.csv_path, "Write CSV rows here");
  bench_cmd->add_option("--only", bench.only, "Report only these problem numbers");
  bench_cmd->add_flag("--with-exact", bench.options.with_exact, "Also run branch-and-bound");
  bench_cmd->add_option("--time-limit", bench.options.exact_time_limit, "Exact solver limit [s]")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--eps", bench.options.epsilon, "DCA stopping tolerance")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--max-iter", bench.options.max_iter, "DCA iteration cap")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--jobs", bench.options.jobs, "Instances solved concurrently")
      ->check(CLI::PositiveNumber);

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "Draw a stored solution");
  add_source_options(*render_cmd, render.src);
  render_cmd->add_option("--solution", render.solution, "Solution record")->required();
  render_cmd->add_option("--svg", render.svg_path, "Write an SVG here");
  render_cmd->add_option("--scale", render.scale, "SVG pixels per unit")->check(CLI::PositiveNumber);
  render_cmd->add_flag("--no-ascii", render.no_ascii, "Do not print the character grid");

  ConvertArgs convert;
  auto* convert_cmd = app.add_subcommand("convert", "Split an OR-Library file into canonical files");
  convert_cmd->add_option("--ngcut", convert.ngcut, "OR-Library cutting file")->required();
  convert_cmd->add_option("--columns", convert.columns, "Per-piece column order");
  convert_cmd->add_option("--out-dir", convert.out_dir, "Output directory");
  convert_cmd->add_option("--prefix", convert.prefix, "File and instance name prefix");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve, out, err);
    if (exact_cmd->parsed()) return cmd_exact(exact, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bench, out, err);
    if (render_cmd->parsed()) return cmd_render(render, out, err);
    if (convert_cmd->parsed()) return cmd_convert(convert, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace ngc::cli
