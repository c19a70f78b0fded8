#include "sdlq_cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sdlq/errors.hpp"
#include "sdlq/export.hpp"
#include "sdlq/oracle.hpp"
#include "sdlq/problem_io.hpp"
#include "sdlq/registry.hpp"
#include "sdlq/riccati.hpp"
#include "sdlq/simulate.hpp"
#include "sdlq_cli/experiments.hpp"

namespace sdlq::cli {
namespace {

using nlohmann::json;

struct CommonOptions {
  std::string problem;
  std::string random;
  int substeps = kDefaultSubsteps;
  std::string out;
  std::string format;
  std::string qa;
  bool debug_blocks = false;
};

struct LoadedProblem {
  LQProblem problem;
  std::optional<ControlFunction> reference;
  std::optional<Index> suggested_intervals;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) {
    parts.push_back(item);
  }
  return parts;
}

double parse_double(const std::string& text, const char* what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  while (first < last && *first == ' ') {
    ++first;
  }
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::InvalidInput, std::string("cannot parse ") + what + " value '" + text + "'");
  }
  return value;
}

Index parse_count(const std::string& text, const char* what) {
  Index value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 1) {
    throw Error(ErrorCode::InvalidInput, std::string("invalid ") + what + " '" + text + "'");
  }
  return value;
}

LoadedProblem load_problem(const CommonOptions& opt) {
  LoadedProblem loaded;
  if (!opt.random.empty()) {
    if (!opt.problem.empty()) {
      throw Error(ErrorCode::InvalidInput, "--problem and --random are mutually exclusive");
    }
    if (opt.random.rfind("seed:", 0) != 0) {
      throw Error(ErrorCode::InvalidInput, "--random expects seed:K");
    }
    const auto seed_text = opt.random.substr(5);
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
    if (ec != std::errc() || ptr != seed_text.data() + seed_text.size()) {
      throw Error(ErrorCode::InvalidInput, "invalid seed '" + seed_text + "'");
    }
    auto rc = random_case(seed);
    loaded.problem = std::move(rc.problem);
    loaded.suggested_intervals = rc.intervals;
  } else if (opt.problem.empty()) {
    throw Error(ErrorCode::InvalidInput, "one of --problem or --random is required");
  } else if (auto entry = find_problem(opt.problem)) {
    loaded.problem = std::move(entry->problem);
    loaded.reference = std::move(entry->reference_control);
  } else if (std::filesystem::is_regular_file(opt.problem)) {
    loaded.problem = load_problem_file(opt.problem);
  } else {
    throw Error(ErrorCode::UnknownProblem, "unknown problem '" + opt.problem + "'");
  }
  if (!opt.qa.empty()) {
    const auto parts = split(opt.qa, ',');
    if (static_cast<Index>(parts.size()) != loaded.problem.n) {
      throw Error(ErrorCode::DimensionMismatch, "--qa needs " + std::to_string(loaded.problem.n) + " values");
    }
    Vector qa(loaded.problem.n);
    for (Index k = 0; k < qa.size(); ++k) {
      qa(k) = parse_double(parts[static_cast<std::size_t>(k)], "--qa");
    }
    loaded.problem.q_a = qa;
  }
  return loaded;
}

SamplingGrid parse_grid(const std::string& spec, const LoadedProblem& loaded) {
  const auto& p = loaded.problem;
  if (spec.empty()) {
    if (loaded.suggested_intervals) {
      return SamplingGrid::uniform(*loaded.suggested_intervals, p.a, p.b);
    }
    throw Error(ErrorCode::InvalidInput, "--grid is required");
  }
  if (spec.rfind("uniform:", 0) == 0) {
    return SamplingGrid::uniform(parse_count(spec.substr(8), "interval count"), p.a, p.b);
  }
  if (spec.rfind("durations:", 0) == 0) {
    std::vector<double> h;
    for (const auto& part : split(spec.substr(10), ',')) {
      h.push_back(parse_double(part, "duration"));
    }
    return SamplingGrid::from_durations(h, p.a, p.b);
  }
  throw Error(ErrorCode::InvalidInput, "grid spec must be uniform:N or durations:h1,h2,...");
}

Reference make_reference(const std::string& spec, const LoadedProblem& loaded, int substeps,
                         std::optional<Index> must_exceed = std::nullopt) {
  if (spec == "closed-form") {
    if (!loaded.reference) {
      throw Error(ErrorCode::MissingReference, "problem has no closed-form reference control; use fine:N");
    }
    return closed_form_reference(loaded.problem, *loaded.reference, substeps);
  }
  if (spec.rfind("fine:", 0) == 0) {
    const Index n_ref = parse_count(spec.substr(5), "reference interval count");
    if (must_exceed && n_ref <= *must_exceed) {
      throw Error(ErrorCode::InvalidInput, "fine reference must use more intervals than every compared grid");
    }
    return fine_grid_reference(loaded.problem, n_ref, substeps);
  }
  throw Error(ErrorCode::InvalidInput, "reference must be closed-form or fine:N");
}

/// Writes to --out when given, else to the command's output stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}

  void write(const std::string& text) const {
    if (path_.empty()) {
      fallback_ << text;
      return;
    }
    std::ofstream file(path_, std::ios::binary | std::ios::trunc);
    if (!file) {
      throw Error(ErrorCode::InvalidInput, "cannot write " + path_);
    }
    file << text;
  }

  void write_sibling(const std::string& suffix, const std::string& text) const {
    if (path_.empty()) {
      return;
    }
    std::ofstream file(path_ + suffix, std::ios::binary | std::ios::trunc);
    if (!file) {
      throw Error(ErrorCode::InvalidInput, "cannot write " + path_ + suffix);
    }
    file << text;
  }

 private:
  std::string path_;
  std::ostream& fallback_;
};

std::string resolve_format(const std::string& requested, const char* fallback) {
  const std::string fmt = requested.empty() ? fallback : requested;
  if (fmt != "csv" && fmt != "json") {
    throw Error(ErrorCode::InvalidInput, "--format must be csv or json");
  }
  return fmt;
}

std::string indexed_header(const std::string& base, Index m) {
  if (m == 1) {
    return base;
  }
  std::string out;
  for (Index k = 1; k <= m; ++k) {
    out += (k > 1 ? "," : "") + base + "_" + std::to_string(k);
  }
  return out;
}

void append(std::vector<double>& row, const Vector& v) { row.insert(row.end(), v.data(), v.data() + v.size()); }

int cmd_solve(const CommonOptions& opt, const std::string& grid_spec, std::ostream& out, std::ostream& err) {
  const auto loaded = load_problem(opt);
  const auto& p = loaded.problem;
  const auto grid = parse_grid(grid_spec, loaded);
  const auto format = resolve_format(opt.format, "json");

  auto solved = solve_sampled(p, grid, opt.substeps);
  auto& sol = solved.solution;
  const auto control = control_of(sol);
  const auto traj = simulate_state(p, control, opt.substeps);
  sol.simulated_cost = evaluate_cost(p, control, traj);
  const auto costate = simulate_costate(p, traj, opt.substeps);
  const auto residuals = pmp_residual_sampled(p, sol, costate);

  if (opt.debug_blocks) {
    for (std::size_t i = 0; i < solved.blocks.size(); ++i) {
      json line = blocks_to_json(solved.blocks[i]);
      line["T_condition"] = solved.sweep.steps[i].T_condition;
      err << line.dump() << '\n';
    }
  }

  const Sink sink(opt.out, out);
  if (format == "json") {
    sink.write(solution_to_json(sol, solved.sweep, &residuals).dump(2) + "\n");
  } else {
    sink.write(control_csv(control));
  }
  double worst = 0.0;
  for (const auto& r : residuals) {
    worst = std::max(worst, r.norm());
  }
  err << "predicted_cost=" << format_number(sol.predicted_cost)
      << " simulated_cost=" << format_number(*sol.simulated_cost) << " max_pmp_residual=" << format_number(worst)
      << '\n';
  return kExitOk;
}

int cmd_converge(const CommonOptions& opt, const std::string& grids, const std::string& reference_spec,
                 std::ostream& out, std::ostream& err) {
  const auto loaded = load_problem(opt);
  const auto& p = loaded.problem;
  const auto format = resolve_format(opt.format, "csv");
  std::vector<Index> counts;
  for (const auto& part : split(grids, ',')) {
    counts.push_back(parse_count(part, "grid size"));
  }
  if (counts.empty()) {
    throw Error(ErrorCode::InvalidInput, "--grids needs at least one N");
  }
  const auto ref = make_reference(reference_spec, loaded, opt.substeps,
                                  *std::max_element(counts.begin(), counts.end()));

  const Sink sink(opt.out, out);
  std::ostringstream csv;
  csv << "N,norm_delta,max_node_err,cost_sampled,cost_gap,cost_averaged\n";
  json rows = json::array();
  for (Index N : counts) {
    const auto run = convergence_run(p, N, ref, opt.substeps);
    const auto& r = run.row;
    csv << r.N << ',' << csv_row({r.norm_delta, r.max_node_err, r.cost_sampled, r.cost_gap, r.cost_averaged}) << '\n';
    rows.push_back({{"N", r.N},
                    {"norm_delta", r.norm_delta},
                    {"max_node_err", r.max_node_err},
                    {"cost_sampled", r.cost_sampled},
                    {"cost_gap", r.cost_gap},
                    {"cost_averaged", r.cost_averaged}});

    // Staircase-vs-curve trace on the integration nodes of each interval.
    std::ostringstream trace;
    trace << "t," << indexed_header("u_sampled", p.m) << ',' << indexed_header("u_reference", p.m) << '\n';
    const auto& grid = run.solution.grid;
    for (Index i = 0; i < grid.intervals(); ++i) {
      const int steps = 2 * opt.substeps;
      for (int k = 0; k <= steps; ++k) {
        const double t = k == steps ? grid.s(i + 1) : grid.s(i) + grid.h(i) * k / steps;
        std::vector<double> row{t};
        append(row, run.solution.U[static_cast<std::size_t>(i)]);
        append(row, ref.u(t));
        trace << csv_row(row) << '\n';
      }
    }
    sink.write_sibling(".trace_N" + std::to_string(N) + ".csv", trace.str());

    const double tol = 1e-6 * (1.0 + r.cost_sampled);
    if (r.cost_gap < -tol || r.cost_averaged < r.cost_sampled - 1e-6 * (1.0 + r.cost_averaged)) {
      err << "warning: cost ordering violated at N=" << N << '\n';
    }
  }
  if (format == "json") {
    sink.write(json{{"reference", ref.label}, {"reference_cost", ref.cost}, {"rows", rows}}.dump(2) + "\n");
  } else {
    sink.write(csv.str());
  }
  err << "reference=" << ref.label << " reference_cost=" << format_number(ref.cost) << '\n';
  return kExitOk;
}

int cmd_compare(const CommonOptions& opt, const std::string& grid_spec, const std::string& reference_spec,
                std::ostream& out, std::ostream& err) {
  const auto loaded = load_problem(opt);
  const auto& p = loaded.problem;
  const auto grid = parse_grid(grid_spec, loaded);
  const auto format = resolve_format(opt.format, "csv");
  const auto ref = make_reference(reference_spec, loaded, opt.substeps, grid.intervals());
  const auto cmp = compare_averaged(p, grid, ref, opt.substeps);

  const Sink sink(opt.out, out);
  if (format == "json") {
    json rows = json::array();
    for (Index i = 0; i < grid.intervals(); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      rows.push_back({{"i", i},
                      {"s_i", grid.s(i)},
                      {"U_optimal", to_json(cmp.optimal.U[idx])},
                      {"U_averaged", to_json(cmp.averaged.U[idx])},
                      {"diff", cmp.diffs[idx]}});
    }
    sink.write(json{{"rows", rows},
                    {"max_diff", cmp.max_diff},
                    {"cost_sampled", cmp.cost_sampled},
                    {"cost_averaged", cmp.cost_averaged}}
                   .dump(2) +
               "\n");
  } else {
    std::ostringstream csv;
    csv << "i,s_i," << indexed_header("U_optimal", p.m) << ',' << indexed_header("U_averaged", p.m) << ",diff\n";
    for (Index i = 0; i < grid.intervals(); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      std::vector<double> row{grid.s(i)};
      append(row, cmp.optimal.U[idx]);
      append(row, cmp.averaged.U[idx]);
      row.push_back(cmp.diffs[idx]);
      csv << i << ',' << csv_row(row) << '\n';
    }
    sink.write(csv.str());
  }
  err << "cost_sampled=" << format_number(cmp.cost_sampled) << " cost_averaged=" << format_number(cmp.cost_averaged)
      << " max_diff=" << format_number(cmp.max_diff) << '\n';
  return kExitOk;
}

int cmd_oracle(const CommonOptions& opt, const std::string& grid_spec, std::ostream& out, std::ostream& err) {
  const auto loaded = load_problem(opt);
  const auto grid = parse_grid(grid_spec, loaded);
  const auto report = cross_check(loaded.problem, grid, opt.substeps);
  const Sink sink(opt.out, out);
  sink.write(oracle_report_to_json(report).dump(2) + "\n");
  if (!report.agrees()) {
    err << "oracle disagreement (max rel diff " << format_number(report.max_rel_diff) << ")\n";
    err << "i,abs_diff\n";
    for (std::size_t i = 0; i < report.abs_diffs.size(); ++i) {
      err << i << ',' << format_number(report.abs_diffs[i]) << '\n';
    }
    return kExitOracle;
  }
  err << "oracle agrees: max_rel_diff=" << format_number(report.max_rel_diff) << '\n';
  return kExitOk;
}

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--problem", opt.problem, "Registry name or path to a problem JSON file");
  cmd->add_option("--random", opt.random, "Seeded random problem, seed:K");
  cmd->add_option("--substeps", opt.substeps, "RK4 step pairs per interval")->check(CLI::PositiveNumber);
  cmd->add_option("--out", opt.out, "Output path (default: stdout)");
  cmd->add_option("--format", opt.format, "csv or json");
  cmd->add_option("--qa", opt.qa, "Initial state override, comma separated");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal sampled-data controls for linear-quadratic problems"};
  app.require_subcommand(1);
  CommonOptions opt;
  std::string grid;
  std::string grids;
  std::string reference = "closed-form";

  auto* solve = app.add_subcommand("solve", "Solve on one grid and report the optimal coefficients");
  add_common(solve, opt);
  solve->add_option("--grid", grid, "uniform:N or durations:h1,h2,...");
  solve->add_flag("--debug-blocks", opt.debug_blocks, "Dump per-interval blocks as JSON lines to stderr");

  auto* converge = app.add_subcommand("converge", "Convergence of sampled controls to a reference");
  add_common(converge, opt);
  converge->add_option("--grids", grids, "Comma-separated interval counts")->required();
  converge->add_option("--reference", reference, "closed-form or fine:N");

  auto* compare = app.add_subcommand("compare-averaged", "Optimal vs averaged sampled control");
  add_common(compare, opt);
  compare->add_option("--grid", grid, "uniform:N or durations:h1,h2,...");
  compare->add_option("--reference", reference, "closed-form or fine:N");

  auto* oracle = app.add_subcommand("oracle-check", "Cross-check the sweep against the dense QP oracle");
  add_common(oracle, opt);
  oracle->add_option("--grid", grid, "uniform:N or durations:h1,h2,...");

  std::vector<const char*> argv{"sdlq"};
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (solve->parsed()) {
      return cmd_solve(opt, grid, out, err);
    }
    if (converge->parsed()) {
      return cmd_converge(opt, grids, reference, out, err);
    }
    if (compare->parsed()) {
      return cmd_compare(opt, grid, reference, out, err);
    }
    return cmd_oracle(opt, grid, out, err);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TooLarge) {
      err << "error: oracle guard exceeded (" << e.what() << ")\n";
      return kExitInput;
    }
    err << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? kExitNumerical : kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace sdlq::cli
