#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sdlq_cli/commands.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = sdlq::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) { return fs::path(SDLQ_TEST_TMPDIR) / name; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      row.push_back(std::stod(cell));
    }
    rows.push_back(row);
  }
  return rows;
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

}  // namespace

TEST_CASE("solve") {
  const auto res = run({"solve", "--problem", "dontchev", "--grid", "uniform:1"});
  REQUIRE(res.code == sdlq::cli::kExitOk);
  const auto doc = json::parse(res.out);
  CHECK(doc["U"][0][0].get<double>() == doctest::Approx(-0.8471111124).epsilon(1e-8));
  CHECK(doc["predicted_cost"].get<double>() == doctest::Approx(1.0052865553).epsilon(1e-8));
  CHECK(doc["max_pmp_residual"].get<double>() <= 1e-6);

  const auto zero = run({"solve", "--problem", "dontchev", "--grid", "uniform:1", "--qa", "0"});
  REQUIRE(zero.code == sdlq::cli::kExitOk);
  const auto zdoc = json::parse(zero.out);
  CHECK(zdoc["U"][0][0].get<double>() == 0.0);
  CHECK(zdoc["predicted_cost"].get<double>() == 0.0);

  const auto csv = run({"solve", "--problem", "double-integrator", "--grid", "durations:0.25,0.75", "--format", "csv"});
  REQUIRE(csv.code == sdlq::cli::kExitOk);
  CHECK(first_line(csv.out) == "i,s_i,h_i,U_1");
  CHECK(csv_rows(csv.out).size() == 2);

  const auto dbg = run({"solve", "--problem", "timevarying-demo", "--grid", "uniform:3", "--debug-blocks"});
  REQUIRE(dbg.code == sdlq::cli::kExitOk);
  std::istringstream lines(dbg.err);
  std::string line;
  int block_lines = 0;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.front() == '{') {
      CHECK(json::parse(line).contains("Zstep"));
      ++block_lines;
    }
  }
  CHECK(block_lines == 3);
}

TEST_CASE("input errors exit with status 2") {
  const auto unknown = run({"solve", "--problem", "no-such-problem", "--grid", "uniform:2"});
  CHECK(unknown.code == sdlq::cli::kExitInput);
  CHECK(unknown.err.find("unknown problem") != std::string::npos);

  CHECK(run({"solve", "--problem", "dontchev", "--grid", "bogus:3"}).code == sdlq::cli::kExitInput);
  CHECK(run({"solve", "--problem", "dontchev", "--grid", "durations:0.5,0.6"}).code == sdlq::cli::kExitInput);
  CHECK(run({"solve", "--problem", "dontchev", "--grid", "uniform:2", "--qa", "1,2"}).code == sdlq::cli::kExitInput);
  CHECK(run({"solve", "--problem", "dontchev", "--grid", "uniform:2", "--format", "xml"}).code ==
        sdlq::cli::kExitInput);
  CHECK(run({"converge", "--problem", "dontchev"}).code == sdlq::cli::kExitInput);
  CHECK(run({"frobnicate"}).code == sdlq::cli::kExitInput);

  const auto missing = run({"converge", "--problem", "double-integrator", "--grids", "2,4"});
  CHECK(missing.code == sdlq::cli::kExitInput);

  const auto bad_file = scratch("cli_bad_problem.json");
  {
    std::ofstream(bad_file) << R"({"a": 0, "b": 1, "n": 1, "m": 1, "A": 0, "B": 1, "W": 1, "R": 0, "S": 0, "qa": [1]})";
  }
  CHECK(run({"solve", "--problem", bad_file.string(), "--grid", "uniform:2"}).code == sdlq::cli::kExitInput);
}

TEST_CASE("converge") {
  const auto out = scratch("cli_converge.csv");
  const auto res = run({"converge", "--problem", "dontchev", "--grids", "2,5,10,30,100", "--reference", "closed-form",
                        "--out", out.string()});
  REQUIRE(res.code == sdlq::cli::kExitOk);
  const auto text = slurp(out);
  CHECK(first_line(text) == "N,norm_delta,max_node_err,cost_sampled,cost_gap,cost_averaged");
  const auto rows = csv_rows(text);
  REQUIRE(rows.size() == 5);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k][2] < rows[k - 1][2]);
  }
  CHECK(rows.back()[4] <= 1e-3);
  for (const auto& row : rows) {
    CHECK(row[4] >= -1e-6 * (1.0 + row[3]));
    CHECK(row[5] >= row[3] - 1e-6 * (1.0 + row[5]));
  }
  for (int N : {2, 5, 10, 30, 100}) {
    const auto trace = scratch("cli_converge.csv.trace_N" + std::to_string(N) + ".csv");
    REQUIRE(fs::exists(trace));
    CHECK(first_line(slurp(trace)) == "t,u_sampled,u_reference");
  }

  const auto single = run({"converge", "--problem", "dontchev", "--grids", "4"});
  REQUIRE(single.code == sdlq::cli::kExitOk);
  CHECK(csv_rows(single.out).size() == 1);

  const auto fine = run({"converge", "--problem", "timevarying-demo", "--grids", "2,8", "--reference", "fine:200"});
  REQUIRE(fine.code == sdlq::cli::kExitOk);
  const auto frows = csv_rows(fine.out);
  REQUIRE(frows.size() == 2);
  CHECK(frows[1][2] < frows[0][2]);

  CHECK(run({"converge", "--problem", "dontchev", "--grids", "2,8", "--reference", "fine:8"}).code ==
        sdlq::cli::kExitInput);
}

TEST_CASE("compare-averaged") {
  const auto two = run({"compare-averaged", "--problem", "dontchev", "--grid", "uniform:2"});
  REQUIRE(two.code == sdlq::cli::kExitOk);
  CHECK(first_line(two.out) == "i,s_i,U_optimal,U_averaged,diff");
  const auto rows = csv_rows(two.out);
  REQUIRE(rows.size() == 2);
  const double diff2 = std::max(rows[0][4], rows[1][4]);
  CHECK(diff2 > 1e-3);

  const auto json_out = run({"compare-averaged", "--problem", "dontchev", "--grid", "uniform:2", "--format", "json"});
  const auto doc = json::parse(json_out.out);
  CHECK(doc["cost_averaged"].get<double>() >= doc["cost_sampled"].get<double>());

  const auto hundred = run({"compare-averaged", "--problem", "dontchev", "--grid", "uniform:100", "--format", "json"});
  REQUIRE(hundred.code == sdlq::cli::kExitOk);
  CHECK(json::parse(hundred.out)["max_diff"].get<double>() < diff2);

  // Tracking a constant v with no state weights: every control equals v.
  const auto file = scratch("cli_constant_tracking.json");
  {
    std::ofstream(file) << R"({"a": 0, "b": 1, "n": 1, "m": 1, "A": -1, "B": 1, "W": 0, "R": 1, "S": 0,
                               "v": [0.7], "qa": [1]})";
  }
  const auto constant = run({"compare-averaged", "--problem", file.string(), "--grid", "uniform:3", "--reference",
                             "fine:12", "--format", "json"});
  REQUIRE(constant.code == sdlq::cli::kExitOk);
  CHECK(json::parse(constant.out)["max_diff"].get<double>() <= 1e-12);
}

TEST_CASE("oracle-check") {
  const auto ok = run({"oracle-check", "--problem", "dontchev", "--grid", "uniform:5"});
  CHECK(ok.code == sdlq::cli::kExitOk);
  CHECK(json::parse(ok.out)["max_rel_diff"].get<double>() <= 1e-6);

  const auto random = run({"oracle-check", "--random", "seed:42"});
  CHECK(random.code == sdlq::cli::kExitOk);

  const auto guard = run({"oracle-check", "--problem", "dontchev", "--grid", "uniform:401"});
  CHECK(guard.code == sdlq::cli::kExitInput);
  CHECK(guard.err.find("oracle guard exceeded") != std::string::npos);
}

TEST_CASE("identical command lines give identical bytes") {
  const std::vector<std::string> solve{"solve", "--problem", "timevarying-demo", "--grid", "uniform:4"};
  CHECK(run(solve).out == run(solve).out);
  const auto a = scratch("cli_det_a.csv");
  const auto b = scratch("cli_det_b.csv");
  CHECK(run({"converge", "--problem", "dontchev", "--grids", "3,6", "--out", a.string()}).code == 0);
  CHECK(run({"converge", "--problem", "dontchev", "--grids", "3,6", "--out", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a.string() + ".trace_N6.csv") == slurp(b.string() + ".trace_N6.csv"));
}
