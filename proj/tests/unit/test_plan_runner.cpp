#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "excode/chart.hpp"
#include "excode/config.hpp"
#include "excode/plan_runner.hpp"

using namespace excode;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("5 loads x 3 schemes x 5 seeds gives 75 rows") {
  auto plan = parse_config(R"({
    "flows": { "count": 2, "rate": 20 },
    "duration": 0.5,
    "sweep": { "variable": "flows", "values": [1, 2, 3, 4, 5], "seeds": [1, 2, 3, 4, 5] }
  })");
  RunPlanOptions opts;
  opts.write_files = false;
  const auto out = run_plan(plan, opts);
  CHECK(out.cells.size() == 75);
  CHECK(out.errors.empty());
  CHECK(lines(out.csv) == 76);
  const auto table = parse_csv(out.csv);
  CHECK(table.rows.size() == 75);
  CHECK(table.header.size() == 11);
  // Plan order: sweep value, then scheme, then seed.
  CHECK(out.cells[0].scheme == Scheme::NonCoding);
  CHECK(out.cells[5].scheme == Scheme::Cope);
  CHECK(out.cells[15].flows == 2);
}

TEST_CASE("single cell plan") {
  auto plan = parse_config(R"({ "topology": { "builtin": "chain" }, "scheme": "excode" })");
  RunPlanOptions opts;
  opts.write_files = false;
  const auto out = run_plan(plan, opts);
  REQUIRE(out.cells.size() == 1);
  REQUIRE(out.cells[0].metrics.has_value());
  CHECK(out.cells[0].metrics->total_tx == 3);
  CHECK(lines(out.csv) == 2);
}

TEST_CASE("invalid cells are reported, not fatal") {
  auto plan = parse_config(R"({
    "topology": { "positions": [[0, 0], [100, 0], [1000, 0]] },
    "flows": [ { "src": 0, "dst": 1 }, { "src": 0, "dst": 2 } ],
    "duration": 0.1, "scheme": "none"
  })");
  RunPlanOptions opts;
  opts.write_files = false;
  const auto out = run_plan(plan, opts);
  REQUIRE(out.cells.size() == 1);
  CHECK_FALSE(out.cells[0].metrics.has_value());
  CHECK_FALSE(out.errors.empty());
  CHECK(out.cells[0].error.find("flow 1") != std::string::npos);
}

TEST_CASE("repeated plans write byte-identical CSV and charts") {
  const auto dir = std::filesystem::temp_directory_path() / "excode_plan_runner_test";
  std::filesystem::remove_all(dir);
  auto plan = parse_config(R"({
    "flows": { "count": 3, "rate": 100 }, "duration": 1,
    "sweep": { "variable": "flows", "values": [2, 4], "seeds": [1, 2] }
  })");
  plan.output_dir = dir / "a";
  const auto a = run_plan(plan);
  plan.output_dir = dir / "b";
  RunPlanOptions one_thread;
  one_thread.threads = 1;
  const auto b = run_plan(plan, one_thread);
  CHECK(a.csv == b.csv);
  CHECK(slurp(dir / "a" / "results.csv") == a.csv);
  CHECK(slurp(dir / "a" / "results.csv") == slurp(dir / "b" / "results.csv"));
  for (auto name : {"throughput.svg", "encoded_fraction.svg", "delivery_ratio.svg", "delay.svg"}) {
    CHECK(std::filesystem::exists(dir / "a" / name));
    CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("charts aggregate per scheme and load") {
  const auto table = parse_csv(
      "scheme,seed,flows,offered_kbps,throughput_kbps,encoded_frac,pdr,mean_delay_s,total_tx,encodes,decode_failures\n"
      "none,1,2,100.000,90.000,0.000000,0.900000,0.010000,10,0,0\n"
      "none,2,2,100.000,80.000,0.000000,0.800000,,10,0,0\n"
      "excode,1,2,100.000,95.000,0.100000,0.950000,0.008000,9,1,0\n");
  const auto series = aggregate_series(table, "throughput_kbps");
  REQUIRE(series.size() == 2);
  for (const auto& s : series) {
    REQUIRE(s.points.size() == 1);
    CHECK(s.points[0].first == doctest::Approx(100.0));
    CHECK(s.points[0].second == doctest::Approx(s.name == "none" ? 85.0 : 95.0));
  }
  const auto svg = render_line_chart("t", "x", "y", series);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
}
