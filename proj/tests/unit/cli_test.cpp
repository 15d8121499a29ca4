#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "oodt/cli.hpp"

using namespace oodt::cli;
using oodt::sim::Protocol;

namespace {

SweepSpec quick_spec() {
  SweepSpec spec;
  spec.base.duration = 5;
  spec.base.su_count = 20;
  spec.axis = Axis::ObstacleCount;
  spec.values = {0, 4};
  spec.seeds = 3;
  spec.protocols = {Protocol::Oodt};
  spec.master_seed = 5;
  return spec;
}

std::string csv_of(const std::vector<AggregateRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

bool same_value(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

void expect_same_rows(const std::vector<AggregateRow>& a, const std::vector<AggregateRow>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].protocol, b[i].protocol);
    EXPECT_EQ(a[i].axis, b[i].axis);
    EXPECT_EQ(a[i].value, b[i].value);
    EXPECT_EQ(a[i].runs, b[i].runs);
    for (auto m : {&AggregateRow::pdr, &AggregateRow::delay, &AggregateRow::cost, &AggregateRow::lifetime,
                   &AggregateRow::friends}) {
      EXPECT_TRUE(same_value((a[i].*m).mean, (b[i].*m).mean));
      EXPECT_TRUE(same_value((a[i].*m).ci, (b[i].*m).ci));
    }
  }
}

}  // namespace

TEST(RunSeed, PairwiseDistinct) {
  for (std::uint64_t master : {0ull, 1ull, 0xffffffffffffffffull}) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 20000; ++i) seen.insert(run_seed(master, i));
    EXPECT_EQ(seen.size(), 20000u);
  }
  EXPECT_NE(run_seed(1, 0), run_seed(2, 0));
}

TEST(Estimate, StudentInterval) {
  // t(0.975, 4) = 2.7764451052 from standard tables.
  const Estimate e = estimate({1, 2, 3, 4, 5});
  EXPECT_DOUBLE_EQ(e.mean, 3.0);
  EXPECT_NEAR(e.ci, 2.7764451052 * std::sqrt(2.5 / 5), 1e-9);
  const Estimate one = estimate({4.5});
  EXPECT_DOUBLE_EQ(one.mean, 4.5);
  EXPECT_DOUBLE_EQ(one.ci, 0.0);
  const Estimate gaps = estimate({1, std::nan(""), 3});
  EXPECT_DOUBLE_EQ(gaps.mean, 2.0);
  EXPECT_TRUE(std::isnan(estimate({}).mean));
}

TEST(Sweep, OneCellFiveSeeds) {
  SweepSpec spec = quick_spec();
  spec.values = {4};
  spec.seeds = 5;
  const auto out = execute_sweep(spec);
  ASSERT_EQ(out.rows.size(), 1u);
  EXPECT_EQ(out.rows[0].runs, 5u);
  EXPECT_EQ(out.runs.size(), 5u);
  EXPECT_GE(out.rows[0].pdr.ci, 0.0);
  std::set<std::uint64_t> seeds;
  for (const auto& r : out.runs) {
    seeds.insert(r.scenario.seed);
    EXPECT_EQ(r.scenario.obstacle_count, 4u);
  }
  EXPECT_EQ(seeds.size(), 5u);
}

TEST(Sweep, ObstacleSweepShape) {
  SweepSpec spec = quick_spec();
  spec.base.duration = 2;
  spec.values = {0, 2, 4, 6, 8, 10};
  spec.seeds = 20;
  spec.protocols = {Protocol::OodtNoObstacle, Protocol::Oodt};
  const auto rows = run_sweep(spec);
  ASSERT_EQ(rows.size(), 12u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].protocol, i < 6 ? Protocol::Oodt : Protocol::OodtNoObstacle);
    EXPECT_EQ(rows[i].value, spec.values[i % 6]);
    EXPECT_EQ(rows[i].runs, 20u);
  }
}

TEST(Sweep, PairedProtocolsShareSeeds) {
  SweepSpec spec = quick_spec();
  spec.protocols = {Protocol::Oodt, Protocol::OodtNoObstacle};
  spec.paired = true;
  const auto out = execute_sweep(spec);
  const std::size_t half = out.runs.size() / 2;
  std::set<std::uint64_t> seeds;
  for (std::size_t i = 0; i < half; ++i) {
    EXPECT_EQ(out.runs[i].scenario.seed, out.runs[half + i].scenario.seed);
    EXPECT_NE(out.runs[i].scenario.protocol, out.runs[half + i].scenario.protocol);
    seeds.insert(out.runs[i].scenario.seed);
  }
  EXPECT_EQ(seeds.size(), half);
}

TEST(Sweep, SuAxisSetsNodeCount) {
  SweepSpec spec = quick_spec();
  spec.axis = Axis::SuCount;
  spec.values = {10, 15};
  spec.seeds = 1;
  const auto out = execute_sweep(spec);
  EXPECT_EQ(out.runs[0].scenario.su_count, 10u);
  EXPECT_EQ(out.runs[1].scenario.su_count, 15u);
  EXPECT_EQ(out.rows[1].axis, Axis::SuCount);
}

TEST(Sweep, ReproducibleAcrossParallelism) {
  SweepSpec spec = quick_spec();
  spec.parallelism = 1;
  const std::string a = csv_of(run_sweep(spec));
  spec.parallelism = 3;
  EXPECT_EQ(csv_of(run_sweep(spec)), a);
  spec.master_seed = 6;
  EXPECT_NE(csv_of(run_sweep(spec)), a);
}

TEST(Sweep, InvalidSpecs) {
  SweepSpec spec = quick_spec();
  spec.values = {4, 4};
  EXPECT_THROW(run_sweep(spec), ScenarioInvalid);
  spec = quick_spec();
  spec.seeds = 0;
  EXPECT_THROW(run_sweep(spec), ScenarioInvalid);
  spec = quick_spec();
  spec.protocols.clear();
  EXPECT_THROW(run_sweep(spec), ScenarioInvalid);
  spec = quick_spec();
  spec.base.duration = -1;
  EXPECT_THROW(run_sweep(spec), ScenarioInvalid);
}

TEST(SweepFile, ParsesKeysAndOverrides) {
  const auto dir = std::filesystem::temp_directory_path() / "oodt_sweep_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "base.scn") << "su_count = 33\nduration = 7\n";
  std::ofstream(dir / "s.sweep") << "scenario = base.scn\naxis = su_count\nvalues = 10, 20,30\nseeds = 4\n"
                                 << "protocols = OODT, ShortestETX\nmaster_seed = 99\npaired = true\n"
                                 << "duration = 9 # override\n";
  const SweepSpec spec = load_sweep((dir / "s.sweep").string());
  EXPECT_EQ(spec.axis, Axis::SuCount);
  EXPECT_EQ(spec.values, (std::vector<std::size_t>{10, 20, 30}));
  EXPECT_EQ(spec.seeds, 4u);
  EXPECT_EQ(spec.protocols, (std::vector<Protocol>{Protocol::Oodt, Protocol::ShortestEtx}));
  EXPECT_EQ(spec.master_seed, 99u);
  EXPECT_TRUE(spec.paired);
  EXPECT_EQ(spec.base.su_count, 33u);
  EXPECT_DOUBLE_EQ(spec.base.duration, 9.0);
  std::istringstream bad_axis("axis = speed\n");
  EXPECT_THROW(parse_sweep(bad_axis), ScenarioInvalid);
  std::istringstream bad_seeds("seeds = -2\n");
  EXPECT_THROW(parse_sweep(bad_seeds), ScenarioInvalid);
  std::istringstream bad_key("nonsense = 1\n");
  EXPECT_THROW(parse_sweep(bad_key), ScenarioInvalid);
  std::filesystem::remove_all(dir);
}

TEST(Emit, CsvHeaderAndOneLine) {
  SweepSpec spec = quick_spec();
  spec.values = {0};
  const auto rows = run_sweep(spec);
  const std::string csv = csv_of(rows);
  std::istringstream in(csv);
  std::string header, line, extra;
  std::getline(in, header);
  std::getline(in, line);
  EXPECT_FALSE(std::getline(in, extra));
  EXPECT_EQ(header,
            "protocol,axis,value,pdr_mean,pdr_ci,delay_mean,delay_ci,cost_mean,cost_ci,lifetime_mean,lifetime_ci,"
            "friends_mean,friends_ci,runs");
  EXPECT_EQ(line.rfind("OODT,obstacle_count,0,", 0), 0u);
}

TEST(Emit, JsonAndCsvRoundTripToSameRows) {
  std::vector<AggregateRow> rows = run_sweep(quick_spec());
  rows[0].delay = {};  // absent values survive both formats
  std::istringstream csv(csv_of(rows));
  expect_same_rows(read_csv(csv), rows);
  std::ostringstream js;
  write_rows(js, rows, Format::Json);
  expect_same_rows(from_json(nlohmann::ordered_json::parse(js.str())), rows);
  const auto j = to_json(rows);
  EXPECT_EQ(j[0].begin().key(), "protocol");
  EXPECT_TRUE(j[0]["delay_mean"].is_null());
}

TEST(Emit, Failures) {
  EXPECT_THROW(emit({}, Format::Csv, "/tmp/never.csv"), IoFailure);
  const auto rows = run_sweep(quick_spec());
  EXPECT_THROW(emit(rows, Format::Csv, "/nonexistent-dir/x.csv"), IoFailure);
  EXPECT_THROW(parse_format("xml"), ScenarioInvalid);
  const auto path = std::filesystem::temp_directory_path() / "oodt_emit_test.json";
  emit(rows, Format::Json, path.string());
  std::ifstream in(path);
  expect_same_rows(from_json(nlohmann::ordered_json::parse(in)), rows);
  std::filesystem::remove(path);
}
