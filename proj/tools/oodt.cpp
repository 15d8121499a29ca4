// Experiment runner: single runs, sweeps, searchability checks and
// equilibrium reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "oodt/auction.hpp"
#include "oodt/cli.hpp"
#include "oodt/geometry.hpp"

namespace {

using namespace oodt;

struct Output {
  std::unique_ptr<std::ofstream> file;
  std::ostream* os = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file) throw cli::IoFailure("cannot open " + path + " for writing");
    os = file.get();
  }
};

std::vector<sim::Protocol> parse_protocols(const std::vector<std::string>& names) {
  std::vector<sim::Protocol> out;
  for (const auto& n : names) out.push_back(sim::parse_protocol(n));
  return out;
}

void write_report_json(std::ostream& os, const sim::Scenario& s, const sim::MetricsReport& m,
                       const sim::InvariantCounters& c) {
  nlohmann::ordered_json j;
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr); };
  j["protocol"] = sim::to_string(s.protocol);
  j["seed"] = s.seed;
  j["su_count"] = s.su_count;
  j["obstacle_count"] = s.obstacle_count;
  j["pdr"] = m.pdr;
  j["avg_delay"] = m.avg_delay ? num(*m.avg_delay) : nlohmann::ordered_json(nullptr);
  j["routing_cost"] = m.raw.delivered ? num(m.expected_routing_cost) : nlohmann::ordered_json(nullptr);
  j["lifetime"] = m.network_lifetime;
  j["friend_pairs"] = m.friend_pairs;
  j["generated"] = m.raw.generated;
  j["delivered"] = m.raw.delivered;
  j["dropped"] = m.raw.dropped;
  j["in_flight"] = m.raw.in_flight;
  j["invariant_violations"] = c.violations();
  os << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Obstacle-aware opportunistic routing simulator"};
  app.require_subcommand(1);
  app.failure_message([](const CLI::App*, const CLI::Error& e) { return std::string("error: ") + e.what() + "\n"; });

  std::string scenario_path, sweep_path, out_path, format = "csv";
  std::vector<std::string> protocols;
  std::uint64_t seed = 0;
  std::size_t seeds = 0;
  bool trace = false;

  auto* run = app.add_subcommand("run", "run one scenario and print its metrics row");
  run->add_option("--scenario", scenario_path, "scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--protocol", protocols, "protocol (OODT, OODT-NoObstacle, ShortestETX)")->delimiter(',');
  run->add_option("--out", out_path, "output file (default stdout)");
  run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  run->add_flag("--trace", trace, "write the event log to stderr");

  auto* sweep = app.add_subcommand("sweep", "run a seed batch over one axis and aggregate");
  sweep->add_option("--sweep", sweep_path, "sweep file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--seed", seed, "override the master seed");
  sweep->add_option("--seeds", seeds, "override the seed count");
  sweep->add_option("--protocol", protocols, "protocol subset")->delimiter(',');
  sweep->add_option("--out", out_path, "output file (default stdout)");
  sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* geometry = app.add_subcommand("geometry", "polygon tools");
  geometry->require_subcommand(1);
  std::string polygon_path;
  auto* check = geometry->add_subcommand("check", "searchability verdicts and schedules");
  check->add_option("polygons", polygon_path, "polygon file")->required()->check(CLI::ExistingFile);
  check->add_option("--out", out_path, "output file (default stdout)");

  auto* auction = app.add_subcommand("auction", "auction tools");
  auction->require_subcommand(1);
  std::size_t max_bidders = 10;
  double step = 1e-4;
  std::string strategy = "both";
  auto* verify = auction->add_subcommand("verify", "epsilon-equilibrium report");
  verify->add_option("--max-bidders", max_bidders, "largest bidder count")->check(CLI::Range(2, 1000));
  verify->add_option("--step", step, "deviation grid step")->check(CLI::Range(1e-6, 0.1));
  verify->add_option("--strategy", strategy, "literal, derived or both")
      ->check(CLI::IsMember({"literal", "derived", "both"}));
  verify->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) {
      sim::Scenario s = sim::load_scenario(scenario_path);
      if (run->count("--seed")) s.seed = seed;
      if (!protocols.empty()) {
        const auto ps = parse_protocols(protocols);
        if (ps.size() != 1) throw cli::ScenarioInvalid("run takes exactly one protocol");
        s.protocol = ps.front();
      }
      sim::RunOptions opt;
      if (trace) opt.event_trace = &std::cerr;
      const sim::RunResult r = sim::run_scenario(s, opt);
      Output out(out_path);
      if (cli::parse_format(format) == cli::Format::Csv) {
        *out.os << sim::metrics_csv_header() << '\n';
        sim::write_metrics_row(*out.os, s, r.report);
      } else {
        write_report_json(*out.os, s, r.report, r.invariants);
      }
      if (r.invariants.violations()) {
        std::cerr << "error: " << r.invariants.violations() << " invariant violations\n";
        return 3;
      }
    } else if (*sweep) {
      cli::SweepSpec spec = cli::load_sweep(sweep_path);
      if (sweep->count("--seed")) spec.master_seed = seed;
      if (sweep->count("--seeds")) spec.seeds = seeds;
      if (!protocols.empty()) spec.protocols = parse_protocols(protocols);
      const auto rows = cli::run_sweep(spec);
      if (out_path.empty()) {
        cli::write_rows(std::cout, rows, cli::parse_format(format));
      } else {
        cli::emit(rows, cli::parse_format(format), out_path);
      }
    } else if (*check) {
      std::ifstream in(polygon_path);
      const auto polys = geometry::read_polygons(in);
      Output out(out_path);
      for (std::size_t i = 0; i < polys.size(); ++i) {
        const bool ok = geometry::is_boundary_1_searchable(polys[i]);
        *out.os << "polygon " << i << " n=" << polys[i].size() << (ok ? " searchable" : " not searchable") << '\n';
        if (!ok) continue;
        const geometry::SearchSchedule sch = geometry::bsa_search(polys[i]);
        *out.os << "  m=" << sch.m << " searcher_distance=" << sch.searcher_distance
                << " verified=" << (geometry::schedule_verify(polys[i], sch) ? "yes" : "no") << '\n';
        geometry::dump_schedule(*out.os, polys[i], sch);
      }
    } else if (*verify) {
      Output out(out_path);
      *out.os << "strategy,n,max_deviation,at_value\n";
      for (auto st : {auction::BidStrategy::Literal, auction::BidStrategy::Derived}) {
        const bool literal = st == auction::BidStrategy::Literal;
        if ((strategy == "derived" && literal) || (strategy == "literal" && !literal)) continue;
        for (std::size_t n = 2; n <= max_bidders; ++n) {
          double worst = 0, at = 0;
          for (int k = 1; k < 100; ++k) {
            const double v = k / 100.0;
            const double d = auction::best_response(v, n, st, step).deviation;
            if (d > worst) worst = d, at = v;
          }
          *out.os << (literal ? "literal" : "derived") << ',' << n << ',' << sim::format_number(worst) << ','
                  << at << '\n';
        }
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
