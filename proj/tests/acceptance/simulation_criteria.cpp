#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/math/statistics/bivariate_statistics.hpp>

#include "criteria.hpp"
#include "oodt/cli.hpp"

namespace acceptance {

namespace {

using namespace oodt;

std::string scenario_path(const std::string& name) { return std::string(OODT_SCENARIO_DIR) + "/" + name; }

struct TrendSuite {
  cli::SweepOutcome obstacles;
  cli::SweepOutcome su;
  double seconds = 0.0;
};

const TrendSuite& trend_suite() {
  static const TrendSuite suite = [] {
    const auto t0 = std::chrono::steady_clock::now();
    TrendSuite s;
    s.obstacles = cli::execute_sweep(cli::load_sweep(scenario_path("obstacle_sweep.sweep")));
    s.su = cli::execute_sweep(cli::load_sweep(scenario_path("su_sweep.sweep")));
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return s;
  }();
  return suite;
}

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = 0.5 * static_cast<double>(i + j) + 1.0;
    i = j + 1;
  }
  return r;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return boost::math::statistics::correlation_coefficient(average_ranks(x), average_ranks(y));
}

using Metric = double (*)(const cli::AggregateRow&);

Outcome trend(const cli::SweepOutcome& o, sim::Protocol p, Metric metric, const char* what) {
  std::vector<double> xs, ys;
  std::ostringstream os;
  os.precision(4);
  for (const auto& r : o.rows)
    if (r.protocol == p) {
      xs.push_back(static_cast<double>(r.value));
      ys.push_back(metric(r));
      os << (xs.size() > 1 ? ", " : "") << r.value << ":" << ys.back();
    }
  const double rho = spearman(xs, ys);
  std::ostringstream detail;
  detail.precision(3);
  detail << what << " means {" << os.str() << "}, spearman rho = " << rho << " (need <= -0.8)";
  return {rho <= -0.8, detail.str()};
}

Outcome pdr_vs_obstacles() {
  const TrendSuite& s = trend_suite();
  Outcome o = trend(s.obstacles, sim::Protocol::Oodt, [](const cli::AggregateRow& r) { return r.pdr.mean; }, "PDR");
  std::ostringstream os;
  os << o.detail << "; trend suite took " << static_cast<int>(s.seconds) << " s (limit 900)";
  return {o.pass && s.seconds <= 900.0, os.str()};
}

Outcome obstacle_awareness_gain() {
  double oodt = 0, blind = 0;
  for (const auto& r : trend_suite().obstacles.rows)
    if (r.value == 6) (r.protocol == sim::Protocol::Oodt ? oodt : blind) = r.pdr.mean;
  std::ostringstream os;
  os.precision(4);
  const double gain = blind > 0 ? oodt / blind - 1.0 : 0.0;
  os << "at 6 obstacles OODT PDR " << oodt << " vs OODT-NoObstacle " << blind << ", relative gain " << 100 * gain
     << "% (need >= 5%)";
  return {blind > 0 && gain >= 0.05, os.str()};
}

Outcome delay_vs_su() {
  return trend(trend_suite().su, sim::Protocol::Oodt, [](const cli::AggregateRow& r) { return r.delay.mean; },
               "delay");
}

Outcome friends_vs_obstacles() {
  return trend(trend_suite().obstacles, sim::Protocol::Oodt,
               [](const cli::AggregateRow& r) { return r.friends.mean; }, "friend pairs");
}

Outcome lifetime_vs_obstacles() {
  return trend(trend_suite().obstacles, sim::Protocol::Oodt,
               [](const cli::AggregateRow& r) { return r.lifetime.mean; }, "lifetime");
}

std::string metrics_csv(const sim::Scenario& s) {
  std::ostringstream os;
  os << sim::metrics_csv_header() << '\n';
  sim::write_metrics_row(os, s, sim::run(s));
  return os.str();
}

Outcome determinism() {
  const sim::Scenario base = sim::load_scenario(scenario_path("desk.scn"));
  std::size_t same = 0, total = 0;
  for (sim::Protocol p : {sim::Protocol::Oodt, sim::Protocol::OodtNoObstacle, sim::Protocol::ShortestEtx})
    for (std::uint64_t seed : {11u, 12u}) {
      sim::Scenario s = base;
      s.protocol = p;
      s.seed = seed;
      ++total;
      same += metrics_csv(s) == metrics_csv(s);
    }
  cli::SweepSpec spec;
  spec.base = base;
  spec.values = {0, 4};
  spec.seeds = 2;
  spec.protocols = {sim::Protocol::Oodt, sim::Protocol::OodtNoObstacle};
  std::ostringstream a, b;
  cli::write_csv(a, cli::run_sweep(spec));
  spec.parallelism = 1;
  cli::write_csv(b, cli::run_sweep(spec));
  ++total;
  same += a.str() == b.str();
  std::ostringstream os;
  os << same << "/" << total << " repeated runs byte-identical (6 scenarios, 1 sweep)";
  return {same == total, os.str()};
}

Outcome invariants() {
  const TrendSuite& s = trend_suite();
  sim::InvariantCounters c;
  std::size_t runs = 0;
  for (const auto* o : {&s.obstacles, &s.su})
    for (const auto& r : o->runs) {
      c += r.result.invariants;
      ++runs;
    }
  std::ostringstream os;
  os << runs << " runs, " << c.rounds_checked << " rounds, " << c.transmissions_checked
     << " transmissions; conservation " << c.conservation << ", interweave " << c.interweave << ", radio budget "
     << c.radio_budget << ", half duplex " << c.half_duplex << ", suppression " << c.suppression << ", obstacle "
     << c.obstacle << ", energy causality " << c.energy_causality << ", hop order " << c.hop_order;
  return {c.violations() == 0 && c.rounds_checked > 0, os.str()};
}

}  // namespace

SimulationInvariantSummary simulation_fsa_invariants() {
  const sim::Scenario base = sim::load_scenario(scenario_path("desk.scn"));
  SimulationInvariantSummary out;
  for (std::uint64_t seed : {21u, 22u, 23u}) {
    sim::Scenario s = base;
    s.seed = seed;
    const sim::InvariantCounters c = sim::run_scenario(s).invariants;
    out.rounds += c.rounds_checked;
    out.disjointness += c.partition_disjointness;
    out.threshold += c.threshold_filter;
  }
  return out;
}

std::vector<Criterion> simulation_criteria() {
  return {
      {9, "trend (a) PDR vs obstacles", 0.0, pdr_vs_obstacles},
      {9, "trend (b) obstacle awareness", 0.0, obstacle_awareness_gain},
      {9, "trend (c) delay vs SU count", 0.0, delay_vs_su},
      {9, "trend (d) friend pairs vs obstacles", 0.0, friends_vs_obstacles},
      {9, "trend (e) lifetime vs obstacles", 0.0, lifetime_vs_obstacles},
      {10, "determinism", 0.0, determinism},
      {11, "simulation invariants", 0.0, invariants},
  };
}

}  // namespace acceptance
