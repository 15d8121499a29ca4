#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "oodt/sim.hpp"

namespace oodt::cli {

using sim::Protocol;
using sim::Scenario;

class ScenarioInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Axis { SuCount, ObstacleCount };

inline const char* to_string(Axis a) { return a == Axis::SuCount ? "su_count" : "obstacle_count"; }

inline Axis parse_axis(const std::string& s) {
  if (s == "su_count") return Axis::SuCount;
  if (s == "obstacle_count") return Axis::ObstacleCount;
  throw ScenarioInvalid("unknown sweep axis '" + s + "'");
}

struct SweepSpec {
  Scenario base;
  Axis axis = Axis::ObstacleCount;
  std::vector<std::size_t> values;
  std::size_t seeds = 20;
  std::vector<Protocol> protocols{Protocol::Oodt};
  std::uint64_t master_seed = 1;
  std::size_t parallelism = 0;  // 0 = hardware concurrency
  bool paired = false;          // every protocol replays the same seeds
};

inline void validate(const SweepSpec& spec) {
  if (spec.values.empty()) throw ScenarioInvalid("sweep needs at least one axis value");
  for (std::size_t i = 1; i < spec.values.size(); ++i)
    if (spec.values[i] <= spec.values[i - 1]) throw ScenarioInvalid("sweep values must be strictly increasing");
  if (spec.seeds < 1) throw ScenarioInvalid("seeds must be >= 1");
  if (spec.protocols.empty()) throw ScenarioInvalid("sweep needs at least one protocol");
  try {
    sim::validate(spec.base);
  } catch (const sim::ConfigInvalid& e) {
    throw ScenarioInvalid(e.what());
  }
}

// Bijective mix of the master seed and the run index, so per-run seeds
// within one sweep never collide (unless paired, where each protocol
// replays the same seeds).
inline std::uint64_t run_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct RunRecord {
  Protocol protocol = Protocol::Oodt;
  std::size_t value = 0;
  std::size_t seed_index = 0;
  Scenario scenario;
  sim::RunResult result;
};

struct Estimate {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double ci = std::numeric_limits<double>::quiet_NaN();
};

struct AggregateRow {
  Protocol protocol = Protocol::Oodt;
  Axis axis = Axis::ObstacleCount;
  std::size_t value = 0;
  Estimate pdr, delay, cost, lifetime, friends;
  std::size_t runs = 0;
};

// Mean and Student-t 95% half-width; NaN entries are skipped.
inline Estimate estimate(const std::vector<double>& xs) {
  std::vector<double> v;
  for (double x : xs)
    if (std::isfinite(x)) v.push_back(x);
  Estimate e;
  if (v.empty()) return e;
  const double n = static_cast<double>(v.size());
  double mean = 0;
  for (double x : v) mean += x;
  mean /= n;
  e.mean = mean;
  if (v.size() < 2) {
    e.ci = 0.0;
    return e;
  }
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const boost::math::students_t t(n - 1);
  e.ci = boost::math::quantile(boost::math::complement(t, 0.025)) * std::sqrt(ss / (n - 1) / n);
  return e;
}

inline Scenario cell_scenario(const SweepSpec& spec, Protocol p, std::size_t value, std::uint64_t seed) {
  Scenario s = spec.base;
  s.protocol = p;
  (spec.axis == Axis::SuCount ? s.su_count : s.obstacle_count) = value;
  s.seed = seed;
  return s;
}

struct SweepOutcome {
  std::vector<AggregateRow> rows;
  std::vector<RunRecord> runs;
};

inline SweepOutcome execute_sweep(const SweepSpec& spec) {
  validate(spec);
  SweepOutcome out;
  for (std::size_t pi = 0; pi < spec.protocols.size(); ++pi)
    for (std::size_t vi = 0; vi < spec.values.size(); ++vi)
      for (std::size_t k = 0; k < spec.seeds; ++k) {
        RunRecord r;
        r.protocol = spec.protocols[pi];
        r.value = spec.values[vi];
        r.seed_index = k;
        const std::size_t index = spec.paired ? vi * spec.seeds + k : out.runs.size();
        r.scenario = cell_scenario(spec, r.protocol, r.value, run_seed(spec.master_seed, index));
        out.runs.push_back(std::move(r));
      }

  std::size_t workers = spec.parallelism ? spec.parallelism : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, out.runs.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < out.runs.size(); i = next++)
        out.runs[i].result = sim::run_scenario(out.runs[i].scenario);
    }));
  for (auto& j : jobs) j.get();

  for (std::size_t start = 0; start < out.runs.size(); start += spec.seeds) {
    std::vector<double> pdr, delay, cost, life, friends;
    for (std::size_t i = start; i < start + spec.seeds; ++i) {
      const sim::MetricsReport& m = out.runs[i].result.report;
      pdr.push_back(m.pdr);
      delay.push_back(m.avg_delay ? *m.avg_delay : std::numeric_limits<double>::quiet_NaN());
      cost.push_back(m.raw.delivered ? m.expected_routing_cost : std::numeric_limits<double>::quiet_NaN());
      life.push_back(m.network_lifetime);
      friends.push_back(m.friend_pairs);
    }
    AggregateRow row;
    row.protocol = out.runs[start].protocol;
    row.axis = spec.axis;
    row.value = out.runs[start].value;
    row.pdr = estimate(pdr);
    row.delay = estimate(delay);
    row.cost = estimate(cost);
    row.lifetime = estimate(life);
    row.friends = estimate(friends);
    row.runs = spec.seeds;
    out.rows.push_back(row);
  }
  std::sort(out.rows.begin(), out.rows.end(), [](const AggregateRow& a, const AggregateRow& b) {
    return std::tuple(static_cast<int>(a.protocol), a.value) < std::tuple(static_cast<int>(b.protocol), b.value);
  });
  return out;
}

inline std::vector<AggregateRow> run_sweep(const SweepSpec& spec) { return execute_sweep(spec).rows; }

// Sweep file: key = value lines. Sweep keys are scenario, axis, values,
// seeds, protocols, master_seed, parallelism and paired; anything else
// overrides the base scenario.
inline SweepSpec parse_sweep(std::istream& in, const std::filesystem::path& dir = {}) {
  SweepSpec spec;
  std::vector<std::pair<std::string, std::string>> overrides;
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  auto split = [&](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
      if (!trim(item).empty()) out.push_back(trim(item));
    return out;
  };
  auto number = [&](const std::string& v, std::size_t at) -> std::uint64_t {
    try {
      std::size_t used = 0;
      if (v.empty() || v.front() == '-') throw std::invalid_argument(v);
      const unsigned long long x = std::stoull(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw ScenarioInvalid("line " + std::to_string(at) + ": expected a non-negative integer, got '" + v + "'");
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ScenarioInvalid("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    try {
      if (key == "scenario") {
        std::filesystem::path p(value);
        if (p.is_relative()) p = dir / p;
        spec.base = sim::load_scenario(p.string());
      } else if (key == "axis") {
        spec.axis = parse_axis(value);
      } else if (key == "values") {
        spec.values.clear();
        for (const auto& v : split(value)) spec.values.push_back(number(v, lineno));
      } else if (key == "seeds") {
        spec.seeds = number(value, lineno);
      } else if (key == "protocols") {
        spec.protocols.clear();
        for (const auto& v : split(value)) spec.protocols.push_back(sim::parse_protocol(v));
      } else if (key == "master_seed") {
        spec.master_seed = number(value, lineno);
      } else if (key == "parallelism") {
        spec.parallelism = number(value, lineno);
      } else if (key == "paired") {
        if (value != "true" && value != "false")
          throw ScenarioInvalid("line " + std::to_string(lineno) + ": paired must be true or false");
        spec.paired = value == "true";
      } else {
        overrides.emplace_back(key, value);
      }
    } catch (const sim::ConfigInvalid& e) {
      throw ScenarioInvalid("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  for (const auto& [k, v] : overrides) {
    try {
      sim::set_key(spec.base, k, v);
    } catch (const sim::ConfigInvalid& e) {
      throw ScenarioInvalid(e.what());
    }
  }
  return spec;
}

inline SweepSpec load_sweep(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioInvalid("cannot open sweep file " + path);
  return parse_sweep(in, std::filesystem::path(path).parent_path());
}

}  // namespace oodt::cli
