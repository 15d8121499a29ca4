#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "oodt/sim/scenario.hpp"

namespace oodt::sim {

// Assertion counters; every field but the *_checked ones must stay zero.
struct InvariantCounters {
  std::size_t rounds_checked = 0;
  std::size_t transmissions_checked = 0;
  std::size_t conservation = 0;
  std::size_t interweave = 0;
  std::size_t radio_budget = 0;
  std::size_t half_duplex = 0;
  std::size_t suppression = 0;
  std::size_t obstacle = 0;
  std::size_t partition_disjointness = 0;
  std::size_t threshold_filter = 0;
  std::size_t energy_causality = 0;
  std::size_t hop_order = 0;

  std::size_t violations() const {
    return conservation + interweave + radio_budget + half_duplex + suppression + obstacle + partition_disjointness +
           threshold_filter + energy_causality + hop_order;
  }

  InvariantCounters& operator+=(const InvariantCounters& o) {
    rounds_checked += o.rounds_checked;
    transmissions_checked += o.transmissions_checked;
    conservation += o.conservation;
    interweave += o.interweave;
    radio_budget += o.radio_budget;
    half_duplex += o.half_duplex;
    suppression += o.suppression;
    obstacle += o.obstacle;
    partition_disjointness += o.partition_disjointness;
    threshold_filter += o.threshold_filter;
    energy_causality += o.energy_causality;
    hop_order += o.hop_order;
    return *this;
  }
};

// Raw per-run counters collected by the engine.
struct RunLog {
  std::size_t generated = 0;
  std::size_t delivered = 0;
  std::size_t dropped = 0;
  std::size_t in_flight = 0;
  std::size_t data_tx = 0;
  std::size_t ack_tx = 0;
  std::size_t blocked = 0;
  double delay_sum = 0.0;
  double duration = 0.0;
  std::optional<double> first_death;
  std::size_t friend_pairs = 0;
};

struct MetricsReport {
  double pdr = 0.0;
  std::optional<double> avg_delay;  // absent when nothing was delivered
  double expected_routing_cost = 0.0;
  double network_lifetime = 0.0;
  double friend_pairs = 0.0;
  RunLog raw;
};

inline MetricsReport compute_metrics(const RunLog& log) {
  MetricsReport m;
  m.raw = log;
  m.pdr = log.generated ? static_cast<double>(log.delivered) / static_cast<double>(log.generated) : 0.0;
  if (log.delivered) {
    m.avg_delay = log.delay_sum / static_cast<double>(log.delivered);
    m.expected_routing_cost = static_cast<double>(log.data_tx + log.ack_tx) / static_cast<double>(log.delivered);
  }
  m.network_lifetime = log.first_death ? std::min(*log.first_death, log.duration) : log.duration;
  m.friend_pairs = static_cast<double>(log.friend_pairs);
  return m;
}

inline std::string format_number(double v) {
  if (!std::isfinite(v)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline const char* metrics_csv_header() {
  return "protocol,seed,su_count,obstacle_count,generated,delivered,dropped,in_flight,pdr,avg_delay,"
         "routing_cost,lifetime,friend_pairs,data_tx,ack_tx,blocked";
}

inline void write_metrics_row(std::ostream& os, const Scenario& s, const MetricsReport& m) {
  const auto& r = m.raw;
  os << to_string(s.protocol) << ',' << s.seed << ',' << s.su_count << ',' << s.obstacle_count << ',' << r.generated
     << ',' << r.delivered << ',' << r.dropped << ',' << r.in_flight << ',' << format_number(m.pdr) << ','
     << (m.avg_delay ? format_number(*m.avg_delay) : "NA") << ','
     << (r.delivered ? format_number(m.expected_routing_cost) : "NA") << ',' << format_number(m.network_lifetime)
     << ',' << format_number(m.friend_pairs) << ',' << r.data_tx << ',' << r.ack_tx << ',' << r.blocked << '\n';
}

}  // namespace oodt::sim
