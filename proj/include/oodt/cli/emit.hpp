#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oodt/cli/sweep.hpp"

namespace oodt::cli {

enum class Format { Csv, Json };

inline Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw ScenarioInvalid("unknown format '" + s + "' (csv|json)");
}

inline const std::vector<std::string>& aggregate_columns() {
  static const std::vector<std::string> cols{"protocol",  "axis",          "value",       "pdr_mean",   "pdr_ci",
                                             "delay_mean", "delay_ci",     "cost_mean",   "cost_ci",    "lifetime_mean",
                                             "lifetime_ci", "friends_mean", "friends_ci", "runs"};
  return cols;
}

namespace detail {

inline std::string exact(double v) {
  if (!std::isfinite(v)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_exact(const std::string& s) {
  return s == "NA" ? std::numeric_limits<double>::quiet_NaN() : std::stod(s);
}

inline std::vector<Estimate*> estimates(AggregateRow& r) { return {&r.pdr, &r.delay, &r.cost, &r.lifetime, &r.friends}; }

inline std::vector<Estimate> estimates(const AggregateRow& r) { return {r.pdr, r.delay, r.cost, r.lifetime, r.friends}; }

}  // namespace detail

inline void write_csv(std::ostream& os, const std::vector<AggregateRow>& rows) {
  const auto& cols = aggregate_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& r : rows) {
    os << sim::to_string(r.protocol) << ',' << to_string(r.axis) << ',' << r.value;
    for (const Estimate& e : detail::estimates(r)) os << ',' << detail::exact(e.mean) << ',' << detail::exact(e.ci);
    os << ',' << r.runs << '\n';
  }
}

inline std::vector<AggregateRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoFailure("empty aggregate csv");
  std::vector<AggregateRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    if (f.size() != aggregate_columns().size()) throw IoFailure("bad aggregate csv row: " + line);
    AggregateRow r;
    r.protocol = sim::parse_protocol(f[0]);
    r.axis = parse_axis(f[1]);
    r.value = std::stoull(f[2]);
    auto es = detail::estimates(r);
    for (std::size_t k = 0; k < es.size(); ++k) {
      es[k]->mean = detail::parse_exact(f[3 + 2 * k]);
      es[k]->ci = detail::parse_exact(f[4 + 2 * k]);
    }
    r.runs = std::stoull(f[13]);
    rows.push_back(r);
  }
  return rows;
}

inline nlohmann::ordered_json to_json(const std::vector<AggregateRow>& rows) {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr); };
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  const auto& cols = aggregate_columns();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o[cols[0]] = sim::to_string(r.protocol);
    o[cols[1]] = to_string(r.axis);
    o[cols[2]] = r.value;
    const auto es = detail::estimates(r);
    for (std::size_t k = 0; k < es.size(); ++k) {
      o[cols[3 + 2 * k]] = num(es[k].mean);
      o[cols[4 + 2 * k]] = num(es[k].ci);
    }
    o[cols[13]] = r.runs;
    arr.push_back(std::move(o));
  }
  return arr;
}

inline std::vector<AggregateRow> from_json(const nlohmann::ordered_json& arr) {
  auto num = [](const nlohmann::ordered_json& v) {
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
  };
  const auto& cols = aggregate_columns();
  std::vector<AggregateRow> rows;
  try {
    for (const auto& o : arr) {
      AggregateRow r;
      r.protocol = sim::parse_protocol(o.at(cols[0]).get<std::string>());
      r.axis = parse_axis(o.at(cols[1]).get<std::string>());
      r.value = o.at(cols[2]).get<std::size_t>();
      auto es = detail::estimates(r);
      for (std::size_t k = 0; k < es.size(); ++k) {
        es[k]->mean = num(o.at(cols[3 + 2 * k]));
        es[k]->ci = num(o.at(cols[4 + 2 * k]));
      }
      r.runs = o.at(cols[13]).get<std::size_t>();
      rows.push_back(r);
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoFailure(std::string("bad aggregate json: ") + e.what());
  }
  return rows;
}

inline void write_rows(std::ostream& os, const std::vector<AggregateRow>& rows, Format f) {
  if (f == Format::Csv) {
    write_csv(os, rows);
  } else {
    os << to_json(rows).dump(2) << '\n';
  }
}

inline void emit(const std::vector<AggregateRow>& rows, Format f, const std::string& path) {
  if (rows.empty()) throw IoFailure("nothing to emit");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoFailure("cannot open " + path + " for writing");
  write_rows(os, rows, f);
  if (!os) throw IoFailure("write to " + path + " failed");
}

}  // namespace oodt::cli
