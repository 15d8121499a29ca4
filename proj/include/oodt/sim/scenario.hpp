#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "oodt/auction.hpp"
#include "oodt/social.hpp"

namespace oodt::sim {

class ConfigInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Protocol { Oodt, OodtNoObstacle, ShortestEtx };

enum class ObstacleKind { Wall, Building };

inline std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::Oodt: return "OODT";
    case Protocol::OodtNoObstacle: return "OODT-NoObstacle";
    case Protocol::ShortestEtx: return "ShortestETX";
  }
  return "?";
}

inline Protocol parse_protocol(const std::string& s) {
  if (s == "OODT" || s == "oodt") return Protocol::Oodt;
  if (s == "OODT-NoObstacle" || s == "oodt-noobstacle") return Protocol::OodtNoObstacle;
  if (s == "ShortestETX" || s == "shortest-etx") return Protocol::ShortestEtx;
  throw ConfigInvalid("unknown protocol '" + s + "'");
}

struct Scenario {
  double area_width = 1000.0;
  double area_height = 1000.0;
  std::size_t su_count = 50;
  std::size_t pu_count = 10;
  std::size_t channel_count = 10;
  double su_range = 120.0;
  double pu_range = 300.0;
  double sensing_time = 0.005;
  double transmit_time = 0.0;  // 0 derives airtime of data and ACK plus one channel switch
  std::size_t radios = 2;
  double lambda_busy = 10.0;
  double lambda_idle = 10.0;
  double pathloss_exponent = 4.0;
  double shadowing_sigma_db = 6.0;
  double fading_m = 1.0;
  double delivery_at_half_range = 0.9;
  double speed_min = 0.1;
  double speed_max = 2.0;
  double packet_size = 512.0;
  double ack_size = 14.0;
  double bandwidth = 2e6;
  double channel_switch_time = 70e-6;
  social::SocialParams social;
  social::EnergyParams energy;
  auction::RoutingWeights routing;
  auction::AuctionParams auction;
  std::string obstacle_file;
  std::size_t obstacle_count = 6;
  ObstacleKind obstacle_kind = ObstacleKind::Wall;
  double obstacle_min_side = 150.0;  // wall length or building side
  double obstacle_max_side = 300.0;
  double obstacle_thickness = 5.0;   // walls only
  std::string contact_trace;
  double duration = 100.0;
  std::uint64_t seed = 1;
  std::size_t flows = 10;
  double packet_rate = 1.0;  // packets per second per flow
  double refresh_window = 10.0;
  double contact_sample = 1.0;
  std::size_t retry_limit = 8;
  std::size_t ttl = 20;
  Protocol protocol = Protocol::Oodt;

  double transmit() const {
    if (transmit_time > 0.0) return transmit_time;
    return (packet_size + ack_size) * 8.0 / bandwidth + channel_switch_time;
  }
  double slot() const { return sensing_time + transmit(); }
};

inline void validate(const Scenario& s) {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw ConfigInvalid(what);
  };
  need(s.area_width > 0 && s.area_height > 0, "area must be positive");
  need(s.su_count >= 2, "su_count must be at least 2");
  need(s.pu_count >= 1 && s.channel_count >= 1 && s.radios >= 1, "counts must be at least 1");
  need(s.su_range > 0 && s.pu_range > 0, "ranges must be positive");
  need(s.sensing_time > 0 && s.transmit_time >= 0, "slot times must be positive");
  need(s.lambda_busy > 0 && s.lambda_idle > 0, "ON/OFF rates must be positive");
  need(s.pathloss_exponent > 0 && s.shadowing_sigma_db >= 0 && s.fading_m > 0, "bad propagation parameters");
  need(s.delivery_at_half_range > 0 && s.delivery_at_half_range < 1, "delivery_at_half_range must lie in (0, 1)");
  need(s.speed_min > 0 && s.speed_max >= s.speed_min, "bad speed range");
  need(s.packet_size > 0 && s.ack_size >= 0 && s.bandwidth > 0 && s.channel_switch_time >= 0, "bad radio parameters");
  need(s.obstacle_min_side > 0 && s.obstacle_max_side >= s.obstacle_min_side && s.obstacle_thickness > 0,
       "bad obstacle dimensions");
  need(s.duration > 0, "duration must be positive");
  need(s.packet_rate >= 0, "packet_rate must be non-negative");
  need(s.refresh_window > 0 && s.contact_sample > 0, "windows must be positive");
  need(s.retry_limit >= 1 && s.ttl >= 1, "retry_limit and ttl must be at least 1");
  try {
    social::validate(s.social);
    social::validate(s.energy);
    auction::validate(s.routing);
    auction::validate(s.auction);
  } catch (const std::exception& e) {
    throw ConfigInvalid(e.what());
  }
}

namespace detail {

template <class T>
T parse_value(const std::string& key, const std::string& text) {
  std::istringstream is(text);
  T v{};
  is >> v;
  if (!is || !(is >> std::ws).eof()) throw ConfigInvalid("bad value for '" + key + "': " + text);
  return v;
}

inline std::map<std::string, std::function<void(Scenario&, const std::string&)>> setters() {
  std::map<std::string, std::function<void(Scenario&, const std::string&)>> m;
#define OODT_KEY(name, field, type) \
  m[name] = [](Scenario& s, const std::string& v) { s.field = parse_value<type>(name, v); }
  OODT_KEY("area_width", area_width, double);
  OODT_KEY("area_height", area_height, double);
  OODT_KEY("su_count", su_count, std::size_t);
  OODT_KEY("pu_count", pu_count, std::size_t);
  OODT_KEY("channel_count", channel_count, std::size_t);
  OODT_KEY("su_range", su_range, double);
  OODT_KEY("pu_range", pu_range, double);
  OODT_KEY("sensing_time", sensing_time, double);
  OODT_KEY("transmit_time", transmit_time, double);
  OODT_KEY("radios", radios, std::size_t);
  OODT_KEY("lambda_busy", lambda_busy, double);
  OODT_KEY("lambda_idle", lambda_idle, double);
  OODT_KEY("pathloss_exponent", pathloss_exponent, double);
  OODT_KEY("shadowing_sigma_db", shadowing_sigma_db, double);
  OODT_KEY("fading_m", fading_m, double);
  OODT_KEY("delivery_at_half_range", delivery_at_half_range, double);
  OODT_KEY("speed_min", speed_min, double);
  OODT_KEY("speed_max", speed_max, double);
  OODT_KEY("packet_size", packet_size, double);
  OODT_KEY("ack_size", ack_size, double);
  OODT_KEY("bandwidth", bandwidth, double);
  OODT_KEY("channel_switch_time", channel_switch_time, double);
  OODT_KEY("chi", social.chi, double);
  OODT_KEY("social_window", social.window, double);
  OODT_KEY("spm_unit", social.spm_unit, double);
  OODT_KEY("e_forward", energy.e_forward, double);
  OODT_KEY("e_receive", energy.e_receive, double);
  OODT_KEY("e_ack", energy.e_ack, double);
  OODT_KEY("e_initial", energy.e_initial, double);
  OODT_KEY("phi1", routing.phi1, double);
  OODT_KEY("phi2", routing.phi2, double);
  OODT_KEY("phi3", routing.phi3, double);
  OODT_KEY("alpha", auction.alpha, double);
  OODT_KEY("epsilon_clamp", auction.epsilon_clamp, double);
  OODT_KEY("obstacle_count", obstacle_count, std::size_t);
  OODT_KEY("obstacle_min_side", obstacle_min_side, double);
  OODT_KEY("obstacle_max_side", obstacle_max_side, double);
  OODT_KEY("obstacle_thickness", obstacle_thickness, double);
  OODT_KEY("duration", duration, double);
  OODT_KEY("seed", seed, std::uint64_t);
  OODT_KEY("flows", flows, std::size_t);
  OODT_KEY("packet_rate", packet_rate, double);
  OODT_KEY("refresh_window", refresh_window, double);
  OODT_KEY("contact_sample", contact_sample, double);
  OODT_KEY("retry_limit", retry_limit, std::size_t);
  OODT_KEY("ttl", ttl, std::size_t);
#undef OODT_KEY
  m["obstacle_file"] = [](Scenario& s, const std::string& v) { s.obstacle_file = v; };
  m["contact_trace"] = [](Scenario& s, const std::string& v) { s.contact_trace = v; };
  m["obstacle_kind"] = [](Scenario& s, const std::string& v) {
    if (v == "wall") s.obstacle_kind = ObstacleKind::Wall;
    else if (v == "building") s.obstacle_kind = ObstacleKind::Building;
    else throw ConfigInvalid("unknown obstacle_kind '" + v + "'");
  };
  m["protocol"] = [](Scenario& s, const std::string& v) { s.protocol = parse_protocol(v); };
  m["bid_strategy"] = [](Scenario& s, const std::string& v) {
    if (v == "literal" || v == "Literal") s.auction.bid_strategy = auction::BidStrategy::Literal;
    else if (v == "derived" || v == "Derived") s.auction.bid_strategy = auction::BidStrategy::Derived;
    else throw ConfigInvalid("unknown bid_strategy '" + v + "'");
  };
  return m;
}

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

}  // namespace detail

// Applies one key = value assignment.
inline void set_key(Scenario& s, const std::string& key, const std::string& value) {
  static const auto table = detail::setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigInvalid("unknown scenario key '" + key + "'");
  it->second(s, value);
}

// Flat key = value text; '#' starts a comment. Unset keys keep their defaults.
inline Scenario parse_scenario(std::istream& in, Scenario base = {}) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigInvalid("line " + std::to_string(lineno) + ": expected key = value");
    try {
      set_key(base, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    } catch (const ConfigInvalid& e) {
      throw ConfigInvalid("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  validate(base);
  return base;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open scenario file " + path);
  Scenario s = parse_scenario(in);
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();
  for (std::string* f : {&s.obstacle_file, &s.contact_trace})
    if (!f->empty() && std::filesystem::path(*f).is_relative()) *f = (dir / *f).string();
  return s;
}

}  // namespace oodt::sim
