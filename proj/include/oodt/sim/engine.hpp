#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "oodt/auction.hpp"
#include "oodt/obstacle.hpp"
#include "oodt/sim/channel_model.hpp"
#include "oodt/sim/metrics.hpp"
#include "oodt/sim/scenario.hpp"
#include "oodt/social.hpp"

namespace oodt::sim {

using NodeId = std::size_t;

struct HopRecord {
  NodeId node = 0;
  double time = 0.0;
  std::size_t channel = 0;
  std::size_t transmissions = 0;
};

struct Packet {
  enum class State { InFlight, Delivered, Dropped };
  std::size_t id = 0;
  NodeId source = 0;
  NodeId destination = 0;
  double created = 0.0;
  NodeId holder = 0;
  State state = State::InFlight;
  std::size_t ready_slot = 0;
  std::size_t wait_window = 0;  // idle until this refresh window
  std::size_t retries = 0;
  std::size_t hop_tx = 0;       // transmissions spent on the current hop
  std::vector<HopRecord> hops;
  std::vector<NodeId> priority_list;  // header attached by the last sender
};

struct RunResult {
  MetricsReport report;
  InvariantCounters invariants;
  std::vector<double> residual_energy;
};

// Fixed layout replacing the random draw of positions and flows.
struct Placement {
  struct Flow {
    NodeId source = 0;
    NodeId destination = 0;
    double start = 0.0;
  };
  std::vector<Point2D> su;
  std::vector<Point2D> pu;
  std::vector<Flow> flows;
};

struct RunOptions {
  std::ostream* event_trace = nullptr;
  std::ostream* auction_trace = nullptr;
  const Placement* placement = nullptr;
};

class Simulator {
 public:
  explicit Simulator(Scenario s, RunOptions opt = {})
      : s_(std::move(s)), opt_(opt), slot_(s_.slot()), link_(s_), map_(s_.area_width, s_.area_height, {}),
        hidden_(s_.area_width, s_.area_height, {}), energy_(s_.su_count, s_.energy.e_initial) {
    validate(s_);
    if (s_.channel_count > 64) throw ConfigInvalid("at most 64 channels are supported");
    std::mt19937_64 master(s_.seed);
    world_rng_.seed(master());
    mob_rng_.seed(master());
    pu_rng_.seed(master());
    link_rng_.seed(master());
    proto_rng_.seed(master());
    traffic_rng_.seed(master());
    setup();
  }

  RunResult run() {
    std::size_t k = 0;
    for (;; ++k) {
      const double t = static_cast<double>(k) * slot_;
      if (t >= s_.duration) break;
      step(k, t);
    }
    return finish();
  }

  const obstacle::ObstacleMap& obstacles() const { return map_; }
  const std::vector<Packet>& packets() const { return packets_; }

 private:
  // Setup.

  void setup() {
    if (!s_.obstacle_file.empty()) {
      std::ifstream in(s_.obstacle_file);
      if (!in) throw ConfigInvalid("cannot open obstacle file " + s_.obstacle_file);
      map_ = obstacle::read_obstacle_map(in);
      s_.obstacle_count = map_.obstacles().size();
    } else {
      if (s_.obstacle_kind == ObstacleKind::Wall)
        map_ = obstacle::random_wall_obstacles(world_rng_, s_.obstacle_count, s_.area_width, s_.area_height,
                                               s_.obstacle_min_side, s_.obstacle_max_side, s_.obstacle_thickness,
                                               s_.su_range / 4);
      else
        map_ = obstacle::random_rect_obstacles(world_rng_, s_.obstacle_count, s_.area_width, s_.area_height,
                                               s_.obstacle_min_side, s_.obstacle_max_side, s_.su_range / 4);
    }
    if (!s_.contact_trace.empty()) {
      std::ifstream in(s_.contact_trace);
      if (!in) throw ConfigInvalid("cannot open contact trace " + s_.contact_trace);
      contacts_ = social::read_contacts_csv(in);
      trace_contacts_ = true;
    }
    const Placement* fixed = opt_.placement;
    if (fixed && (fixed->su.size() != s_.su_count || fixed->pu.size() != s_.pu_count))
      throw ConfigInvalid("placement does not match su_count/pu_count");
    std::uniform_real_distribution<double> xs(0.0, s_.area_width), ys(0.0, s_.area_height);
    nodes_.resize(s_.su_count);
    for (NodeId v = 0; v < s_.su_count; ++v) {
      auto& n = nodes_[v];
      if (fixed) {
        n.pos = fixed->su[v];
      } else {
        do {
          n.pos = {xs(world_rng_), ys(world_rng_)};
        } while (inside_obstacle(n.pos));
      }
      draw_waypoint(n, s_, mob_rng_, clear_path());
    }
    const double on_fraction = 1.0 - auction::channel_availability(s_.lambda_busy, s_.lambda_idle);
    for (std::size_t i = 0; i < s_.pu_count; ++i) {
      PrimaryUser pu;
      pu.pos = fixed ? fixed->pu[i] : Point2D{xs(world_rng_), ys(world_rng_)};
      pu.channel = i % s_.channel_count;
      pu.initially_on = std::bernoulli_distribution(on_fraction)(pu_rng_);
      pu.state.on = pu.initially_on;
      pu.state.next_transition = std::exponential_distribution<double>(pu.state.on ? s_.lambda_busy : s_.lambda_idle)(pu_rng_);
      pus_.push_back(pu);
    }
    std::uniform_int_distribution<NodeId> pick(0, s_.su_count - 1);
    std::uniform_real_distribution<double> phase(0.0, 1.0);
    if (fixed) {
      for (const auto& f : fixed->flows) {
        if (f.source >= s_.su_count || f.destination >= s_.su_count || f.source == f.destination)
          throw ConfigInvalid("placement flow endpoints are invalid");
        flows_.push_back({f.source, f.destination, f.start});
      }
    }
    for (std::size_t f = 0; !fixed && f < s_.flows; ++f) {
      const NodeId src = pick(traffic_rng_);
      NodeId dst = pick(traffic_rng_);
      while (dst == src) dst = pick(traffic_rng_);
      flows_.push_back({src, dst, s_.packet_rate > 0 ? phase(traffic_rng_) / s_.packet_rate : s_.duration});
    }
    idle_.assign(s_.su_count, 0);
    engaged_.assign(s_.su_count, 0);
    tx_mask_.assign(s_.su_count, 0);
    rx_mask_.assign(s_.su_count, 0);
  }

  bool inside_obstacle(Point2D p) const {
    for (const auto& o : map_.obstacles())
      if (geometry::contains(o, p)) return true;
    return false;
  }

  std::function<bool(Point2D, Point2D)> clear_path() const {
    return [this](Point2D a, Point2D b) { return !inside_obstacle(b) && obstacle::los_clear(map_, a, b); };
  }

  // Main loop.

  void step(std::size_t k, double t) {
    if (t >= next_refresh_) {
      refresh(t);
      next_refresh_ += s_.refresh_window;
    }
    if (!trace_contacts_ && t >= next_contact_) {
      sample_contacts(t);
      next_contact_ += s_.contact_sample;
    }
    generate(t);
    for (auto& pu : pus_) pu.advance(t, s_.lambda_busy, s_.lambda_idle, pu_rng_);
    sense();
    for (auto& pu : pus_) pu.advance(t + s_.sensing_time, s_.lambda_busy, s_.lambda_idle, pu_rng_);
    std::fill(engaged_.begin(), engaged_.end(), 0);
    std::fill(tx_mask_.begin(), tx_mask_.end(), 0);
    std::fill(rx_mask_.begin(), rx_mask_.end(), 0);
    engagements_.clear();

    std::vector<std::size_t> ready;
    for (std::size_t id : active_)
      if (is_ready(packets_[id], k)) ready.push_back(id);
    shared_.assign(s_.su_count, 0);
    std::set<NodeId> senders;
    for (std::size_t id : ready) senders.insert(packets_[id].holder);
    for (NodeId h : senders)
      for (NodeId j : observed_[h]) ++shared_[j];
    for (std::size_t id : ready) forward_round(packets_[id], k, t);
    active_.erase(std::remove_if(active_.begin(), active_.end(),
                                 [&](std::size_t id) { return packets_[id].state != Packet::State::InFlight; }),
                  active_.end());
    audit_slot();
    for (auto& n : nodes_) mobility_step(n, slot_, s_, mob_rng_, clear_path());
  }

  bool is_ready(const Packet& p, std::size_t k) const {
    return p.state == Packet::State::InFlight && p.ready_slot <= k && p.wait_window <= window_ &&
           energy_.alive(p.holder);
  }

  void generate(double t) {
    for (auto& f : flows_) {
      while (f.next <= t && f.next < s_.duration) {
        if (energy_.alive(f.source)) {
          Packet p;
          p.id = packets_.size();
          p.source = p.holder = f.source;
          p.destination = f.destination;
          p.created = f.next;
          packets_.push_back(p);
          active_.push_back(p.id);
          ++log_.generated;
          event("gen", f.next, p.id, f.source, f.destination);
        }
        f.next += 1.0 / s_.packet_rate;
      }
    }
  }

  // Channel occupancy sensed at the start of the slot.
  void sense() {
    for (NodeId v = 0; v < s_.su_count; ++v) {
      std::uint64_t mask = s_.channel_count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << s_.channel_count) - 1;
      for (const auto& pu : pus_)
        if (pu.state.on && geometry::distance(pu.pos, nodes_[v].pos) <= s_.pu_range)
          mask &= ~(std::uint64_t{1} << pu.channel);
      idle_[v] = mask;
    }
  }

  // Neighborhood state refresh.

  void refresh(double t) {
    ++window_;
    now_ = t;
    if (!trace_contacts_) {
      for (auto& [pair, start] : open_contacts_) {
        if (t > start) contacts_.add(pair.first, pair.second, start, t);
        start = t;
      }
    }
    neighbors_.assign(s_.su_count, {});
    for (NodeId a = 0; a < s_.su_count; ++a) {
      if (!energy_.alive(a)) continue;
      for (NodeId b = a + 1; b < s_.su_count; ++b)
        if (energy_.alive(b) && geometry::distance(nodes_[a].pos, nodes_[b].pos) <= s_.su_range) {
          neighbors_[a].push_back(b);
          neighbors_[b].push_back(a);
        }
    }
    observed_.assign(s_.su_count, {});
    for (NodeId v = 0; v < s_.su_count; ++v) {
      const std::uint64_t prune_seed = proto_rng_();
      if (neighbors_[v].empty()) continue;
      if (s_.protocol == Protocol::ShortestEtx) {
        for (NodeId u : neighbors_[v])
          if (obstacle::los_clear(map_, nodes_[v].pos, nodes_[u].pos)) observed_[v].insert(u);
        continue;
      }
      std::vector<obstacle::NodePosition> nb;
      for (NodeId u : neighbors_[v]) nb.push_back({u, nodes_[u].pos});
      const auto& view = s_.protocol == Protocol::Oodt ? map_ : hidden_;
      observed_[v] = obstacle::observed_neighbors({v, nodes_[v].pos}, nb, view, prune_seed);
    }
    // Link ETX as each protocol perceives it.
    etx_graph_ = social::EtxGraph(s_.su_count);
    link_etx_.clear();
    for (NodeId a = 0; a < s_.su_count; ++a)
      for (NodeId b : observed_[a]) {
        if (b < a && observed_[b].count(a)) continue;
        double p = link_.delivery_prob(geometry::distance(nodes_[a].pos, nodes_[b].pos));
        if (s_.protocol != Protocol::OodtNoObstacle && !obstacle::los_clear(map_, nodes_[a].pos, nodes_[b].pos))
          p = 0.0;
        const double etx = social::etx_link(p, p);
        link_etx_[{std::min(a, b), std::max(a, b)}] = etx;
        etx_graph_.add_link(a, b, etx);
      }
    etx_to_.clear();
    st_cache_.clear();
  }

  void sample_contacts(double t) {
    std::map<std::pair<NodeId, NodeId>, double> next;
    for (NodeId a = 0; a < s_.su_count; ++a)
      for (NodeId b = a + 1; b < s_.su_count; ++b) {
        if (geometry::distance(nodes_[a].pos, nodes_[b].pos) > s_.su_range) continue;
        if (!obstacle::los_clear(map_, nodes_[a].pos, nodes_[b].pos)) continue;
        const auto it = open_contacts_.find({a, b});
        next[{a, b}] = it == open_contacts_.end() ? t : it->second;
      }
    for (const auto& [pair, start] : open_contacts_)
      if (!next.count(pair) && t > start) contacts_.add(pair.first, pair.second, start, t);
    open_contacts_ = std::move(next);
  }

  const std::vector<double>& etx_to(NodeId dst) {
    auto it = etx_to_.find(dst);
    if (it == etx_to_.end()) it = etx_to_.emplace(dst, etx_graph_.distances_from(dst)).first;
    return it->second;
  }

  double social_tie(NodeId i, NodeId j) {
    const auto key = std::make_pair(std::min(i, j), std::max(i, j));
    const auto it = st_cache_.find(key);
    if (it != st_cache_.end()) return it->second;
    const double end = std::max(now_, s_.refresh_window);
    const double T = std::min(s_.social.window, end);
    const double spm = social::spm(contacts_, i, j, T, end, s_.social.spm_unit * T / s_.social.window);
    const double sim = social::socsim(observed_[i], observed_[j]);
    const double st = social::social_tie(s_.social, spm, sim);
    st_cache_[key] = st;
    return st;
  }

  double energy_term(NodeId j) const { return social::energy_tx_cost(s_.energy, observed_[j].size()); }

  double link_etx(NodeId a, NodeId b) const {
    const auto it = link_etx_.find({std::min(a, b), std::max(a, b)});
    return it == link_etx_.end() ? social::kNoLink : it->second;
  }

  // Forwarding.

  // Ranked candidate list; empty when the holder has to carry the packet.
  std::vector<NodeId> candidates(const Packet& p) {
    const NodeId h = p.holder, d = p.destination;
    std::vector<NodeId> nbrs;
    for (NodeId j : observed_[h])
      if (energy_.alive(j)) nbrs.push_back(j);
    if (nbrs.empty()) return {};
    if (std::find(nbrs.begin(), nbrs.end(), d) != nbrs.end()) return {d};
    const auto& to_d = etx_to(d);
    auto progress_of = [&](NodeId v) {
      return std::isfinite(to_d[h]) ? to_d[v] : 1.0 + geometry::distance(nodes_[v].pos, nodes_[d].pos) / s_.su_range;
    };
    const double mine = progress_of(h);
    std::vector<NodeId> ahead;
    for (NodeId j : nbrs)
      if (progress_of(j) < mine - 1e-12) ahead.push_back(j);
    if (ahead.empty()) return {};

    if (s_.protocol == Protocol::ShortestEtx) {
      NodeId best = ahead.front();
      double best_cost = social::kNoLink;
      for (NodeId j : ahead) {
        const double c = std::isfinite(to_d[h]) ? link_etx(h, j) + to_d[j] : progress_of(j);
        if (c < best_cost) {
          best_cost = c;
          best = j;
        }
      }
      return {best};
    }

    std::vector<auction::NeighborInfo> info;
    auction::ChannelView view;
    view.availability.assign(s_.channel_count, auction::channel_availability(s_.lambda_busy, s_.lambda_idle));
    view.available[h] = channels_of(idle_[h]);
    std::map<NodeId, std::size_t> shared;
    for (NodeId j : ahead) {
      auction::NeighborInfo n;
      n.node = j;
      n.etx = std::min(link_etx(h, j), 1e6);
      n.e_ic = energy_term(j);
      n.st = social_tie(h, j);
      n.etx_dest = progress_of(j);
      info.push_back(n);
      view.available[j] = channels_of(idle_[j]);
      std::uint64_t onward = 0;
      for (NodeId k : observed_[j]) onward |= idle_[k];
      view.onward[j] = channels_of(onward);
      shared[j] = shared_[j];
    }
    auction::PricingContext ctx;
    ctx.params = s_.auction;
    ctx.e_initial = s_.energy.e_initial;
    ctx.etx_s = std::isfinite(to_d[p.source]) ? to_d[p.source] : mine;
    ctx.st = [this](NodeId a, NodeId b) { return social_tie(a, b); };
    auction::CandidatePartition part;
    try {
      part = auction::fsa_select(h, info, s_.routing, view, shared, ctx);
    } catch (const auction::AuctionError&) {
      return {};
    }
    check_partition(part, info, shared);
    if (opt_.auction_trace) auction::write_trace_rows(*opt_.auction_trace, ++auction_round_, h, part);
    std::vector<NodeId> out;
    for (const auto& e : part.ranked()) out.push_back(e.node);
    backup_.clear();
    for (const auto& e : part.cfs2) backup_.insert(e.node);
    return out;
  }

  static std::set<std::size_t> channels_of(std::uint64_t mask) {
    std::set<std::size_t> out;
    for (std::size_t c = 0; c < 64; ++c)
      if (mask >> c & 1u) out.insert(c);
    return out;
  }

  void check_partition(const auction::CandidatePartition& part, const std::vector<auction::NeighborInfo>& info,
                       const std::map<NodeId, std::size_t>& shared) {
    ++inv_.rounds_checked;
    std::vector<double> metrics;
    for (const auto& n : info) metrics.push_back(auction::oodt_metric(s_.routing, n.etx, n.e_ic, n.st));
    const double threshold = auction::oodt_threshold(metrics);
    std::set<NodeId> primary;
    for (const auto& e : part.cfs1) primary.insert(e.node);
    for (const auto& e : part.cfs2) {
      if (primary.count(e.node)) ++inv_.partition_disjointness;
      if (shared.at(e.node) < 2) ++inv_.partition_disjointness;
    }
    for (const auto& e : part.ranked())
      if (!(e.oodt_value <= threshold)) ++inv_.threshold_filter;
  }

  bool radio_free(NodeId v, std::size_t ch) const {
    const std::uint64_t bit = std::uint64_t{1} << ch;
    return engaged_[v] < s_.radios && !(tx_mask_[v] & bit) && !(rx_mask_[v] & bit);
  }

  void engage(NodeId v, std::size_t ch, bool tx) {
    ++engaged_[v];
    (tx ? tx_mask_ : rx_mask_)[v] |= std::uint64_t{1} << ch;
    engagements_.push_back({v, ch, tx});
  }

  void fail_attempt(Packet& p, std::size_t k, double t) {
    ++p.retries;
    p.ready_slot = k + 1;
    if (p.retries > s_.retry_limit) {
      p.state = Packet::State::Dropped;
      ++log_.dropped;
      event("drop", t, p.id, p.holder, p.destination);
    }
  }

  void forward_round(Packet& p, std::size_t k, double t) {
    const NodeId h = p.holder;
    backup_.clear();
    std::vector<NodeId> cands = candidates(p);
    if (cands.empty()) {
      p.wait_window = window_ + 1;
      return;
    }
    // Channel: idle at the sender and, preferably, at the first-ranked candidate.
    std::uint64_t usable = idle_[h] & idle_[cands.front()];
    if (!usable) {
      std::uint64_t any = 0;
      for (NodeId c : cands) any |= idle_[c];
      usable = idle_[h] & any;
    }
    for (std::size_t c = 0; c < s_.channel_count; ++c)
      if ((usable >> c & 1u) && !radio_free(h, c)) usable &= ~(std::uint64_t{1} << c);
    if (!usable) {
      if (engaged_[h] >= s_.radios) {
        p.ready_slot = k + 1;
        return;
      }
      fail_attempt(p, k, t);
      return;
    }
    auction::ChannelView view;
    view.availability.assign(s_.channel_count, auction::channel_availability(s_.lambda_busy, s_.lambda_idle));
    const std::size_t ch = auction::channel_select(view, channels_of(usable), proto_rng_);
    std::vector<NodeId> intended;
    for (NodeId c : cands)
      if ((idle_[c] >> ch & 1u) && radio_free(c, ch)) intended.push_back(c);
    // Interweave: an ON primary user covering the sender or a receiver blocks the slot.
    const double tx_time = t + s_.sensing_time;
    for (const auto& pu : pus_) {
      if (!pu.state.on || pu.channel != ch) continue;
      bool covered = geometry::distance(pu.pos, nodes_[h].pos) <= s_.pu_range;
      for (NodeId c : intended) covered = covered || geometry::distance(pu.pos, nodes_[c].pos) <= s_.pu_range;
      if (covered) {
        ++log_.blocked;
        fail_attempt(p, k, t);
        return;
      }
    }
    p.priority_list = cands;
    engage(h, ch, true);
    ++log_.data_tx;
    ++p.hop_tx;
    energy_.consume(h, s_.energy.e_forward, t);
    debits_ += s_.energy.e_forward;
    TxRecord rec{tx_time, ch, {nodes_[h].pos}};
    for (NodeId c : intended) rec.positions.push_back(nodes_[c].pos);
    std::vector<NodeId> got;
    for (NodeId c : intended) {
      engage(c, ch, false);
      const double d = geometry::distance(nodes_[h].pos, nodes_[c].pos);
      const bool clear = obstacle::los_clear(map_, nodes_[h].pos, nodes_[c].pos);
      const double prob = clear ? link_.delivery_prob(d) : 0.0;
      if (std::bernoulli_distribution(prob)(link_rng_)) {
        got.push_back(c);
        event("rx", t, p.id, c, ch);
        energy_.consume(c, s_.energy.e_receive, t);
        debits_ += s_.energy.e_receive;
      }
    }
    tx_log_.push_back(std::move(rec));
    event("tx", t, p.id, h, ch);
    // Highest-ranked primary receiver forwards; backups only after a silent slot.
    std::optional<NodeId> winner;
    bool via_backup = false;
    for (NodeId c : cands)
      if (!backup_.count(c) && std::find(got.begin(), got.end(), c) != got.end()) {
        winner = c;
        break;
      }
    if (!winner)
      for (NodeId c : cands)
        if (backup_.count(c) && std::find(got.begin(), got.end(), c) != got.end()) {
          winner = c;
          via_backup = true;
          break;
        }
    if (!winner) {
      fail_attempt(p, k, t);
      return;
    }
    const NodeId w = *winner;
    std::size_t forwarders = 0;
    for (NodeId c : got) forwarders += c == w;
    if (forwarders != 1) ++inv_.suppression;
    ++log_.ack_tx;
    energy_.consume(w, s_.energy.e_ack, t);
    debits_ += s_.energy.e_ack;
    const double arrive = t + slot_ * (via_backup ? 2.0 : 1.0);
    if (!p.hops.empty() && !(p.hops.back().time < arrive)) ++inv_.hop_order;
    p.hops.push_back({w, arrive, ch, p.hop_tx});
    hop_edges_.push_back({nodes_[h].pos, nodes_[w].pos});
    p.hop_tx = 0;
    p.retries = 0;
    p.holder = w;
    p.ready_slot = k + (via_backup ? 2 : 1);
    event("hop", t, p.id, h, w);
    if (w == p.destination) {
      p.state = Packet::State::Delivered;
      ++log_.delivered;
      log_.delay_sum += arrive - p.created;
      event("deliver", arrive, p.id, w, p.destination);
    } else if (p.hops.size() >= s_.ttl) {
      p.state = Packet::State::Dropped;
      ++log_.dropped;
      event("drop", arrive, p.id, w, p.destination);
    }
  }

  // Audits.

  struct Engagement {
    NodeId node;
    std::size_t channel;
    bool tx;
  };

  // Sender position first, then the intended receivers.
  struct TxRecord {
    double time;
    std::size_t channel;
    std::vector<Point2D> positions;
  };

  struct HopEdge {
    Point2D from, to;
  };

  void audit_slot() {
    std::map<NodeId, std::set<std::size_t>> used;
    std::map<std::pair<NodeId, std::size_t>, int> roles;
    for (const auto& e : engagements_) {
      used[e.node].insert(e.channel);
      roles[{e.node, e.channel}] |= e.tx ? 1 : 2;
    }
    for (const auto& [v, chs] : used)
      if (chs.size() > s_.radios) ++inv_.radio_budget;
    for (const auto& [key, r] : roles)
      if (r == 3) ++inv_.half_duplex;
  }

  RunResult finish() {
    if (!trace_contacts_)
      for (const auto& [pair, start] : open_contacts_)
        if (s_.duration > start) contacts_.add(pair.first, pair.second, start, s_.duration);
    for (const auto& p : packets_) log_.in_flight += p.state == Packet::State::InFlight;
    log_.duration = s_.duration;
    log_.first_death = energy_.first_death();
    if (log_.generated != log_.delivered + log_.dropped + log_.in_flight) ++inv_.conservation;
    std::size_t delivered = 0, dropped = 0;
    for (const auto& p : packets_) {
      delivered += p.state == Packet::State::Delivered;
      dropped += p.state == Packet::State::Dropped;
    }
    if (packets_.size() != log_.generated || delivered != log_.delivered || dropped != log_.dropped)
      ++inv_.conservation;
    for (const auto& e : hop_edges_)
      if (!obstacle::los_clear(map_, e.from, e.to)) ++inv_.obstacle;
    // Interweave audit against the recorded primary-user history.
    for (const auto& rec : tx_log_) {
      ++inv_.transmissions_checked;
      for (const auto& pu : pus_) {
        if (pu.channel != rec.channel || !pu.on_at(rec.time)) continue;
        for (const auto& pos : rec.positions)
          if (geometry::distance(pu.pos, pos) <= s_.pu_range) {
            ++inv_.interweave;
            break;
          }
      }
    }
    double consumed = 0.0;
    for (NodeId v = 0; v < s_.su_count; ++v) consumed += s_.energy.e_initial - energy_.residual(v);
    if (std::abs(consumed - debits_) > 1e-9 * std::max(1.0, debits_)) ++inv_.energy_causality;
    // Friend pairs from the final window.
    now_ = s_.duration;
    st_cache_.clear();
    std::vector<double> ties;
    for (NodeId a = 0; a < s_.su_count; ++a)
      for (NodeId b = a + 1; b < s_.su_count; ++b) ties.push_back(social_tie(a, b));
    double sum = 0.0;
    std::size_t positive = 0;
    for (double x : ties)
      if (x > 0.0) {
        sum += x;
        ++positive;
      }
    if (positive) {
      const double threshold = sum / static_cast<double>(positive);
      for (double x : ties) log_.friend_pairs += x > 0.0 && x >= threshold;
    }
    std::vector<double> residual(s_.su_count);
    for (NodeId v = 0; v < s_.su_count; ++v) residual[v] = energy_.residual(v);
    return {compute_metrics(log_), inv_, std::move(residual)};
  }

  // Event trace line: time, kind, packet, then two kind-specific fields.
  void event(const char* what, double t, std::size_t id, std::size_t a, std::size_t b) {
    if (!opt_.event_trace) return;
    *opt_.event_trace << format_number(t) << ' ' << what << " pkt=" << id << ' ' << a << ' ' << b << '\n';
  }

  struct Flow {
    NodeId source, destination;
    double next;
  };

  Scenario s_;
  RunOptions opt_;
  double slot_;
  LinkModel link_;
  obstacle::ObstacleMap map_;
  obstacle::ObstacleMap hidden_;
  social::EnergyBook energy_;
  std::mt19937_64 world_rng_, mob_rng_, pu_rng_, link_rng_, proto_rng_, traffic_rng_;

  std::vector<Mobile> nodes_;
  std::vector<PrimaryUser> pus_;
  std::vector<Flow> flows_;
  std::vector<Packet> packets_;
  std::vector<std::size_t> active_;

  std::size_t window_ = 0;
  double now_ = 0.0;
  double next_refresh_ = 0.0;
  double next_contact_ = 0.0;
  std::vector<std::vector<NodeId>> neighbors_;
  std::vector<std::set<NodeId>> observed_;
  social::EtxGraph etx_graph_{0};
  std::map<std::pair<NodeId, NodeId>, double> link_etx_;
  std::map<NodeId, std::vector<double>> etx_to_;
  std::map<std::pair<NodeId, NodeId>, double> st_cache_;
  social::ContactHistory contacts_;
  bool trace_contacts_ = false;
  std::map<std::pair<NodeId, NodeId>, double> open_contacts_;

  std::vector<std::uint64_t> idle_;
  std::vector<std::size_t> engaged_;
  std::vector<std::uint64_t> tx_mask_, rx_mask_;
  std::vector<std::size_t> shared_;
  std::set<NodeId> backup_;
  std::vector<Engagement> engagements_;
  std::vector<TxRecord> tx_log_;
  std::vector<HopEdge> hop_edges_;

  RunLog log_;
  InvariantCounters inv_;
  double debits_ = 0.0;
  std::size_t auction_round_ = 0;
};

inline RunResult run_scenario(const Scenario& s, RunOptions opt = {}) { return Simulator(s, opt).run(); }

inline MetricsReport run(const Scenario& s) { return run_scenario(s).report; }

}  // namespace oodt::sim
