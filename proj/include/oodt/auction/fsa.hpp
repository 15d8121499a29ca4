#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <tuple>
#include <vector>

#include "oodt/auction/bidding.hpp"
#include "oodt/auction/channel.hpp"
#include "oodt/auction/metric.hpp"

namespace oodt::auction {

enum class CfsClass { Primary, Backup };

struct CandidateEntry {
  NodeId node = 0;
  double oodt_value = 0.0;
  double cost_theta = 0.0;
  double cost_v = 0.0;
  double bid = 0.0;
  CfsClass cfs_class = CfsClass::Primary;
  std::size_t priority = 0;
};

struct CandidatePartition {
  std::vector<CandidateEntry> cfs1;
  std::vector<CandidateEntry> cfs2;

  std::size_t size() const { return cfs1.size() + cfs2.size(); }

  // All entries in priority order.
  std::vector<CandidateEntry> ranked() const {
    std::vector<CandidateEntry> all(cfs1);
    all.insert(all.end(), cfs2.begin(), cfs2.end());
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.priority < b.priority; });
    return all;
  }
};

// What the sender knows about one observed neighbor.
struct NeighborInfo {
  NodeId node = 0;
  double etx = 1.0;       // link ETX sender -> node
  double e_ic = 0.0;      // node's energy consumption term
  double st = 0.0;        // social tie sender -> node
  double etx_dest = 1.0;  // node's ETX to the destination
};

struct PricingContext {
  AuctionParams params;
  double etx_s = 1.0;        // source ETX to the destination
  double e_initial = 300.0;
  double energy_scale = 1.0; // multiplies e_ic inside the cost
  std::function<double(NodeId, NodeId)> st;  // pairwise social tie; may be empty
};

// Ascending bid; primary before backup; then metric; then node id.
inline void prioritize(std::vector<CandidateEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const CandidateEntry& a, const CandidateEntry& b) {
    return std::tie(a.bid, a.cfs_class, a.oodt_value, a.node) < std::tie(b.bid, b.cfs_class, b.oodt_value, b.node);
  });
  for (std::size_t k = 0; k < entries.size(); ++k) entries[k].priority = k + 1;
}

// Membership: threshold and channel filters, then the shared-membership split.
inline CandidatePartition fsa_partition(NodeId sender, const std::vector<NeighborInfo>& neighbors,
                                        const RoutingWeights& w, const ChannelView& channels,
                                        const std::map<NodeId, std::size_t>& shared_membership) {
  std::vector<double> metrics;
  for (const auto& n : neighbors) metrics.push_back(oodt_metric(w, n.etx, n.e_ic, n.st));
  double threshold = 0.0;
  try {
    threshold = oodt_threshold(metrics);
  } catch (const AuctionError&) {
    throw AuctionError(AuctionError::Code::EmptyCandidateSet, "every neighbor is excluded");
  }
  CandidatePartition out;
  const auto& own = channels.channels(sender);
  for (std::size_t k = 0; k < neighbors.size(); ++k) {
    const NodeId j = neighbors[k].node;
    if (!(metrics[k] <= threshold)) continue;
    if (common_channels(own, channels.channels(j)).empty()) continue;
    if (common_channels(channels.channels(j), channels.onward_channels(j)).empty()) continue;
    const auto it = shared_membership.find(j);
    const bool shared = it != shared_membership.end() && it->second >= 2;
    CandidateEntry e;
    e.node = j;
    e.oodt_value = metrics[k];
    e.cfs_class = shared ? CfsClass::Backup : CfsClass::Primary;
    (shared ? out.cfs2 : out.cfs1).push_back(e);
  }
  if (out.size() == 0) throw AuctionError(AuctionError::Code::EmptyCandidateSet, "no neighbor qualifies");
  return out;
}

// Fills costs, bids and priorities of an accepted partition.
inline void price_candidates(CandidatePartition& part, NodeId sender, const std::vector<NeighborInfo>& neighbors,
                             const PricingContext& ctx) {
  std::vector<CandidateEntry> all(part.cfs1);
  all.insert(all.end(), part.cfs2.begin(), part.cfs2.end());
  const std::size_t n = all.size();
  for (auto& e : all) {
    const auto info = std::find_if(neighbors.begin(), neighbors.end(), [&](const auto& x) { return x.node == e.node; });
    std::vector<double> st_values;
    if (ctx.st)
      for (const auto& other : all)
        if (other.node != e.node) st_values.push_back(ctx.st(e.node, other.node));
    if (st_values.empty()) st_values.push_back(ctx.st ? ctx.st(sender, e.node) : info->st);
    e.cost_theta = candidate_cost(st_values, info->etx_dest, ctx.energy_scale * info->e_ic, ctx.params);
    e.cost_v = normalized_cost(e.cost_theta, mean_of(st_values), ctx.etx_s, ctx.params, ctx.e_initial);
    e.bid = n == 1 ? 1.0 : equilibrium_bid(e.cost_v, n, ctx.params.bid_strategy);
  }
  prioritize(all);
  part.cfs1.clear();
  part.cfs2.clear();
  for (const auto& e : all) (e.cfs_class == CfsClass::Primary ? part.cfs1 : part.cfs2).push_back(e);
}

inline CandidatePartition fsa_select(NodeId sender, const std::vector<NeighborInfo>& neighbors,
                                     const RoutingWeights& w, const ChannelView& channels,
                                     const std::map<NodeId, std::size_t>& shared_membership,
                                     const PricingContext& ctx) {
  CandidatePartition part = fsa_partition(sender, neighbors, w, channels, shared_membership);
  price_candidates(part, sender, neighbors, ctx);
  return part;
}

inline void write_trace_header(std::ostream& os) { os << "round,sender,candidate,oodt,theta,v,bid,class,priority\n"; }

inline void write_trace_rows(std::ostream& os, std::size_t round, NodeId sender, const CandidatePartition& part) {
  for (const auto& e : part.ranked())
    os << round << ',' << sender << ',' << e.node << ',' << e.oodt_value << ',' << e.cost_theta << ',' << e.cost_v
       << ',' << e.bid << ',' << (e.cfs_class == CfsClass::Primary ? "primary" : "backup") << ',' << e.priority
       << '\n';
}

}  // namespace oodt::auction
