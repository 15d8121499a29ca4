#pragma once

#include <map>
#include <random>
#include <set>
#include <vector>

#include "oodt/auction/metric.hpp"

namespace oodt::auction {

struct ChannelView {
  std::map<NodeId, std::set<ChannelId>> available;  // Ch(v)
  std::map<NodeId, std::set<ChannelId>> onward;     // Ch(N(v)): union over v's own neighbors
  std::vector<double> availability;                 // per channel, in [0, 1]

  const std::set<ChannelId>& channels(NodeId v) const { return lookup(available, v); }
  const std::set<ChannelId>& onward_channels(NodeId v) const { return lookup(onward, v); }

 private:
  static const std::set<ChannelId>& lookup(const std::map<NodeId, std::set<ChannelId>>& m, NodeId v) {
    static const std::set<ChannelId> none;
    const auto it = m.find(v);
    return it == m.end() ? none : it->second;
  }
};

// Stationary idle fraction of an exponential ON/OFF channel.
inline double channel_availability(double lambda_busy, double lambda_idle) {
  const double idle = 1.0 / lambda_idle, busy = 1.0 / lambda_busy;
  return idle / (idle + busy);
}

inline std::set<ChannelId> common_channels(const std::set<ChannelId>& a, const std::set<ChannelId>& b) {
  std::set<ChannelId> out;
  for (ChannelId c : a)
    if (b.count(c)) out.insert(c);
  return out;
}

// Draws a channel from `usable` with probability proportional to availability.
template <class Rng>
ChannelId channel_select(const ChannelView& view, const std::set<ChannelId>& usable, Rng& rng) {
  if (usable.empty()) throw AuctionError(AuctionError::Code::NoCommonChannel, "no usable channel");
  std::vector<ChannelId> ids(usable.begin(), usable.end());
  std::vector<double> w;
  double total = 0.0;
  for (ChannelId c : ids) {
    w.push_back(c < view.availability.size() ? view.availability[c] : 0.0);
    total += w.back();
  }
  if (!(total > 0.0)) std::fill(w.begin(), w.end(), 1.0);
  std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
  return ids[pick(rng)];
}

}  // namespace oodt::auction
