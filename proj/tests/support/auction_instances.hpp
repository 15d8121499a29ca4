#pragma once

#include <map>
#include <random>
#include <set>
#include <vector>

#include "auction_reference.hpp"
#include "oodt/auction.hpp"

namespace fixtures {

struct FsaInstance {
  std::size_t sender = 0;
  std::vector<oodt::auction::NeighborInfo> neighbors;
  oodt::auction::ChannelView channels;
  std::map<std::size_t, std::size_t> shared;
};

// Sender 0 with `count` neighbors numbered from 1; a few channels each.
inline FsaInstance random_fsa_instance(std::mt19937_64& rng, std::size_t count, std::size_t channel_count = 4) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FsaInstance in;
  auto random_channels = [&] {
    std::set<std::size_t> s;
    for (std::size_t c = 0; c < channel_count; ++c)
      if (u(rng) < 0.45) s.insert(c);
    return s;
  };
  in.channels.available[0] = random_channels();
  in.channels.availability.assign(channel_count, 0.5);
  for (std::size_t j = 1; j <= count; ++j) {
    oodt::auction::NeighborInfo n;
    n.node = j;
    n.etx = 1.0 + 3.0 * u(rng);
    n.e_ic = u(rng);
    n.st = u(rng) < 0.1 ? 0.0 : u(rng);
    n.etx_dest = 1.0 + 5.0 * u(rng);
    in.neighbors.push_back(n);
    in.channels.available[j] = random_channels();
    in.channels.onward[j] = random_channels();
    in.shared[j] = static_cast<std::size_t>(u(rng) * 3.0);
  }
  return in;
}

inline reference::Partition reference_partition(const FsaInstance& in, const oodt::auction::RoutingWeights& w) {
  std::vector<reference::Neighbor> nv;
  for (const auto& n : in.neighbors) nv.push_back({n.node, n.etx, n.e_ic, n.st});
  return reference::fsa(in.sender, nv, w.phi1, w.phi2, w.phi3, in.channels.available, in.channels.onward, in.shared);
}

}  // namespace fixtures
