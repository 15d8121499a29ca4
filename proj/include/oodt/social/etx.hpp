#pragma once

#include <limits>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/dijkstra_shortest_paths.hpp>

#include "oodt/social/contacts.hpp"

namespace oodt::social {

inline constexpr double kNoLink = std::numeric_limits<double>::infinity();

// Expected transmission count of a link; infinite when either direction
// never delivers.
inline double etx_link(double p_forward, double p_reverse) {
  if (!(p_forward > 0.0) || !(p_reverse > 0.0)) return kNoLink;
  return 1.0 / (p_forward * p_reverse);
}

// Undirected link graph weighted by ETX.
class EtxGraph {
 public:
  explicit EtxGraph(std::size_t nodes) : g_(nodes) {}

  void add_link(NodeId a, NodeId b, double etx) {
    if (etx == kNoLink) return;
    boost::add_edge(a, b, etx, g_);
  }

  std::size_t size() const { return boost::num_vertices(g_); }

  // Shortest ETX distance from src to every node.
  std::vector<double> distances_from(NodeId src) const {
    std::vector<double> dist(size(), kNoLink);
    boost::dijkstra_shortest_paths(g_, src,
                                   boost::distance_map(boost::make_iterator_property_map(
                                                           dist.begin(), boost::get(boost::vertex_index, g_)))
                                       .distance_inf(kNoLink));
    return dist;
  }

 private:
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                                      boost::property<boost::edge_weight_t, double>>;
  Graph g_;
};

// Minimum-sum ETX from src to dst; kNoLink when disconnected.
inline double etx_to_destination(const EtxGraph& g, NodeId src, NodeId dst) {
  if (src == dst) return 0.0;
  return g.distances_from(src)[dst];
}

}  // namespace oodt::social
