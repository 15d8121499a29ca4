#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "oodt/auction/metric.hpp"

namespace oodt::auction {

using SubsetUtility = std::function<double(const std::vector<NodeId>&)>;

// Exhaustive search over all subsets. Subsets are passed to the utility in
// candidate order; ties go to the lexicographically smallest subset.
inline std::vector<NodeId> brute_force_best_subset(const std::vector<NodeId>& candidates, const SubsetUtility& utility,
                                                   std::size_t max_n = 16) {
  if (candidates.size() > max_n || candidates.size() > 30)
    throw AuctionError(AuctionError::Code::TooManyCandidates, "too many candidates for exhaustive search");
  const std::uint32_t total = std::uint32_t{1} << candidates.size();
  std::vector<NodeId> best;
  double best_u = utility(best);
  std::vector<NodeId> cur;
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    cur.clear();
    for (std::size_t k = 0; k < candidates.size(); ++k)
      if (mask >> k & 1u) cur.push_back(candidates[k]);
    const double u = utility(cur);
    if (u > best_u || (u == best_u && cur < best)) {
      best_u = u;
      best = cur;
    }
  }
  return best;
}

}  // namespace oodt::auction
