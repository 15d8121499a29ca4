#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace oodt::auction {

using NodeId = std::size_t;
using ChannelId = std::size_t;

class AuctionError : public std::runtime_error {
 public:
  enum class Code { InvalidParams, AllExcluded, EmptyCandidateSet, TooFewBidders, NoCommonChannel, TooManyCandidates };

  AuctionError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// Marks a neighbor with no usable social tie.
inline constexpr double kExcluded = std::numeric_limits<double>::infinity();

struct RoutingWeights {
  double phi1 = 0.4;
  double phi2 = 0.3;
  double phi3 = 0.3;
};

inline void validate(const RoutingWeights& w) {
  for (double p : {w.phi1, w.phi2, w.phi3})
    if (!(p > 0.0 && p <= 1.0)) throw AuctionError(AuctionError::Code::InvalidParams, "routing weight outside (0, 1]");
  if (std::abs(w.phi1 + w.phi2 + w.phi3 - 1.0) > 1e-9)
    throw AuctionError(AuctionError::Code::InvalidParams, "routing weights must sum to 1");
}

inline double oodt_metric(const RoutingWeights& w, double etx, double e_ic, double st) {
  if (!(st > 1e-9)) return kExcluded;
  return w.phi1 * etx + w.phi2 * e_ic + w.phi3 / st;
}

// Mean of the finite metrics; excluded neighbors do not count.
inline double oodt_threshold(const std::vector<double>& values) {
  double sum = 0.0;
  std::size_t n = 0;
  for (double v : values)
    if (std::isfinite(v)) {
      sum += v;
      ++n;
    }
  if (n == 0) throw AuctionError(AuctionError::Code::AllExcluded, "no finite neighbor metric");
  return sum / static_cast<double>(n);
}

}  // namespace oodt::auction
