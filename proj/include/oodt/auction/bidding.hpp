#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "oodt/auction/metric.hpp"

namespace oodt::auction {

enum class BidStrategy { Literal, Derived };

struct AuctionParams {
  double alpha = 0.01;
  double epsilon_clamp = 0.01;
  BidStrategy bid_strategy = BidStrategy::Literal;
};

inline void validate(const AuctionParams& p) {
  if (!(p.alpha > 0.0)) throw AuctionError(AuctionError::Code::InvalidParams, "alpha must be positive");
  if (!(p.epsilon_clamp > 0.0 && p.epsilon_clamp < 0.5))
    throw AuctionError(AuctionError::Code::InvalidParams, "epsilon_clamp must lie in (0, 0.5)");
}

inline double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

// Average tie over the candidate set plus the candidate's own ETX and energy term.
inline double candidate_cost(const std::vector<double>& st_values, double etx_i, double e_ic, const AuctionParams& p) {
  if (st_values.empty()) throw AuctionError(AuctionError::Code::EmptyCandidateSet, "candidate cost needs a non-empty set");
  return mean_of(st_values) + etx_i + p.alpha * e_ic;
}

inline double normalized_cost(double theta, double st_term, double etx_s, const AuctionParams& p, double e_initial) {
  const double denom = st_term + etx_s + p.alpha * e_initial;
  if (!(denom > 0.0)) throw AuctionError(AuctionError::Code::InvalidParams, "normalizing denominator must be positive");
  return std::clamp(theta / denom, p.epsilon_clamp, 1.0 - p.epsilon_clamp);
}

inline double equilibrium_bid(double v, std::size_t n, BidStrategy s) {
  if (s == BidStrategy::Literal) {
    if (n < 2) throw AuctionError(AuctionError::Code::TooFewBidders, "literal bid needs at least two bidders");
    const double k = static_cast<double>(n) - 1.0;
    return 1.0 / k + (k - 1.0) / k * v;
  }
  if (n < 1) throw AuctionError(AuctionError::Code::TooFewBidders, "no bidders");
  const double m = static_cast<double>(n);
  return 1.0 / m + (m - 1.0) / m * v;
}

inline double payoff(double b, double v, bool won) { return won ? b - v : 0.0; }

// Inverse of the affine bid function, i.e. the cost that bids b.
inline double bid_inverse(double b, std::size_t n, BidStrategy s) {
  const double b0 = equilibrium_bid(0.0, n, s), b1 = equilibrium_bid(1.0, n, s);
  return (b - b0) / (b1 - b0);
}

// Expected payoff of bidding b with cost v when the other n - 1 bidders follow
// strategy s with costs uniform on (0, 1).
inline double expected_payoff(double b, double v, std::size_t n, BidStrategy s) {
  const double win = std::clamp(1.0 - bid_inverse(b, n, s), 0.0, 1.0);
  return (b - v) * std::pow(win, static_cast<double>(n) - 1.0);
}

struct BestResponse {
  double strategy_bid = 0.0;
  double best_bid = 0.0;
  double strategy_payoff = 0.0;
  double best_payoff = 0.0;
  double deviation = 0.0;  // best_payoff - strategy_payoff
};

// Grid search over b in [0, 1].
inline BestResponse best_response(double v, std::size_t n, BidStrategy s, double step = 1e-4) {
  BestResponse r;
  r.strategy_bid = equilibrium_bid(v, n, s);
  r.strategy_payoff = expected_payoff(r.strategy_bid, v, n, s);
  r.best_payoff = r.strategy_payoff;
  r.best_bid = r.strategy_bid;
  const auto steps = static_cast<long>(std::llround(1.0 / step));
  for (long k = 0; k <= steps; ++k) {
    const double b = static_cast<double>(k) * step;
    const double u = expected_payoff(b, v, n, s);
    if (u > r.best_payoff) {
      r.best_payoff = u;
      r.best_bid = b;
    }
  }
  r.deviation = r.best_payoff - r.strategy_payoff;
  return r;
}

}  // namespace oodt::auction
