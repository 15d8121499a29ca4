#pragma once

#include <optional>
#include <vector>

#include "oodt/social/contacts.hpp"

namespace oodt::social {

struct EnergyParams {
  double e_forward = 3.6e-3;  // E_if
  double e_receive = 1.8e-3;  // E_ir
  double e_ack = 0.16e-3;     // E_iack
  double e_initial = 300.0;
};

inline void validate(const EnergyParams& p) {
  if (!(p.e_forward > 0 && p.e_receive > 0 && p.e_ack > 0 && p.e_initial > 0))
    throw SocialError(SocialError::Code::InvalidParams, "energy parameters must be positive");
}

// Energy to forward one packet to n_i receivers.
inline double energy_tx_cost(const EnergyParams& p, std::size_t n_i) {
  return p.e_forward + static_cast<double>(n_i) * p.e_receive + p.e_ack;
}

// Residual energy per node. Residuals only decrease; a node dies the first
// time its residual reaches zero.
class EnergyBook {
 public:
  EnergyBook(std::size_t nodes, double e_initial) : residual_(nodes, e_initial), death_(nodes) {}

  void consume(NodeId node, double amount, double now) {
    if (amount <= 0.0) return;
    residual_[node] -= amount;
    if (residual_[node] <= 0.0 && !death_[node]) death_[node] = now;
  }

  double residual(NodeId node) const { return residual_[node]; }
  bool alive(NodeId node) const { return !death_[node].has_value(); }
  const std::optional<double>& death_time(NodeId node) const { return death_[node]; }
  std::size_t size() const { return residual_.size(); }

  // Time of the first node failure, if any.
  std::optional<double> first_death() const {
    std::optional<double> out;
    for (const auto& d : death_)
      if (d && (!out || *d < *out)) out = d;
    return out;
  }

 private:
  std::vector<double> residual_;
  std::vector<std::optional<double>> death_;
};

}  // namespace oodt::social
