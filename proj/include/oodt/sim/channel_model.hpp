#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <gsl/gsl_integration.h>

#include "oodt/geometry/point.hpp"
#include "oodt/sim/scenario.hpp"

namespace oodt::sim {

using geometry::Point2D;

// Exponential ON/OFF occupancy of one licensed channel by one primary user.
struct PuState {
  bool on = false;
  double next_transition = 0.0;
};

// Flips the state and draws the dwell time of the new state.
template <class Rng>
PuState pu_transition(const PuState& s, double now, double lambda_busy, double lambda_idle, Rng& rng) {
  PuState out;
  out.on = !s.on;
  std::exponential_distribution<double> dwell(out.on ? lambda_busy : lambda_idle);
  out.next_transition = now + dwell(rng);
  return out;
}

struct PrimaryUser {
  Point2D pos;
  std::size_t channel = 0;
  PuState state;
  std::vector<double> flips;  // transition times, for post-run audits
  bool initially_on = false;

  template <class Rng>
  void advance(double t, double lambda_busy, double lambda_idle, Rng& rng) {
    while (state.next_transition <= t) {
      flips.push_back(state.next_transition);
      state = pu_transition(state, state.next_transition, lambda_busy, lambda_idle, rng);
    }
  }

  // ON state at time t reconstructed from the recorded flips.
  bool on_at(double t) const {
    const auto n = std::upper_bound(flips.begin(), flips.end(), t) - flips.begin();
    return initially_on != (n % 2 == 1);
  }
};

// Success probability of one transmission: Nakagami-m fading over log-normal
// shadowing, with the decoding threshold calibrated so the shadowing-free
// success probability at half range equals `delivery_at_half_range`.
class LinkModel {
 public:
  explicit LinkModel(const Scenario& s, std::size_t order = 24)
      : range_(s.su_range), exponent_(s.pathloss_exponent), m_(s.fading_m) {
    const double half = 0.5 * s.su_range;
    // Solve Q(m, m c half^n) = target for c.
    const double x = boost::math::gamma_q_inv(m_, s.delivery_at_half_range) / m_;
    c_ = x / std::pow(half, exponent_);
    gsl_integration_fixed_workspace* w =
        gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, order, 0.0, 1.0, 0.0, 0.0);
    const double* nodes = gsl_integration_fixed_nodes(w);
    const double* weights = gsl_integration_fixed_weights(w);
    for (std::size_t k = 0; k < order; ++k) {
      // X = sqrt(2) sigma t with weight exp(-t^2) / sqrt(pi).
      const double shadow_db = std::sqrt(2.0) * s.shadowing_sigma_db * nodes[k];
      gain_.push_back(std::pow(10.0, -shadow_db / 10.0));
      weight_.push_back(weights[k] / std::sqrt(M_PI));
    }
    gsl_integration_fixed_free(w);
  }

  double delivery_prob(double d) const {
    if (d > range_) return 0.0;
    if (!(d > 0.0)) return 1.0;
    const double base = m_ * c_ * std::pow(d, exponent_);
    double p = 0.0;
    for (std::size_t k = 0; k < gain_.size(); ++k) p += weight_[k] * fading_success(base * gain_[k]);
    return std::clamp(p, 0.0, 1.0);
  }

 private:
  double fading_success(double x) const { return m_ == 1.0 ? std::exp(-x) : boost::math::gamma_q(m_, x); }

  double range_, exponent_, m_, c_ = 0.0;
  std::vector<double> gain_, weight_;
};

inline double link_delivery_prob(double distance, const Scenario& s) { return LinkModel(s).delivery_prob(distance); }

// Random waypoint with zero pause.
struct Mobile {
  Point2D pos;
  Point2D waypoint;
  double speed = 1.0;
};

template <class Rng, class Accept>
void draw_waypoint(Mobile& m, const Scenario& s, Rng& rng, const Accept& accept) {
  std::uniform_real_distribution<double> xs(0.0, s.area_width), ys(0.0, s.area_height);
  std::uniform_real_distribution<double> sp(s.speed_min, s.speed_max);
  m.waypoint = m.pos;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Point2D w{xs(rng), ys(rng)};
    if (accept(m.pos, w)) {
      m.waypoint = w;
      break;
    }
  }
  m.speed = sp(rng);
}

// Moves toward the waypoint; on arrival a new waypoint and speed are drawn
// and the remaining time is spent on the new leg.
template <class Rng, class Accept>
void mobility_step(Mobile& m, double dt, const Scenario& s, Rng& rng, const Accept& accept) {
  for (int legs = 0; dt > 0.0 && legs < 4; ++legs) {
    const double dx = m.waypoint.x - m.pos.x, dy = m.waypoint.y - m.pos.y;
    const double dist = std::hypot(dx, dy);
    if (dist <= m.speed * dt) {
      dt -= dist / m.speed;
      m.pos = m.waypoint;
      draw_waypoint(m, s, rng, accept);
      if (m.waypoint.x == m.pos.x && m.waypoint.y == m.pos.y) return;
    } else {
      m.pos = {m.pos.x + dx / dist * m.speed * dt, m.pos.y + dy / dist * m.speed * dt};
      return;
    }
  }
}

template <class Rng>
void mobility_step(Mobile& m, double dt, const Scenario& s, Rng& rng) {
  mobility_step(m, dt, s, rng, [](Point2D, Point2D) { return true; });
}

}  // namespace oodt::sim
