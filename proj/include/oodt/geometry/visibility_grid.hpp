#pragma once

#include <deque>
#include <vector>

#include "oodt/geometry/polygon.hpp"
#include "oodt/geometry/visibility.hpp"

namespace oodt::geometry {

// Sampled V-space. Cell (i, k) pairs the flashlight sample x = s_i with the
// searcher sample y = s_{i-k}; k = 0 is the start line, k = K the goal line.
class VisibilityGrid {
 public:
  VisibilityGrid(std::vector<double> samples, double perimeter, std::vector<bool> pair_visible)
      : samples_(std::move(samples)), perimeter_(perimeter), pair_visible_(std::move(pair_visible)) {}

  std::size_t sample_count() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }
  double perimeter() const { return perimeter_; }

  // Mutual visibility of samples a and b.
  bool pair(std::size_t a, std::size_t b) const { return pair_visible_[a * samples_.size() + b]; }

  // Free flag of cell (i, k) with 0 <= k <= K.
  bool free(std::size_t i, std::size_t k) const {
    const std::size_t K = samples_.size();
    return pair(i % K, (i + K - (k % K)) % K);
  }

  // V-space coordinates of cell (i, k).
  std::pair<double, double> coords(std::size_t i, std::size_t k) const {
    const std::size_t K = samples_.size();
    const double x = samples_[i % K];
    const std::size_t j = (i + K - (k % K)) % K;
    double y = samples_[j];
    if (k == K) y = x - perimeter_;
    else if (y > x) y -= perimeter_;
    return {x, y};
  }

 private:
  std::vector<double> samples_;
  double perimeter_;
  std::vector<bool> pair_visible_;
};

// Samples every vertex plus `resolution` evenly spaced interior points per
// edge, then marks mutually visible sample pairs.
inline VisibilityGrid visibility_grid(const Polygon& p, std::size_t resolution) {
  if (resolution < 4) resolution = 4;
  std::vector<double> samples;
  std::vector<Point2D> pts;
  for (std::size_t e = 0; e < p.size(); ++e) {
    for (std::size_t s = 0; s <= resolution; ++s) {
      const double t = static_cast<double>(s) / static_cast<double>(resolution + 1);
      samples.push_back(p.vertex_position(e) + t * p.edge_length(e));
      pts.push_back(lerp(p.vertex(e), p.vertex(e + 1), t));
    }
  }
  const std::size_t K = samples.size();
  std::vector<bool> vis(K * K, false);
  for (std::size_t a = 0; a < K; ++a) {
    vis[a * K + a] = true;
    for (std::size_t b = a + 1; b < K; ++b) {
      const bool v = visible_unchecked(p, pts[a], pts[b]);
      vis[a * K + b] = v;
      vis[b * K + a] = v;
    }
  }
  return VisibilityGrid(std::move(samples), p.perimeter(), std::move(vis));
}

// Brute-force searchability: an 8-connected path of free cells from the
// start line to the goal line.
inline bool oracle_searchable(const VisibilityGrid& g) {
  const std::size_t K = g.sample_count();
  std::vector<char> seen(K * (K + 1), 0);
  std::deque<std::pair<std::size_t, std::size_t>> queue;
  for (std::size_t i = 0; i < K; ++i) {
    seen[i * (K + 1)] = 1;
    queue.emplace_back(i, 0);
  }
  while (!queue.empty()) {
    const auto [i, k] = queue.front();
    queue.pop_front();
    if (k == K) return true;
    // Moving x by dx and y by dy changes the lag by dx - dy.
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        if (dx == 0 && dy == 0) continue;
        const long nk = static_cast<long>(k) + dx - dy;
        if (nk < 0 || nk > static_cast<long>(K)) continue;
        const std::size_t ni = (i + K + dx) % K;
        const std::size_t idx = ni * (K + 1) + static_cast<std::size_t>(nk);
        if (seen[idx] || !g.free(ni, static_cast<std::size_t>(nk))) continue;
        seen[idx] = 1;
        queue.emplace_back(ni, static_cast<std::size_t>(nk));
      }
    }
  }
  return false;
}

inline bool oracle_searchable(const Polygon& p, std::size_t resolution) {
  return oracle_searchable(visibility_grid(p, resolution));
}

}  // namespace oodt::geometry
