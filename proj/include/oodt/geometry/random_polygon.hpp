#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oodt/geometry/polygon.hpp"

namespace oodt::geometry {

// Random simple polygon: random points untangled by 2-opt moves until no two
// edges cross. Retries on degenerate draws.
template <class Rng>
Polygon random_simple_polygon(Rng& rng, std::size_t n, double size = 100.0) {
  std::uniform_real_distribution<double> coord(0.0, size);
  for (;;) {
    std::vector<Point2D> pts(n);
    for (auto& q : pts) q = {coord(rng), coord(rng)};
    bool changed = true;
    int guard = 0;
    while (changed && guard++ < 10000) {
      changed = false;
      for (std::size_t i = 0; i < n && !changed; ++i) {
        for (std::size_t j = i + 2; j < n && !changed; ++j) {
          if (i == 0 && j == n - 1) continue;
          const Point2D a = pts[i], b = pts[i + 1], c = pts[j], d = pts[(j + 1) % n];
          if (orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0) {
            std::reverse(pts.begin() + static_cast<long>(i) + 1, pts.begin() + static_cast<long>(j) + 1);
            changed = true;
          }
        }
      }
    }
    try {
      return polygon_new(pts);
    } catch (const GeometryError&) {
    }
  }
}

// Random star-shaped polygon around the origin.
template <class Rng>
Polygon random_star_polygon(Rng& rng, std::size_t n, double rmin = 10.0, double rmax = 100.0) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> radius(rmin, rmax);
  for (;;) {
    std::vector<double> a(n);
    for (auto& x : a) x = angle(rng);
    std::sort(a.begin(), a.end());
    std::vector<Point2D> pts;
    for (double t : a) {
      const double r = radius(rng);
      pts.push_back({r * std::cos(t), r * std::sin(t)});
    }
    try {
      return polygon_new(pts);
    } catch (const GeometryError&) {
    }
  }
}

// Random convex polygon: points on a circle at sorted random angles.
template <class Rng>
Polygon random_convex_polygon(Rng& rng, std::size_t n, double radius = 50.0) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (;;) {
    std::vector<double> a(n);
    for (auto& x : a) x = angle(rng);
    std::sort(a.begin(), a.end());
    std::vector<Point2D> pts;
    for (double t : a) pts.push_back({radius * std::cos(t), radius * std::sin(t)});
    try {
      Polygon p = polygon_new(pts);
      if (p.is_convex()) return p;
    } catch (const GeometryError&) {
    }
  }
}

}  // namespace oodt::geometry
