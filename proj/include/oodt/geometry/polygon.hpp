#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "oodt/geometry/point.hpp"

namespace oodt::geometry {

// Relative tolerance for all predicates. Multiplied by the polygon's bounding
// box extent to get an absolute tolerance.
inline constexpr double kRelativeTolerance = 1e-9;

inline double signed_area(std::span<const Point2D> ring) {
  double twice = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point2D& a = ring[i];
    const Point2D& b = ring[(i + 1) % ring.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

// Segment intersection test including touching and collinear overlap.
inline bool segments_touch(Point2D a, Point2D b, Point2D c, Point2D d, double eps) {
  const double d1 = orient(c, d, a);
  const double d2 = orient(c, d, b);
  const double d3 = orient(a, b, c);
  const double d4 = orient(a, b, d);
  const double lab = distance(a, b);
  const double lcd = distance(c, d);
  auto sgn = [](double v, double tol) { return v > tol ? 1 : (v < -tol ? -1 : 0); };
  const int s1 = sgn(d1, eps * lcd), s2 = sgn(d2, eps * lcd);
  const int s3 = sgn(d3, eps * lab), s4 = sgn(d4, eps * lab);
  if (s1 * s2 < 0 && s3 * s4 < 0) return true;
  if (point_segment_distance(a, c, d) <= eps) return true;
  if (point_segment_distance(b, c, d) <= eps) return true;
  if (point_segment_distance(c, a, b) <= eps) return true;
  if (point_segment_distance(d, a, b) <= eps) return true;
  return false;
}

// Location of a boundary point as (edge index, fraction along that edge).
struct EdgeLocation {
  std::size_t edge = 0;
  double t = 0.0;
};

// A simple polygon stored clockwise. Boundary positions are arclengths
// measured clockwise from vertex 0.
class Polygon {
 public:
  Polygon() = default;

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Point2D>& vertices() const { return vertices_; }
  const Point2D& vertex(std::size_t i) const { return vertices_[i % size()]; }
  std::size_t succ(std::size_t i) const { return (i + 1) % size(); }
  std::size_t pred(std::size_t i) const { return (i + size() - 1) % size(); }

  bool is_reflex(std::size_t i) const { return reflex_[i]; }
  const std::vector<bool>& reflex_flags() const { return reflex_; }
  std::vector<std::size_t> reflex_vertices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (reflex_[i]) out.push_back(i);
    return out;
  }
  bool is_convex() const { return reflex_vertices().empty(); }

  // Total boundary length D.
  double perimeter() const { return perimeter_; }
  double tolerance() const { return eps_; }
  double extent() const { return extent_; }

  double edge_length(std::size_t i) const { return cumulative_[i + 1] - cumulative_[i]; }
  double vertex_position(std::size_t i) const { return cumulative_[i % size()]; }

  double wrap(double s) const {
    double w = std::fmod(s, perimeter_);
    if (w < 0) w += perimeter_;
    if (w >= perimeter_) w -= perimeter_;
    return w;
  }

  EdgeLocation locate(double s) const {
    const double w = wrap(s);
    std::size_t lo = 0, hi = size();
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (cumulative_[mid] <= w) lo = mid; else hi = mid;
    }
    const double len = edge_length(lo);
    return {lo, len > 0 ? (w - cumulative_[lo]) / len : 0.0};
  }

  Point2D point_at(double s) const {
    const EdgeLocation loc = locate(s);
    return lerp(vertex(loc.edge), vertex(loc.edge + 1), loc.t);
  }

  double position_of(EdgeLocation loc) const {
    return wrap(cumulative_[loc.edge] + loc.t * edge_length(loc.edge));
  }

  // Uniform scaling about the origin; orientation and flags are preserved.
  Polygon scaled(double k) const {
    Polygon p = *this;
    for (auto& v : p.vertices_) v = v * k;
    for (auto& c : p.cumulative_) c *= k;
    p.perimeter_ *= k;
    p.eps_ *= k;
    p.extent_ *= k;
    return p;
  }

  friend Polygon polygon_new(std::span<const Point2D> points);

 private:
  std::vector<Point2D> vertices_;
  std::vector<bool> reflex_;
  std::vector<double> cumulative_;
  double perimeter_ = 0.0;
  double eps_ = 0.0;
  double extent_ = 0.0;
};

// Builds a validated clockwise polygon. Counterclockwise input is reversed
// (vertex 0 is kept as the first vertex).
inline Polygon polygon_new(std::span<const Point2D> points) {
  using Code = GeometryError::Code;
  const std::size_t n = points.size();
  if (n < 3) throw GeometryError(Code::TooFewVertices, "polygon needs at least 3 vertices");
  double minx = points[0].x, maxx = points[0].x, miny = points[0].y, maxy = points[0].y;
  for (const auto& p : points) {
    if (!is_finite(p)) throw GeometryError(Code::NonFinite, "non-finite coordinate");
    minx = std::min(minx, p.x); maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y); maxy = std::max(maxy, p.y);
  }
  const double extent = std::max({maxx - minx, maxy - miny, 1e-300});
  const double eps = kRelativeTolerance * extent;

  std::vector<Point2D> ring(points.begin(), points.end());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (distance(ring[i], ring[j]) <= eps)
        throw GeometryError(Code::DuplicateVertex, "duplicate vertex");

  for (std::size_t i = 0; i < n; ++i) {
    const Point2D& a = ring[(i + n - 1) % n];
    const Point2D& b = ring[i];
    const Point2D& c = ring[(i + 1) % n];
    if (std::abs(cross(b - a, c - b)) <= kRelativeTolerance * distance(a, b) * distance(b, c))
      throw GeometryError(Code::CollinearDegenerate, "three consecutive collinear vertices");
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_touch(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n], eps))
        throw GeometryError(Code::SelfIntersecting, "polygon is not simple");
    }
  }

  if (signed_area(ring) > 0) std::reverse(ring.begin() + 1, ring.end());

  Polygon poly;
  poly.vertices_ = std::move(ring);
  poly.eps_ = eps;
  poly.extent_ = extent;
  poly.cumulative_.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    poly.cumulative_[i + 1] = poly.cumulative_[i] + distance(poly.vertices_[i], poly.vertices_[(i + 1) % n]);
  poly.perimeter_ = poly.cumulative_[n];
  poly.reflex_.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2D& a = poly.vertices_[(i + n - 1) % n];
    const Point2D& b = poly.vertices_[i];
    const Point2D& c = poly.vertices_[(i + 1) % n];
    // Walking clockwise the interior is on the right; a left turn is reflex.
    poly.reflex_[i] = cross(b - a, c - b) > 0;
  }
  return poly;
}

inline Polygon polygon_new(std::initializer_list<Point2D> points) {
  return polygon_new(std::span<const Point2D>(points.begin(), points.size()));
}

// Closed containment: boundary points count as inside.
inline bool contains(const Polygon& p, Point2D q) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i)
    if (point_segment_distance(q, p.vertex(i), p.vertex(i + 1)) <= p.tolerance()) return true;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2D& a = p.vertex(i);
    const Point2D& b = p.vertex(j);
    if ((a.y > q.y) != (b.y > q.y)) {
      const double xint = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (q.x < xint) inside = !inside;
    }
  }
  return inside;
}

// Strict interior test with the polygon tolerance as a margin.
inline bool strictly_inside(const Polygon& p, Point2D q) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (point_segment_distance(q, p.vertex(i), p.vertex(i + 1)) <= p.tolerance()) return false;
  return contains(p, q);
}

}  // namespace oodt::geometry
