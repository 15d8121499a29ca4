#pragma once

#include <algorithm>
#include <vector>

#include "oodt/geometry/polygon.hpp"

namespace oodt::geometry {

namespace detail {

// Appends the parameters along a->b where the segment meets edge c->d.
// Returns false if the segment crosses the edge transversally at interior
// points of both (which means it leaves the polygon).
inline bool collect_contacts(Point2D a, Point2D b, Point2D c, Point2D d, double eps,
                             std::vector<double>& params) {
  const Point2D ab = b - a;
  const Point2D cd = d - c;
  const double lab = norm(ab);
  const double denom = cross(ab, cd);
  const double oc = orient(a, b, c);
  const double od = orient(a, b, d);
  const bool c_on = std::abs(oc) <= eps * lab;
  const bool d_on = std::abs(od) <= eps * lab;

  auto push_if_on_segment = [&](Point2D q) {
    if (point_segment_distance(q, a, b) <= eps) params.push_back(std::clamp(project_param(q, a, b), 0.0, 1.0));
  };

  if (c_on || d_on || std::abs(denom) <= eps * lab * norm(cd)) {
    if (c_on) push_if_on_segment(c);
    if (d_on) push_if_on_segment(d);
    if (point_segment_distance(a, c, d) <= eps) params.push_back(0.0);
    if (point_segment_distance(b, c, d) <= eps) params.push_back(1.0);
    return true;
  }
  const double t = cross(c - a, cd) / denom;
  const double u = cross(c - a, ab) / denom;
  const double tol_t = eps / std::max(lab, 1e-300);
  const double tol_u = eps / std::max(norm(cd), 1e-300);
  if (t < -tol_t || t > 1 + tol_t || u < -tol_u || u > 1 + tol_u) return true;
  const bool interior_t = t > tol_t && t < 1 - tol_t;
  const bool interior_u = u > tol_u && u < 1 - tol_u;
  if (interior_t && interior_u) return false;
  params.push_back(std::clamp(t, 0.0, 1.0));
  return true;
}

}  // namespace detail

// True iff the closed segment ab lies in the closed polygon region. Both
// endpoints must already be known to lie in the polygon.
inline bool visible_unchecked(const Polygon& p, Point2D a, Point2D b) {
  const double eps = p.tolerance();
  if (distance(a, b) <= eps) return true;
  // Reflex vertices are nudged inward, so a segment grazing one is blocked.
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p.is_reflex(i)) continue;
    const Point2D v = p.vertex(i);
    if (distance(v, a) <= eps || distance(v, b) <= eps) continue;
    if (point_segment_distance(v, a, b) <= eps) return false;
  }
  std::vector<double> params{0.0, 1.0};
  params.reserve(2 * p.size() + 2);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!detail::collect_contacts(a, b, p.vertex(i), p.vertex(i + 1), eps, params)) return false;
  std::sort(params.begin(), params.end());
  const double len = distance(a, b);
  for (std::size_t i = 0; i + 1 < params.size(); ++i) {
    if ((params[i + 1] - params[i]) * len <= eps) continue;
    if (!contains(p, lerp(a, b, 0.5 * (params[i] + params[i + 1])))) return false;
  }
  return true;
}

inline bool visible(const Polygon& p, Point2D a, Point2D b) {
  if (!contains(p, a) || !contains(p, b))
    throw GeometryError(GeometryError::Code::PointOutsidePolygon, "point outside polygon");
  return visible_unchecked(p, a, b);
}

// Visibility between two boundary positions (arclengths).
inline bool visible_positions(const Polygon& p, double s, double t) {
  return visible_unchecked(p, p.point_at(s), p.point_at(t));
}

}  // namespace oodt::geometry
