#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "oodt/geometry/polygon.hpp"

namespace oodt::geometry {

struct BoundaryPoint {
  double arclength = 0.0;
};

// Back: first boundary hit of the ray Succ(r)->r extended beyond r.
// Forw: first boundary hit of the ray Pred(r)->r extended beyond r.
struct ReflexRays {
  std::size_t vertex_index = 0;
  BoundaryPoint back;
  BoundaryPoint forw;
};

namespace detail {

// First boundary contact of the ray origin + t*dir, t > 0. A ray that
// grazes a vertex stops there (vertices are treated as nudged inward).
inline EdgeLocation cast_ray(const Polygon& p, std::size_t origin_vertex, Point2D dir) {
  const Point2D o = p.vertex(origin_vertex);
  const double eps = p.tolerance();
  const double dlen = norm(dir);
  const double tmin = eps / dlen;
  double best_t = std::numeric_limits<double>::infinity();
  EdgeLocation best{};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point2D c = p.vertex(i);
    const Point2D d = p.vertex(i + 1);
    const Point2D cd = d - c;
    const double denom = cross(dir, cd);
    if (std::abs(denom) <= kRelativeTolerance * dlen * norm(cd)) {
      // Parallel: only a collinear edge can be hit, at its nearer endpoint.
      if (std::abs(orient(o, o + dir, c)) > eps * dlen) continue;
      const double tc = dot(c - o, dir) / (dlen * dlen);
      const double td = dot(d - o, dir) / (dlen * dlen);
      if (tc > tmin && tc < best_t) { best_t = tc; best = {i, 0.0}; }
      if (td > tmin && td < best_t) { best_t = td; best = {i, 1.0}; }
      continue;
    }
    const double t = cross(c - o, cd) / denom;
    const double u = cross(c - o, dir) / denom;
    if (t <= tmin) continue;
    const double utol = eps / norm(cd);
    if (u < -utol || u > 1 + utol) continue;
    if (t < best_t) { best_t = t; best = {i, std::clamp(u, 0.0, 1.0)}; }
  }
  if (best.t >= 1.0) best = {(best.edge + 1) % p.size(), 0.0};
  return best;
}

}  // namespace detail

inline ReflexRays reflex_rays(const Polygon& p, std::size_t r) {
  if (r >= p.size() || !p.is_reflex(r))
    throw GeometryError(GeometryError::Code::NotReflex, "vertex is not reflex");
  const Point2D v = p.vertex(r);
  ReflexRays out;
  out.vertex_index = r;
  out.back.arclength = p.position_of(detail::cast_ray(p, r, v - p.vertex(p.succ(r))));
  out.forw.arclength = p.position_of(detail::cast_ray(p, r, v - p.vertex(p.pred(r))));
  return out;
}

inline std::vector<ReflexRays> all_reflex_rays(const Polygon& p) {
  std::vector<ReflexRays> out;
  for (std::size_t r : p.reflex_vertices()) out.push_back(reflex_rays(p, r));
  return out;
}

// Circular interval helpers over [0, D).

// Clockwise distance from a to b in [0, D).
inline double cw_distance(double a, double b, double D) {
  double d = std::fmod(b - a, D);
  if (d < 0) d += D;
  return d;
}

// x strictly inside the clockwise chain from a to b (exclusive), with margin.
inline bool in_cw_open(double x, double a, double b, double D, double eps) {
  const double len = cw_distance(a, b, D);
  const double off = cw_distance(a, x, D);
  return off > eps && off < len - eps;
}

}  // namespace oodt::geometry
