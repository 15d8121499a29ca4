#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <vector>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/multi_point.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "oodt/geometry/bsa.hpp"
#include "oodt/geometry/searchability.hpp"
#include "oodt/obstacle/obstacle_map.hpp"

namespace oodt::obstacle {

using NodeId = std::size_t;

struct NodePosition {
  NodeId id = 0;
  Point2D pos;
};

enum class VertexRoleKind { NeighborNode, ObstacleCorner };

struct VertexRole {
  VertexRoleKind kind = VertexRoleKind::NeighborNode;
  NodeId node = 0;  // NeighborNode only
};

struct NeighborhoodPolygon {
  NodeId center = 0;
  Polygon polygon;
  std::vector<VertexRole> vertex_roles;  // parallel to polygon.vertices()
};

namespace detail {

// Validates the ring and carries the roles over to the stored vertex order.
inline NeighborhoodPolygon make_neighborhood(NodeId center, const std::vector<Point2D>& ring,
                                             const std::vector<VertexRole>& roles) {
  NeighborhoodPolygon np;
  np.center = center;
  np.polygon = geometry::polygon_new(ring);
  for (const auto& v : np.polygon.vertices()) {
    const auto it = std::find(ring.begin(), ring.end(), v);
    np.vertex_roles.push_back(roles[static_cast<std::size_t>(it - ring.begin())]);
  }
  return np;
}

inline std::vector<NodePosition> dedupe(const std::vector<NodePosition>& nodes) {
  std::vector<NodePosition> out;
  for (const auto& n : nodes)
    if (std::none_of(out.begin(), out.end(), [&](const NodePosition& o) { return o.pos == n.pos; })) out.push_back(n);
  return out;
}

// Clockwise convex hull, collinear points dropped.
inline std::vector<NodePosition> hull_ring(const std::vector<NodePosition>& nodes) {
  namespace bg = boost::geometry;
  using BPoint = bg::model::d2::point_xy<double>;
  bg::model::multi_point<BPoint> mp;
  for (const auto& n : nodes) mp.emplace_back(n.pos.x, n.pos.y);
  bg::model::polygon<BPoint> hull;
  bg::convex_hull(mp, hull);
  std::vector<NodePosition> out;
  const auto& outer = hull.outer();
  for (std::size_t i = 0; i + 1 < outer.size(); ++i) {
    const Point2D q{outer[i].x(), outer[i].y()};
    const auto it = std::find_if(nodes.begin(), nodes.end(), [&](const NodePosition& n) { return n.pos == q; });
    out.push_back(*it);
  }
  return out;
}

// Clockwise angle from direction a to direction b around g, in [0, 2pi).
inline double cw_angle(Point2D g, Point2D a, Point2D b) {
  double d = std::atan2(a.y - g.y, a.x - g.x) - std::atan2(b.y - g.y, b.x - g.x);
  while (d < 0) d += 2 * std::numbers::pi;
  while (d >= 2 * std::numbers::pi) d -= 2 * std::numbers::pi;
  return d;
}

}  // namespace detail

// Convex hull of the neighbors; wherever a hull edge crosses an obstacle, the
// obstacle corners inside the hull and inside that edge's angular wedge (seen
// from the hull centroid) are spliced in. The ring stays star-shaped around
// the centroid, so it is simple.
inline NeighborhoodPolygon neighborhood_polygon(NodeId center, const std::vector<NodePosition>& neighbors,
                                                const ObstacleMap& map) {
  using Code = ObstacleError::Code;
  const auto unique = detail::dedupe(neighbors);
  if (unique.size() < 3) throw ObstacleError(Code::TooFewNeighbors, "fewer than three distinct neighbors");
  const bool collinear = std::all_of(unique.begin() + 2, unique.end(), [&](const NodePosition& n) {
    const double scale = geometry::distance(unique[0].pos, unique[1].pos) * geometry::distance(unique[0].pos, n.pos);
    return std::abs(geometry::orient(unique[0].pos, unique[1].pos, n.pos)) <= 1e-12 * scale;
  });
  const auto hull = collinear ? std::vector<NodePosition>{} : detail::hull_ring(unique);
  if (hull.size() < 3) throw ObstacleError(Code::DegenerateRing, "neighbors are collinear");

  std::vector<Point2D> base;
  for (const auto& h : hull) base.push_back(h.pos);
  const Polygon hull_poly = geometry::polygon_new(base);
  Point2D g{0, 0};
  for (const auto& q : base) g = g + q * (1.0 / static_cast<double>(base.size()));
  const double eps = hull_poly.tolerance();

  std::vector<std::vector<Point2D>> splices(hull.size());
  auto assemble = [&](std::vector<Point2D>& ring, std::vector<VertexRole>& roles) {
    ring.clear();
    roles.clear();
    for (std::size_t i = 0; i < hull.size(); ++i) {
      ring.push_back(hull[i].pos);
      roles.push_back({VertexRoleKind::NeighborNode, hull[i].id});
      for (const auto& c : splices[i]) {
        ring.push_back(c);
        roles.push_back({VertexRoleKind::ObstacleCorner, 0});
      }
    }
  };
  std::vector<Point2D> ring;
  std::vector<VertexRole> roles;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2D a = hull[i].pos, b = hull[(i + 1) % hull.size()].pos;
    const double wedge = detail::cw_angle(g, a, b);
    std::vector<std::pair<double, Point2D>> corners;
    for (const auto& o : map.obstacles()) {
      if (!detail::crosses_interior(o, a, b)) continue;
      for (const auto& c : o.vertices()) {
        if (geometry::distance(c, g) <= eps || !geometry::strictly_inside(hull_poly, c)) continue;
        const double off = detail::cw_angle(g, a, c);
        if (off > 1e-9 && off < wedge - 1e-9) corners.emplace_back(off, c);
      }
    }
    std::sort(corners.begin(), corners.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    // Corners on one ray from the centroid would break the star shape.
    std::vector<Point2D> chosen;
    double last = -1.0;
    for (const auto& [off, c] : corners) {
      if (off - last <= 1e-9) continue;
      chosen.push_back(c);
      last = off;
    }
    splices[i] = chosen;
    assemble(ring, roles);
    try {
      geometry::polygon_new(ring);
    } catch (const geometry::GeometryError&) {
      splices[i].clear();
    }
  }
  assemble(ring, roles);
  return detail::make_neighborhood(center, ring, roles);
}

struct Deletion {
  NodeId node = 0;
  Point2D pos;
};

struct PruneResult {
  NeighborhoodPolygon polygon;
  std::vector<Deletion> deleted;
  bool unsalvageable = false;  // pruning stopped without reaching a searchable polygon
};

// Deletes uniformly random neighbor vertices until the polygon is boundary
// 1-searchable. Obstacle corners are never deleted.
inline PruneResult searchable_or_prune(const NeighborhoodPolygon& np, std::uint64_t seed) {
  PruneResult r{np, {}, false};
  std::mt19937_64 rng(seed);
  while (!geometry::is_boundary_1_searchable(r.polygon.polygon)) {
    if (r.polygon.polygon.size() <= 3) {
      r.unsalvageable = true;
      break;
    }
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < r.polygon.vertex_roles.size(); ++i)
      if (r.polygon.vertex_roles[i].kind == VertexRoleKind::NeighborNode) cand.push_back(i);
    bool removed = false;
    while (!cand.empty() && !removed) {
      std::uniform_int_distribution<std::size_t> pick(0, cand.size() - 1);
      const std::size_t k = pick(rng);
      const std::size_t idx = cand[k];
      std::vector<Point2D> ring;
      std::vector<VertexRole> roles;
      for (std::size_t i = 0; i < r.polygon.polygon.size(); ++i) {
        if (i == idx) continue;
        ring.push_back(r.polygon.polygon.vertex(i));
        roles.push_back(r.polygon.vertex_roles[i]);
      }
      try {
        NeighborhoodPolygon next = detail::make_neighborhood(np.center, ring, roles);
        r.deleted.push_back({r.polygon.vertex_roles[idx].node, r.polygon.polygon.vertex(idx)});
        r.polygon = std::move(next);
        removed = true;
      } catch (const geometry::GeometryError&) {
        cand.erase(cand.begin() + static_cast<long>(k));
      }
    }
    if (!removed) {
      r.unsalvageable = true;
      break;
    }
  }
  return r;
}

struct ObservedResult {
  std::set<NodeId> observed;
  bool used_polygon = false;  // false when the LOS fallback applied
  std::vector<Deletion> deleted;
  bool unsalvageable = false;
  bool schedule_found = false;
};

// Neighbors kept by the pruned neighborhood polygon that also have line of
// sight to the center. With fewer than three usable neighbors only line of
// sight is checked.
inline ObservedResult observed_neighbors_detail(const NodePosition& center, const std::vector<NodePosition>& neighbors,
                                                const ObstacleMap& map, std::uint64_t seed) {
  ObservedResult r;
  std::set<NodeId> deleted;
  try {
    const NeighborhoodPolygon np = neighborhood_polygon(center.id, neighbors, map);
    const PruneResult pr = searchable_or_prune(np, seed);
    r.used_polygon = true;
    r.deleted = pr.deleted;
    r.unsalvageable = pr.unsalvageable;
    for (const auto& d : pr.deleted) deleted.insert(d.node);
    try {
      const auto schedule = geometry::bsa_search(pr.polygon.polygon);
      r.schedule_found = geometry::schedule_verify(pr.polygon.polygon, schedule);
    } catch (const geometry::GeometryError&) {
      r.schedule_found = false;
    }
  } catch (const ObstacleError&) {
    r.used_polygon = false;
  }
  for (const auto& n : neighbors)
    if (!deleted.count(n.id) && los_clear(map, center.pos, n.pos)) r.observed.insert(n.id);
  return r;
}

inline std::set<NodeId> observed_neighbors(const NodePosition& center, const std::vector<NodePosition>& neighbors,
                                           const ObstacleMap& map, std::uint64_t seed) {
  return observed_neighbors_detail(center, neighbors, map, seed).observed;
}

// Debug dump: center_id,neighbor_id,observed(0|1).
inline void write_observed_csv(std::ostream& os, NodeId center, const std::vector<NodePosition>& neighbors,
                               const std::set<NodeId>& observed, bool header = true) {
  if (header) os << "center_id,neighbor_id,observed\n";
  for (const auto& n : neighbors) os << center << ',' << n.id << ',' << (observed.count(n.id) ? 1 : 0) << '\n';
}

}  // namespace oodt::obstacle
