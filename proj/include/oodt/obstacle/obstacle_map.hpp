#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oodt/geometry/polygon.hpp"
#include "oodt/geometry/polygon_io.hpp"

namespace oodt::obstacle {

using geometry::Point2D;
using geometry::Polygon;

class ObstacleError : public std::runtime_error {
 public:
  enum class Code { OutOfArea, ObstacleOutsideArea, ObstaclesOverlap, TooFewNeighbors, DegenerateRing, Parse };

  ObstacleError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

struct Box {
  double xmin = 0, ymin = 0, xmax = 0, ymax = 0;
  bool overlaps(const Box& o) const { return xmin <= o.xmax && o.xmin <= xmax && ymin <= o.ymax && o.ymin <= ymax; }
};

inline Box bounding_box(const Polygon& p) {
  Box b{p.vertex(0).x, p.vertex(0).y, p.vertex(0).x, p.vertex(0).y};
  for (const auto& v : p.vertices()) {
    b.xmin = std::min(b.xmin, v.x);
    b.ymin = std::min(b.ymin, v.y);
    b.xmax = std::max(b.xmax, v.x);
    b.ymax = std::max(b.ymax, v.y);
  }
  return b;
}

// Solid obstacles inside an axis-aligned area [0, width] x [0, height].
class ObstacleMap {
 public:
  ObstacleMap(double width, double height, std::vector<Polygon> obstacles = {})
      : width_(width), height_(height), obstacles_(std::move(obstacles)) {
    using Code = ObstacleError::Code;
    for (const auto& o : obstacles_) {
      boxes_.push_back(bounding_box(o));
      for (const auto& v : o.vertices())
        if (!inside_area(v)) throw ObstacleError(Code::ObstacleOutsideArea, "obstacle vertex outside the area");
    }
    for (std::size_t i = 0; i < obstacles_.size(); ++i)
      for (std::size_t j = i + 1; j < obstacles_.size(); ++j)
        if (intersecting(i, j)) throw ObstacleError(Code::ObstaclesOverlap, "obstacles overlap");
  }

  double width() const { return width_; }
  double height() const { return height_; }
  const std::vector<Polygon>& obstacles() const { return obstacles_; }
  const Box& box(std::size_t i) const { return boxes_[i]; }
  bool empty() const { return obstacles_.empty(); }

  bool inside_area(Point2D p) const { return p.x >= 0.0 && p.x <= width_ && p.y >= 0.0 && p.y <= height_; }

  ObstacleMap with(const Polygon& extra) const {
    auto obs = obstacles_;
    obs.push_back(extra);
    return ObstacleMap(width_, height_, std::move(obs));
  }

 private:
  bool intersecting(std::size_t i, std::size_t j) const {
    if (!boxes_[i].overlaps(boxes_[j])) return false;
    const Polygon& a = obstacles_[i];
    const Polygon& b = obstacles_[j];
    const double eps = std::max(a.tolerance(), b.tolerance());
    for (std::size_t e = 0; e < a.size(); ++e)
      for (std::size_t f = 0; f < b.size(); ++f)
        if (geometry::segments_touch(a.vertex(e), a.vertex(e + 1), b.vertex(f), b.vertex(f + 1), eps)) return true;
    return geometry::contains(a, b.vertex(0)) || geometry::contains(b, a.vertex(0));
  }

  double width_;
  double height_;
  std::vector<Polygon> obstacles_;
  std::vector<Box> boxes_;
};

namespace detail {

// True iff some open piece of segment ab lies strictly inside the obstacle.
inline bool crosses_interior(const Polygon& o, Point2D a, Point2D b) {
  const double eps = o.tolerance();
  const Point2D ab = b - a;
  const double len = geometry::norm(ab);
  if (len <= eps) return geometry::strictly_inside(o, a);
  std::vector<double> ts{0.0, 1.0};
  for (std::size_t i = 0; i < o.size(); ++i) {
    const Point2D c = o.vertex(i), d = o.vertex(i + 1);
    const Point2D cd = d - c;
    const double denom = geometry::cross(ab, cd);
    if (std::abs(denom) > 1e-12 * len * geometry::norm(cd)) {
      const double t = geometry::cross(c - a, cd) / denom;
      const double u = geometry::cross(c - a, ab) / denom;
      if (t > 0.0 && t < 1.0 && u >= -1e-12 && u <= 1.0 + 1e-12) ts.push_back(t);
    }
    for (Point2D q : {c, d}) {
      const double t = geometry::project_param(q, a, b);
      if (t > 0.0 && t < 1.0 && geometry::point_segment_distance(q, a, b) <= eps) ts.push_back(t);
    }
  }
  std::sort(ts.begin(), ts.end());
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    if ((ts[k + 1] - ts[k]) * len <= eps) continue;
    if (geometry::strictly_inside(o, geometry::lerp(a, b, 0.5 * (ts[k] + ts[k + 1])))) return true;
  }
  return false;
}

}  // namespace detail

// Line of sight: the segment ab meets no obstacle interior. Touching an
// obstacle boundary is clear.
inline bool los_clear(const ObstacleMap& map, Point2D a, Point2D b) {
  if (!map.inside_area(a) || !map.inside_area(b))
    throw ObstacleError(ObstacleError::Code::OutOfArea, "point outside the deployment area");
  const Box seg{std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
  for (std::size_t i = 0; i < map.obstacles().size(); ++i) {
    if (!seg.overlaps(map.box(i))) continue;
    if (detail::crosses_interior(map.obstacles()[i], a, b)) return false;
  }
  return true;
}

// Obstacle file: a header line "AREA w h" followed by polygon blocks.
inline ObstacleMap read_obstacle_map(std::istream& in) {
  using Code = ObstacleError::Code;
  std::string line;
  double w = 0, h = 0;
  bool header = false;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag >> w >> h) || tag != "AREA" || w <= 0 || h <= 0)
      throw ObstacleError(Code::Parse, "expected header \"AREA w h\"");
    header = true;
    break;
  }
  if (!header) throw ObstacleError(Code::Parse, "missing AREA header");
  std::vector<Polygon> obs;
  try {
    obs = geometry::read_polygons(in);
  } catch (const geometry::GeometryError& e) {
    throw ObstacleError(Code::Parse, e.what());
  }
  return ObstacleMap(w, h, std::move(obs));
}

inline void write_obstacle_map(std::ostream& os, const ObstacleMap& map) {
  os << "AREA " << map.width() << ' ' << map.height() << '\n';
  for (const auto& o : map.obstacles()) {
    os << '\n';
    geometry::write_polygon(os, o);
  }
}

// Disjoint axis-aligned rectangular obstacles (buildings, walls) with sides
// drawn from [min_side, max_side], kept `margin` apart.
template <class Rng>
ObstacleMap random_rect_obstacles(Rng& rng, std::size_t count, double width, double height, double min_side,
                                  double max_side, double margin = 1.0) {
  std::uniform_real_distribution<double> side(min_side, max_side);
  std::vector<Polygon> obs;
  std::vector<Box> boxes;
  for (std::size_t attempt = 0; obs.size() < count && attempt < 1000 * (count + 1); ++attempt) {
    const double w = side(rng), h = side(rng);
    std::uniform_real_distribution<double> xs(0.0, width - w), ys(0.0, height - h);
    const double x = xs(rng), y = ys(rng);
    const Box b{x, y, x + w, y + h};
    const Box padded{b.xmin - margin, b.ymin - margin, b.xmax + margin, b.ymax + margin};
    if (std::any_of(boxes.begin(), boxes.end(), [&](const Box& o) { return o.overlaps(padded); })) continue;
    boxes.push_back(b);
    obs.push_back(geometry::polygon_new({{x, y}, {x, y + h}, {x + w, y + h}, {x + w, y}}));
  }
  return ObstacleMap(width, height, std::move(obs));
}

// Thin axis-aligned walls of length [min_len, max_len], horizontal or
// vertical with equal probability, kept `margin` apart.
template <class Rng>
ObstacleMap random_wall_obstacles(Rng& rng, std::size_t count, double width, double height, double min_len,
                                  double max_len, double thickness, double margin = 1.0) {
  std::uniform_real_distribution<double> len(min_len, max_len);
  std::bernoulli_distribution vertical(0.5);
  std::vector<Polygon> obs;
  std::vector<Box> boxes;
  for (std::size_t attempt = 0; obs.size() < count && attempt < 1000 * (count + 1); ++attempt) {
    const double l = len(rng);
    const bool v = vertical(rng);
    const double w = v ? thickness : l, h = v ? l : thickness;
    if (w >= width || h >= height) continue;
    std::uniform_real_distribution<double> xs(0.0, width - w), ys(0.0, height - h);
    const double x = xs(rng), y = ys(rng);
    const Box b{x, y, x + w, y + h};
    const Box padded{b.xmin - margin, b.ymin - margin, b.xmax + margin, b.ymax + margin};
    if (std::any_of(boxes.begin(), boxes.end(), [&](const Box& o) { return o.overlaps(padded); })) continue;
    boxes.push_back(b);
    obs.push_back(geometry::polygon_new({{x, y}, {x, y + h}, {x + w, y + h}, {x + w, y}}));
  }
  return ObstacleMap(width, height, std::move(obs));
}

}  // namespace oodt::obstacle
