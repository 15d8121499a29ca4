#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace oodt::geometry {

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2D operator*(Point2D a, double k) { return {a.x * k, a.y * k}; }
  friend Point2D operator*(double k, Point2D a) { return {a.x * k, a.y * k}; }
  friend bool operator==(Point2D a, Point2D b) = default;
};

inline double dot(Point2D a, Point2D b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2D a, Point2D b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2D a) { return std::hypot(a.x, a.y); }
inline double distance(Point2D a, Point2D b) { return norm(b - a); }

// > 0 when c lies to the left of the directed line a->b.
inline double orient(Point2D a, Point2D b, Point2D c) { return cross(b - a, c - a); }

inline Point2D lerp(Point2D a, Point2D b, double t) { return a + (b - a) * t; }

inline bool is_finite(Point2D p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline double point_segment_distance(Point2D p, Point2D a, Point2D b) {
  const Point2D ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

// Parameter of the projection of p onto the line a + t(b - a).
inline double project_param(Point2D p, Point2D a, Point2D b) {
  const Point2D ab = b - a;
  const double len2 = dot(ab, ab);
  return len2 == 0.0 ? 0.0 : dot(p - a, ab) / len2;
}

class GeometryError : public std::runtime_error {
 public:
  enum class Code {
    SelfIntersecting,
    DuplicateVertex,
    CollinearDegenerate,
    TooFewVertices,
    NonFinite,
    PointOutsidePolygon,
    NotReflex,
    RayGrazing,
    NotLRVisible,
    NotSearchable,
    NoUnrestrictedStart,
    MalformedSchedule,
    Parse,
  };

  GeometryError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Code code() const { return code_; }

 private:
  Code code_;
};

}  // namespace oodt::geometry
