#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "oodt/geometry/polygon.hpp"
#include "oodt/geometry/reflex_rays.hpp"
#include "oodt/geometry/visibility.hpp"

namespace oodt::geometry {

enum class Actor { Searcher, Flashlight };
enum class InstructionKind { MoveAlongBoundary, Jump, Stay };

// Searcher moves run counterclockwise, flashlight moves clockwise; a
// flashlight jump goes backward and gives up the skipped chain.
struct SearchInstruction {
  Actor actor = Actor::Flashlight;
  InstructionKind kind = InstructionKind::MoveAlongBoundary;
  BoundaryPoint from;
  BoundaryPoint to;
};

struct SearchSchedule {
  BoundaryPoint start;
  std::vector<SearchInstruction> instructions;
  double searcher_distance = 0.0;
  std::size_t m = 0;
};

namespace detail {

// Boundary positions where visibility from q can change: vertices and the
// hits of rays from q through each vertex.
inline std::vector<double> critical_positions(const Polygon& p, Point2D q) {
  const double D = p.perimeter();
  const double eps = p.tolerance();
  std::vector<double> out;
  for (std::size_t v = 0; v < p.size(); ++v) out.push_back(p.vertex_position(v));
  for (std::size_t v = 0; v < p.size(); ++v) {
    const Point2D dir = p.vertex(v) - q;
    if (norm(dir) <= eps) continue;
    for (std::size_t e = 0; e < p.size(); ++e) {
      const Point2D c = p.vertex(e);
      const Point2D cd = p.vertex(e + 1) - c;
      const double denom = cross(dir, cd);
      if (std::abs(denom) <= kRelativeTolerance * norm(dir) * norm(cd)) continue;
      const double t = cross(c - q, cd) / denom;
      const double u = cross(c - q, dir) / denom;
      if (t <= 0.0 || u <= 0.0 || u >= 1.0) continue;
      out.push_back(p.vertex_position(e) + u * p.edge_length(e));
    }
  }
  for (double& s : out) s = std::fmod(s, D);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [eps](double a, double b) { return b - a <= eps; }), out.end());
  return out;
}

// Critical positions strictly between a and b (unwrapped, a < b), ascending.
inline std::vector<double> criticals_between(const std::vector<double>& crit, double D, double a, double b,
                                             double eps) {
  std::vector<double> out;
  const double base = std::floor(a / D) * D;
  for (double k = base; k < b + D; k += D) {
    for (double c : crit) {
      const double s = k + c;
      if (s > a + eps && s < b - eps) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Largest t in [from, limit] with every boundary point of [from, t] visible
// from q. Positions are unwrapped arclengths, `from` assumed visible.
inline double visible_run_cw(const Polygon& p, Point2D q, double from, double limit) {
  const double D = p.perimeter();
  const double eps = p.tolerance();
  if (limit <= from) return from;
  const auto crit = detail::critical_positions(p, q);
  auto pts = detail::criticals_between(crit, D, from, limit, eps);
  pts.push_back(limit);
  double prev = from;
  for (double c : pts) {
    if (!visible_unchecked(p, q, p.point_at(0.5 * (prev + c)))) return prev;
    if (!visible_unchecked(p, q, p.point_at(c))) return prev;
    prev = c;
  }
  return limit;
}

// Smallest t in [limit, from] with every point of [t, from] visible from q.
inline double visible_run_ccw(const Polygon& p, Point2D q, double from, double limit) {
  const double D = p.perimeter();
  const double eps = p.tolerance();
  if (limit >= from) return from;
  const auto crit = detail::critical_positions(p, q);
  auto pts = detail::criticals_between(crit, D, limit, from, eps);
  std::reverse(pts.begin(), pts.end());
  pts.push_back(limit);
  double prev = from;
  for (double c : pts) {
    if (!visible_unchecked(p, q, p.point_at(0.5 * (prev + c)))) return prev;
    if (!visible_unchecked(p, q, p.point_at(c))) return prev;
    prev = c;
  }
  return limit;
}

namespace detail {

// Real roots of a t^2 + b t + c.
inline void quadratic_roots(double a, double b, double c, std::vector<double>& out) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale == 0.0) return;
  if (std::abs(a) <= 1e-12 * scale) {
    if (std::abs(b) > 1e-12 * scale) out.push_back(-c / b);
    return;
  }
  const double disc = b * b - 4 * a * c;
  if (disc < 0) return;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(sq, b));
  out.push_back(q / a);
  if (q != 0.0) out.push_back(c / q);
}

}  // namespace detail

// True iff the searcher moving linearly (in arclength) from y0 to y1 while
// the flashlight moves from x0 to x1 keeps the two mutually visible.
inline bool joint_move_clear(const Polygon& p, double x0, double y0, double x1, double y1) {
  const double D = p.perimeter();
  const double eps = p.tolerance();
  std::vector<double> ts{0.0, 1.0};
  auto vertex_crossings = [&](double a, double b) {
    if (std::abs(b - a) <= eps) return;
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double base = std::floor(lo / D) * D;
    for (double k = base; k <= hi; k += D)
      for (std::size_t v = 0; v < p.size(); ++v) {
        const double s = k + p.vertex_position(v);
        if (s > lo && s < hi) ts.push_back((s - a) / (b - a));
      }
  };
  vertex_crossings(x0, x1);
  vertex_crossings(y0, y1);
  std::sort(ts.begin(), ts.end());
  std::vector<double> events = ts;
  auto at = [&](double t) {
    return std::pair{p.point_at(y0 + t * (y1 - y0)), p.point_at(x0 + t * (x1 - x0))};
  };
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    const double ta = ts[k], tb = ts[k + 1];
    if (tb - ta <= 1e-12) continue;
    // Within the piece both ends move linearly in the plane.
    const auto [sa, fa] = at(ta);
    const auto [sb, fb] = at(tb);
    const Point2D sv = (sb - sa) * (1.0 / (tb - ta));
    const Point2D fv = (fb - fa) * (1.0 / (tb - ta));
    for (std::size_t v = 0; v < p.size(); ++v) {
      // cross(f - s, w - s) with s = sa + u sv, f = fa + u fv, u = t - ta.
      const Point2D w = p.vertex(v);
      const Point2D d0 = fa - sa, d1 = fv - sv;
      const Point2D e0 = w - sa, e1 = sv * -1.0;
      const double a = cross(d1, e1);
      const double b = cross(d0, e1) + cross(d1, e0);
      const double c = cross(d0, e0);
      std::vector<double> r;
      detail::quadratic_roots(a, b, c, r);
      for (double u : r)
        if (u > 0.0 && u < tb - ta) events.push_back(ta + u);
    }
  }
  std::sort(events.begin(), events.end());
  for (std::size_t k = 0; k < events.size(); ++k) {
    const auto [s, f] = at(events[k]);
    if (!visible_unchecked(p, s, f)) return false;
    if (k + 1 < events.size() && events[k + 1] - events[k] > 1e-12) {
      const auto [sm, fm] = at(0.5 * (events[k] + events[k + 1]));
      if (!visible_unchecked(p, sm, fm)) return false;
    }
  }
  return true;
}

// Replays the schedule in V-space: x is the flashlight end, y the searcher,
// and the chain clockwise from y to x is clear. Instructions come in
// concurrent pairs (searcher, flashlight). A flashlight jump goes backward
// and gives up part of the cleared chain; paired with a searcher move it is
// a continuous backward slide. Every move keeps the searcher and the
// flashlight end mutually visible.
inline bool schedule_verify(const Polygon& p, const SearchSchedule& s) {
  const double D = p.perimeter();
  const double tol = 1e-7 * std::max(D, 1.0);
  auto bad_position = [D](double a) { return !std::isfinite(a) || a < 0.0 || a > D; };
  if (bad_position(s.start.arclength))
    throw GeometryError(GeometryError::Code::MalformedSchedule, "start outside boundary parameter range");
  for (const auto& ins : s.instructions)
    if (bad_position(ins.from.arclength) || bad_position(ins.to.arclength))
      throw GeometryError(GeometryError::Code::MalformedSchedule, "instruction outside boundary parameter range");
  if (s.instructions.size() % 2 != 0) return false;
  double x = s.start.arclength;
  double y = s.start.arclength;
  double walked = 0.0;
  auto same = [&](double a, double b) {
    const double d = cw_distance(a, b, D);
    return d <= tol || D - d <= tol;
  };
  for (std::size_t k = 0; k < s.instructions.size(); k += 2) {
    const auto& si = s.instructions[k];
    const auto& fi = s.instructions[k + 1];
    if (si.actor != Actor::Searcher || fi.actor != Actor::Flashlight) return false;
    if (!same(si.from.arclength, y) || !same(fi.from.arclength, x)) return false;
    if (si.kind == InstructionKind::Jump) return false;
    const double ls = si.kind == InstructionKind::Stay ? 0.0 : cw_distance(si.to.arclength, si.from.arclength, D);
    if (si.kind == InstructionKind::Stay && !same(si.from.arclength, si.to.arclength)) return false;
    if (fi.kind == InstructionKind::Jump) {
      const double nx = x - cw_distance(fi.to.arclength, fi.from.arclength, D);
      if (nx < y - ls - tol) return false;
      if (si.kind == InstructionKind::Stay) {
        if (!visible_unchecked(p, p.point_at(y), p.point_at(nx))) return false;
      } else if (!joint_move_clear(p, x, y, nx, y - ls)) {
        return false;
      }
      x = nx;
      y -= ls;
      walked += ls;
      continue;
    }
    if (fi.kind == InstructionKind::Stay && !same(fi.from.arclength, fi.to.arclength)) return false;
    const double lf = fi.kind == InstructionKind::Stay ? 0.0 : cw_distance(fi.from.arclength, fi.to.arclength, D);
    if (x + lf - (y - ls) > D + tol) return false;
    if (!joint_move_clear(p, x, y, x + lf, y - ls)) return false;
    x += lf;
    y -= ls;
    walked += ls;
  }
  if (std::abs(x - y - D) > tol) return false;
  if (std::abs(walked - s.searcher_distance) > tol) return false;
  if (s.m != s.instructions.size()) return false;
  const std::size_t n = p.size();
  return s.searcher_distance < 2.0 * D && s.m < n * n;
}

// One line per instruction: "S|F MOVE|JUMP|STAY x0 y0 -> x1 y1".
inline void dump_schedule(std::ostream& os, const Polygon& p, const SearchSchedule& s) {
  for (const auto& ins : s.instructions) {
    const Point2D a = p.point_at(ins.from.arclength);
    const Point2D b = p.point_at(ins.to.arclength);
    const char* kind = ins.kind == InstructionKind::MoveAlongBoundary ? "MOVE"
                       : ins.kind == InstructionKind::Jump           ? "JUMP"
                                                                      : "STAY";
    os << (ins.actor == Actor::Searcher ? 'S' : 'F') << ' ' << kind << ' ' << a.x << ' ' << a.y << " -> " << b.x
       << ' ' << b.y << '\n';
  }
}

}  // namespace oodt::geometry
