#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "oodt/geometry/search_schedule.hpp"
#include "oodt/geometry/searchability.hpp"
#include "oodt/geometry/visibility_grid.hpp"

namespace oodt::geometry {

namespace detail {

struct PathPoint {
  double x = 0.0;     // flashlight, unwrapped
  double y = 0.0;     // searcher, unwrapped
  bool jump = false;  // reached from the previous point by a flashlight jump
};

// Cheapest V-space path (by searcher travel) from the start vertex on the
// start line to the goal line. The searcher only moves counterclockwise; the
// flashlight moves either way and may jump back over a blocked stretch.
inline std::optional<std::vector<PathPoint>> plan_path(const Polygon& p, std::size_t start_vertex,
                                                       std::size_t resolution) {
  const VisibilityGrid g = visibility_grid(p, resolution);
  const std::size_t K = g.sample_count();
  const double D = p.perimeter();
  const auto& smp = g.samples();
  auto gap = [&](std::size_t i) { return (i + 1 < K ? smp[i + 1] : D) - smp[i]; };
  const std::size_t i0 = start_vertex * (resolution + 1);
  const std::size_t W = K + 1;
  // Integer costs in units of 1e-12 D keep tie-breaking independent of scale.
  auto units = [D](double len) { return static_cast<std::int64_t>(std::llround(len / D * 1e12)); };
  const std::int64_t step_cost = units(1e-6 * D);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::vector<std::int64_t> dist(K * W, std::numeric_limits<std::int64_t>::max());
  std::vector<std::size_t> parent(K * W, kNone);
  std::vector<char> by_jump(K * W, 0);
  using Item = std::pair<std::int64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[i0 * W] = 0;
  pq.emplace(0, i0 * W);
  std::size_t goal = kNone;
  auto relax = [&](std::size_t from, std::size_t i, std::size_t k, std::int64_t c, bool jump) {
    if (k > K || !g.free(i, k)) return;
    const std::size_t id = i * W + k;
    if (c < dist[id]) {
      dist[id] = c;
      parent[id] = from;
      by_jump[id] = jump;
      pq.emplace(c, id);
    }
  };
  while (!pq.empty()) {
    const auto [d, id] = pq.top();
    pq.pop();
    if (d > dist[id]) continue;
    const std::size_t i = id / W, k = id % W;
    if (k == K) {
      goal = id;
      break;
    }
    const std::size_t j = (i + K - k) % K;
    const std::int64_t s_step = units(gap((j + K - 1) % K));
    const std::size_t inext = (i + 1) % K;
    relax(id, inext, k + 1, d + step_cost, false);
    relax(id, i, k + 1, d + s_step + step_cost, false);
    relax(id, inext, k + 2, d + s_step + step_cost, false);
    if (k >= 1) {
      const std::size_t iprev = (i + K - 1) % K;
      relax(id, iprev, k - 1, d + step_cost, false);
      relax(id, iprev, k, d + s_step + step_cost, false);
    }
    for (std::size_t back = 2; back <= k; ++back) {
      const std::size_t ni = (i + K - back) % K;
      const std::size_t nk = k - back;
      if (!g.free(ni, nk) || g.free((ni + 1) % K, nk + 1)) continue;
      relax(id, ni, nk, d + step_cost, true);
    }
  }
  if (goal == kNone) return std::nullopt;

  std::vector<std::size_t> ids;
  for (std::size_t id = goal; id != i0 * W; id = parent[id]) ids.push_back(id);
  ids.push_back(i0 * W);
  std::reverse(ids.begin(), ids.end());
  std::vector<PathPoint> out;
  double x = smp[i0], y = smp[i0];
  out.push_back({x, y, false});
  for (std::size_t n = 1; n < ids.size(); ++n) {
    const std::size_t pi = ids[n - 1] / W, pk = ids[n - 1] % W;
    const std::size_t ci = ids[n] / W, ck = ids[n] % W;
    const std::size_t pj = (pi + K - pk) % K, cj = (ci + K - ck) % K;
    const bool backward = by_jump[ids[n]] || ci == (pi + K - 1) % K;
    if (backward) x -= cw_distance(smp[ci], smp[pi], D);
    else if (ci != pi) x += cw_distance(smp[pi], smp[ci], D);
    if (cj != pj) y -= cw_distance(smp[cj], smp[pj], D);
    if (ck == K) y = x - D;
    out.push_back({x, y, static_cast<bool>(by_jump[ids[n]])});
  }
  return out;
}

class ScheduleBuilder {
 public:
  explicit ScheduleBuilder(const Polygon& p) : p_(p) {}

  // A backward flashlight motion is recorded as a jump; concurrent with a
  // searcher move it is a continuous slide.
  void step(double x0, double y0, double x1, double y1) {
    const double eps = p_.tolerance();
    push(Actor::Searcher, std::abs(y1 - y0) <= eps ? InstructionKind::Stay : InstructionKind::MoveAlongBoundary, y0,
         y1);
    const InstructionKind fk = x1 < x0 - eps              ? InstructionKind::Jump
                               : std::abs(x1 - x0) <= eps ? InstructionKind::Stay
                                                          : InstructionKind::MoveAlongBoundary;
    push(Actor::Flashlight, fk, x0, x1);
    walked_ += y0 - y1;
  }

  SearchSchedule finish(double start) {
    SearchSchedule s;
    s.start.arclength = p_.wrap(start);
    s.instructions = std::move(ins_);
    s.searcher_distance = walked_;
    s.m = s.instructions.size();
    return s;
  }

 private:
  void push(Actor who, InstructionKind kind, double a, double b) {
    SearchInstruction i;
    i.actor = who;
    i.kind = kind;
    i.from.arclength = p_.wrap(a);
    i.to.arclength = kind == InstructionKind::Stay ? p_.wrap(a) : p_.wrap(b);
    ins_.push_back(i);
  }

  const Polygon& p_;
  std::vector<SearchInstruction> ins_;
  double walked_ = 0.0;
};

// Merges the sampled path into as few exactly verified linear steps as
// possible.
inline std::optional<SearchSchedule> compress_path(const Polygon& p, const std::vector<PathPoint>& path) {
  const double D = p.perimeter();
  const double half = (0.5 - 1e-9) * D;
  ScheduleBuilder out(p);
  std::size_t a = 0;
  while (a + 1 < path.size()) {
    const PathPoint& pa = path[a];
    if (path[a + 1].jump) {
      std::size_t b = a + 1;
      while (b + 1 < path.size() && path[b + 1].jump) ++b;
      out.step(pa.x, pa.y, path[b].x, pa.y);
      a = b;
      continue;
    }
    auto fits = [&](std::size_t b) {
      const PathPoint& pb = path[b];
      return std::abs(pb.x - pa.x) < half && pa.y - pb.y < half && pb.x - pb.y <= D &&
             joint_move_clear(p, pa.x, pa.y, pb.x, pb.y);
    };
    if (!fits(a + 1)) {
      // Pinch points: go around the corner one actor at a time.
      const PathPoint& pb = path[a + 1];
      if (joint_move_clear(p, pa.x, pa.y, pa.x, pb.y) && joint_move_clear(p, pa.x, pb.y, pb.x, pb.y)) {
        out.step(pa.x, pa.y, pa.x, pb.y);
        out.step(pa.x, pb.y, pb.x, pb.y);
      } else if (joint_move_clear(p, pa.x, pa.y, pb.x, pa.y) && joint_move_clear(p, pb.x, pa.y, pb.x, pb.y)) {
        out.step(pa.x, pa.y, pb.x, pa.y);
        out.step(pb.x, pa.y, pb.x, pb.y);
      } else {
        return std::nullopt;
      }
      ++a;
      continue;
    }
    std::size_t b = a + 1;
    while (b + 1 < path.size() && !path[b + 1].jump && fits(b + 1)) ++b;
    out.step(pa.x, pa.y, path[b].x, path[b].y);
    a = b;
  }
  return out.finish(path.front().x);
}

}  // namespace detail

inline SearchSchedule bsa_search(const Polygon& p) {
  if (!is_boundary_1_searchable(p))
    throw GeometryError(GeometryError::Code::NotSearchable, "polygon is not boundary 1-searchable");
  const double D = p.perimeter();
  if (p.is_convex()) {
    detail::ScheduleBuilder out(p);
    out.step(0.0, 0.0, 0.5 * D, 0.0);
    out.step(0.5 * D, 0.0, D, 0.0);
    return out.finish(0.0);
  }
  const auto restricted = restricted_reflex_vertices(p);
  std::vector<std::size_t> starts;
  for (std::size_t r : p.reflex_vertices())
    if (!restricted.count(r)) starts.push_back(r);
  if (starts.empty())
    throw GeometryError(GeometryError::Code::NoUnrestrictedStart, "every reflex vertex is restricted");
  for (std::size_t resolution : {16u, 32u, 64u}) {
    for (std::size_t r : starts) {
      const auto path = detail::plan_path(p, r, resolution);
      if (!path) continue;
      if (auto s = detail::compress_path(p, *path); s && schedule_verify(p, *s)) return *s;
    }
  }
  throw GeometryError(GeometryError::Code::NotSearchable, "no schedule found from any unrestricted start");
}

}  // namespace oodt::geometry
