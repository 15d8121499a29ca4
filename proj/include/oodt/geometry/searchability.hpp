#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "oodt/geometry/polygon.hpp"
#include "oodt/geometry/reflex_rays.hpp"
#include "oodt/geometry/visibility.hpp"

namespace oodt::geometry {

// ---------------------------------------------------------------------------
// LR-visibility.
//
// Every reflex vertex r has two components: the backward chain running
// clockwise from r to Back(r) and the forward chain running clockwise from
// Forw(r) to r. A split (u, v) of the boundary makes the two chains weakly
// visible from each other iff every component contains u or v.

struct CwInterval {
  double start = 0.0;  // clockwise from start ...
  double length = 0.0; // ... for this many units (open interval)
};

inline std::vector<CwInterval> pocket_chains(const Polygon& p) {
  const double D = p.perimeter();
  std::vector<CwInterval> out;
  for (const ReflexRays& rr : all_reflex_rays(p)) {
    const double pos = p.vertex_position(rr.vertex_index);
    out.push_back({pos, cw_distance(pos, rr.back.arclength, D)});
    out.push_back({rr.forw.arclength, cw_distance(rr.forw.arclength, pos, D)});
  }
  return out;
}

namespace detail {

inline bool interval_holds(const CwInterval& iv, double x, double D, double eps) {
  const double off = cw_distance(iv.start, x, D);
  return off > eps && off < iv.length - eps;
}

// Candidate split points: midpoints between consecutive pocket endpoints.
inline std::vector<double> split_candidates(const std::vector<CwInterval>& pockets, double D) {
  std::vector<double> ends;
  for (const auto& iv : pockets) {
    ends.push_back(std::fmod(iv.start, D));
    ends.push_back(std::fmod(iv.start + iv.length, D));
  }
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end(),
                         [D](double a, double b) { return std::abs(a - b) <= 1e-12 * D; }),
             ends.end());
  std::vector<double> mids;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const double a = ends[i];
    const double b = (i + 1 < ends.size()) ? ends[i + 1] : ends[0] + D;
    mids.push_back(std::fmod(0.5 * (a + b), D));
  }
  return mids;
}

}  // namespace detail

struct LRSplit {
  bool found = false;
  double u = 0.0;
  double v = 0.0;
};

inline LRSplit lr_split(const Polygon& p) {
  const double D = p.perimeter();
  const double eps = p.tolerance();
  const auto pockets = pocket_chains(p);
  if (pockets.empty()) return {true, 0.0, 0.5 * D};
  const auto cand = detail::split_candidates(pockets, D);
  for (std::size_t i = 0; i < cand.size(); ++i) {
    for (std::size_t j = i; j < cand.size(); ++j) {
      bool ok = true;
      for (const auto& iv : pockets) {
        if (!detail::interval_holds(iv, cand[i], D, eps) && !detail::interval_holds(iv, cand[j], D, eps)) {
          ok = false;
          break;
        }
      }
      if (ok) return {true, cand[i], cand[j]};
    }
  }
  return {};
}

inline bool lr_visible(const Polygon& p) { return lr_split(p).found; }

// ---------------------------------------------------------------------------
// Skeleton V-diagram.
//
// V-space coordinates: x is the flashlight end, y the searcher, with
// x - D <= y <= x. Reflex r at position p has SE bones attached to the start
// line at (p, p) and NW bones attached to the goal line at (p + D, p).

enum class BoneKind { South, East, North, West };

struct Bone {
  BoneKind kind;
  std::size_t vertex = 0;
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

struct SkeletonDiagram {
  double perimeter = 0.0;
  std::vector<Bone> bones;
};

namespace detail {

struct ReflexFrame {
  std::size_t vertex = 0;
  double pos = 0.0;   // in [0, D)
  double back = 0.0;  // unwrapped into (pos - D, pos)
  double forw = 0.0;  // unwrapped into (pos, pos + D)
};

inline std::vector<ReflexFrame> reflex_frames(const Polygon& p) {
  const double D = p.perimeter();
  std::vector<ReflexFrame> out;
  for (const ReflexRays& rr : all_reflex_rays(p)) {
    ReflexFrame f;
    f.vertex = rr.vertex_index;
    f.pos = p.vertex_position(rr.vertex_index);
    f.back = f.pos - cw_distance(rr.back.arclength, f.pos, D);
    f.forw = f.pos + cw_distance(f.pos, rr.forw.arclength, D);
    out.push_back(f);
  }
  return out;
}

}  // namespace detail

inline SkeletonDiagram skeleton(const Polygon& p) {
  const double D = p.perimeter();
  SkeletonDiagram sk;
  sk.perimeter = D;
  for (const auto& f : detail::reflex_frames(p)) {
    sk.bones.push_back({BoneKind::South, f.vertex, f.pos, f.pos, f.pos, f.back});
    sk.bones.push_back({BoneKind::East, f.vertex, f.pos, f.pos, f.forw, f.pos});
    sk.bones.push_back({BoneKind::North, f.vertex, f.pos + D, f.pos, f.pos + D, f.forw});
    sk.bones.push_back({BoneKind::West, f.vertex, f.pos + D, f.pos, f.back + D, f.pos});
  }
  return sk;
}

// ---------------------------------------------------------------------------
// Bi-tangents.

enum class BiTangentKind { OneSide, DoubleLeft, DoubleRight };

struct BiTangent {
  BiTangentKind kind;
  // Reflex vertex indices. For OneSide, first precedes second clockwise and
  // the inner chain is the clockwise chain from first to second.
  std::size_t first = 0;
  std::size_t second = 0;
  CwInterval inner_chain;
  bool mutually_visible = true;
};

namespace detail {

struct Relations {
  std::vector<BiTangent> all;  // every bone crossing, visible or not
};

inline Relations relations(const Polygon& p) {
  const double D = p.perimeter();
  const double eps = p.tolerance();
  const auto frames = reflex_frames(p);
  Relations rel;
  auto vis = [&](std::size_t a, std::size_t b) {
    return visible_unchecked(p, p.vertex(a), p.vertex(b));
  };
  for (std::size_t i = 0; i < frames.size(); ++i) {
    for (std::size_t j = 0; j < frames.size(); ++j) {
      if (i == j) continue;
      const auto& r = frames[i];
      const auto& l = frames[j];
      const double bl = std::fmod(l.back + 2 * D, D);
      const double fr = std::fmod(r.forw, D);
      // sl(l) crosses el(r): r in l's backward chain, l in r's forward chain.
      if (in_cw_open(r.pos, bl, l.pos, D, eps) && in_cw_open(l.pos, r.pos, fr, D, eps)) {
        rel.all.push_back({BiTangentKind::OneSide, r.vertex, l.vertex,
                           {r.pos, cw_distance(r.pos, l.pos, D)}, vis(r.vertex, l.vertex)});
      }
      if (i < j) {
        const double br = std::fmod(r.back + 2 * D, D);
        const double fl = std::fmod(l.forw, D);
        // sl x wl: each lies in the other's backward chain.
        if (in_cw_open(r.pos, bl, l.pos, D, eps) && in_cw_open(l.pos, br, r.pos, D, eps)) {
          rel.all.push_back({BiTangentKind::DoubleLeft, r.vertex, l.vertex,
                             {r.pos, cw_distance(r.pos, l.pos, D)}, vis(r.vertex, l.vertex)});
        }
        // el x nl: each lies in the other's forward chain.
        if (in_cw_open(l.pos, r.pos, fr, D, eps) && in_cw_open(r.pos, l.pos, fl, D, eps)) {
          rel.all.push_back({BiTangentKind::DoubleRight, r.vertex, l.vertex,
                             {r.pos, cw_distance(r.pos, l.pos, D)}, vis(r.vertex, l.vertex)});
        }
      }
    }
  }
  return rel;
}

}  // namespace detail

// All bi-tangents between mutually visible reflex vertices.
inline std::vector<BiTangent> bitangents(const Polygon& p) {
  if (!lr_visible(p)) throw GeometryError(GeometryError::Code::NotLRVisible, "polygon is not LR-visible");
  std::vector<BiTangent> out;
  for (auto& b : detail::relations(p).all)
    if (b.mutually_visible) out.push_back(b);
  return out;
}

// Reflex vertices strictly inside the inner chain of a one-side bi-tangent.
inline std::set<std::size_t> restricted_reflex_vertices(const Polygon& p) {
  const double D = p.perimeter();
  const double eps = p.tolerance();
  std::set<std::size_t> out;
  const auto rel = detail::relations(p);
  for (std::size_t w : p.reflex_vertices()) {
    const double pw = p.vertex_position(w);
    for (const auto& b : rel.all) {
      if (b.kind != BiTangentKind::OneSide) continue;
      const double off = cw_distance(b.inner_chain.start, pw, D);
      if (off > eps && off < b.inner_chain.length - eps) {
        out.insert(w);
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Obstruction conditions.

struct SearchConditions {
  bool c1 = false;
  bool c2 = false;
  bool c3 = false;
  bool c4 = false;
  bool any() const { return c1 || c2 || c3 || c4; }
};

namespace detail {

enum EdgeFamily : unsigned { kOneSide = 1u, kLeft = 2u, kRight = 4u };

struct WallEdge {
  std::size_t a = 0;  // node index: 2*k for SE of reflex k, 2*k+1 for NW
  std::size_t b = 0;
  long shift = 0;     // copy of b (in units of D) touched by copy 0 of a
  unsigned family = 0;
};

inline std::vector<WallEdge> wall_edges(const Polygon& p) {
  const double D = p.perimeter();
  const double eps = p.tolerance();
  const auto frames = reflex_frames(p);
  struct Seg { std::size_t node; bool vertical; double c, lo, hi; BoneKind kind; };
  std::vector<Seg> segs;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const auto& f = frames[k];
    segs.push_back({2 * k, true, f.pos, f.back, f.pos, BoneKind::South});
    segs.push_back({2 * k, false, f.pos, f.pos, f.forw, BoneKind::East});
    segs.push_back({2 * k + 1, true, f.pos + D, f.pos, f.forw, BoneKind::North});
    segs.push_back({2 * k + 1, false, f.pos, f.back + D, f.pos + D, BoneKind::West});
  }
  std::vector<WallEdge> edges;
  for (const auto& v : segs) {
    if (!v.vertical) continue;
    for (const auto& h : segs) {
      if (h.vertical || h.node == v.node) continue;
      unsigned fam = 0;
      if (v.kind == BoneKind::South && h.kind == BoneKind::East) fam = kOneSide;
      else if (v.kind == BoneKind::North && h.kind == BoneKind::West) fam = kOneSide;
      else if (v.kind == BoneKind::South && h.kind == BoneKind::West) fam = kLeft;
      else if (v.kind == BoneKind::North && h.kind == BoneKind::East) fam = kRight;
      for (long k = -3; k <= 3; ++k) {
        const double sx = k * D;
        if (v.c > h.lo + sx + eps && v.c < h.hi + sx - eps && h.c + sx > v.lo + eps && h.c + sx < v.hi - eps)
          edges.push_back({v.node, h.node, k, fam});
      }
    }
  }
  return edges;
}

// True if the edges restricted to `families` contain a cycle whose copies
// drift by a nonzero multiple of D, i.e. a wall separating start from goal.
inline bool has_periodic_wall(std::size_t nodes, const std::vector<WallEdge>& edges, unsigned families) {
  std::vector<std::size_t> parent(nodes);
  std::vector<long> offset(nodes, 0);  // copy index of node relative to parent
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    long acc = 0;
    std::size_t r = x;
    while (parent[r] != r) { acc += offset[r]; r = parent[r]; }
    // path compression
    long rem = acc;
    std::size_t y = x;
    while (parent[y] != y) {
      const std::size_t next = parent[y];
      const long oy = offset[y];
      parent[y] = r;
      offset[y] = rem;
      rem -= oy;
      y = next;
    }
    return std::pair<std::size_t, long>{r, acc};
  };
  for (const auto& e : edges) {
    if (!(e.family & families)) continue;
    auto [ra, oa] = find(e.a);
    auto [rb, ob] = find(e.b);
    // position(copy s of b) = position(copy 0 of a): ob + shift == oa (relative to roots)
    if (ra == rb) {
      if (oa != ob + e.shift) return true;
    } else {
      parent[rb] = ra;
      offset[rb] = oa - ob - e.shift;
    }
  }
  return false;
}

}  // namespace detail

// True iff every boundary point lies in the inner chain of a one-side
// bi-tangent.
inline bool one_side_chains_cover(const Polygon& p) {
  const double D = p.perimeter();
  const double eps = p.tolerance();
  std::vector<CwInterval> chains;
  for (const auto& b : detail::relations(p).all)
    if (b.kind == BiTangentKind::OneSide) chains.push_back(b.inner_chain);
  if (chains.empty()) return false;
  // Sweep: the union of open arcs covers the circle iff no gap point exists.
  std::vector<double> probes;
  for (const auto& c : chains) {
    probes.push_back(c.start);
    probes.push_back(std::fmod(c.start + c.length, D));
  }
  for (double q : probes) {
    bool covered = false;
    for (const auto& c : chains) {
      const double off = cw_distance(c.start, q, D);
      if (off > eps && off < c.length - eps) { covered = true; break; }
    }
    if (!covered) return false;
  }
  return true;
}

namespace detail {

// A one-side bi-tangent with a restricted reflex w strictly inside its inner
// chain, where w is double left with the endpoint contributing its backward
// chain or double right with the endpoint contributing its forward chain.
inline bool has_c4_witness(const Polygon& p, const Relations& rel) {
  const double D = p.perimeter();
  const double eps = p.tolerance();
  auto related = [&](BiTangentKind kind, std::size_t a, std::size_t b) {
    for (const auto& t : rel.all)
      if (t.kind == kind && ((t.first == a && t.second == b) || (t.first == b && t.second == a))) return true;
    return false;
  };
  for (const auto& os : rel.all) {
    if (os.kind != BiTangentKind::OneSide) continue;
    for (std::size_t w : p.reflex_vertices()) {
      if (w == os.first || w == os.second) continue;
      const double off = cw_distance(os.inner_chain.start, p.vertex_position(w), D);
      if (off <= eps || off >= os.inner_chain.length - eps) continue;
      if (related(BiTangentKind::DoubleLeft, w, os.second) || related(BiTangentKind::DoubleRight, w, os.first))
        return true;
    }
  }
  return false;
}

}  // namespace detail

inline SearchConditions search_conditions_unchecked(const Polygon& p) {
  using namespace detail;
  SearchConditions c;
  const std::size_t nodes = 2 * p.reflex_vertices().size();
  if (nodes == 0) return c;
  const auto edges = wall_edges(p);
  const bool os = has_periodic_wall(nodes, edges, kOneSide);
  const bool left = has_periodic_wall(nodes, edges, kLeft);
  const bool right = has_periodic_wall(nodes, edges, kRight);
  const bool mixed = has_periodic_wall(nodes, edges, kOneSide | kLeft | kRight);
  c.c1 = os;
  c.c2 = left || right;
  if (mixed && !c.c1 && !c.c2) {
    c.c4 = has_c4_witness(p, relations(p));
    c.c3 = !c.c4;
  }
  return c;
}

inline SearchConditions search_conditions(const Polygon& p) {
  if (!lr_visible(p)) throw GeometryError(GeometryError::Code::NotLRVisible, "polygon is not LR-visible");
  return search_conditions_unchecked(p);
}

inline bool is_boundary_1_searchable(const Polygon& p) {
  if (p.is_convex()) return true;
  if (!lr_visible(p)) return false;
  return !search_conditions_unchecked(p).any();
}

}  // namespace oodt::geometry
