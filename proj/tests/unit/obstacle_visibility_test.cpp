#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oodt/obstacle.hpp"
#include "polygon_fixtures.hpp"

using namespace oodt::obstacle;
using oodt::geometry::polygon_new;
using Code = ObstacleError::Code;

namespace {

template <class Fn>
Code error_code(Fn&& fn) {
  try {
    fn();
  } catch (const ObstacleError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no ObstacleError thrown";
  return Code::Parse;
}

Polygon square(double cx, double cy, double half) {
  return polygon_new({{cx - half, cy - half}, {cx - half, cy + half}, {cx + half, cy + half}, {cx + half, cy - half}});
}

std::vector<NodePosition> compass(Point2D c, double r) {
  return {{1, {c.x, c.y + r}}, {2, {c.x + r, c.y}}, {3, {c.x, c.y - r}}, {4, {c.x - r, c.y}}};
}

std::vector<NodePosition> random_neighbors(std::mt19937_64& rng, Point2D c, double range, std::size_t count,
                                           NodeId first_id = 1) {
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi), rad(0.0, range);
  std::vector<NodePosition> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double a = ang(rng), r = rad(rng);
    out.push_back({first_id + i, {c.x + r * std::cos(a), c.y + r * std::sin(a)}});
  }
  return out;
}

NeighborhoodPolygon all_neighbor_roles(const Polygon& p) {
  NeighborhoodPolygon np;
  np.center = 0;
  np.polygon = p;
  for (std::size_t i = 0; i < p.size(); ++i) np.vertex_roles.push_back({VertexRoleKind::NeighborNode, 100 + i});
  return np;
}

}  // namespace

// Line of sight.

TEST(LosClear, EmptyMap) {
  const ObstacleMap map(100, 100);
  EXPECT_TRUE(los_clear(map, {0, 0}, {100, 100}));
  EXPECT_TRUE(los_clear(map, {3, 4}, {3, 4}));
}

TEST(LosClear, SquareOnTheAxisBlocks) {
  const ObstacleMap map(20, 20, {square(5, 5, 0.5)});
  EXPECT_FALSE(los_clear(map, {0, 5}, {10, 5}));
  EXPECT_FALSE(los_clear(map, {4, 6.5}, {6.5, 4}));
}

TEST(LosClear, ParallelAboveEdgeIsClear) {
  const ObstacleMap map(20, 20, {square(5, 5, 0.5)});
  EXPECT_TRUE(los_clear(map, {0, 5.501}, {10, 5.501}));
  EXPECT_TRUE(los_clear(map, {0, 5.5}, {10, 5.5}));
}

TEST(LosClear, CornerGrazeIsClear) {
  const ObstacleMap map(20, 20, {square(5, 5, 0.5)});
  EXPECT_TRUE(los_clear(map, {4, 7}, {7, 4}));
  EXPECT_TRUE(los_clear(map, {3.5, 4.5}, {5.5, 6.5}));
}

TEST(LosClear, OutOfArea) {
  const ObstacleMap map(20, 20);
  EXPECT_EQ(error_code([&] { los_clear(map, {-1, 0}, {5, 5}); }), Code::OutOfArea);
  EXPECT_EQ(error_code([&] { los_clear(map, {1, 1}, {5, 21}); }), Code::OutOfArea);
}

TEST(LosClear, SegmentInsideObstacleIsBlocked) {
  const ObstacleMap map(20, 20, {square(5, 5, 2)});
  EXPECT_FALSE(los_clear(map, {4, 4}, {6, 6}));
}

TEST(LosProperty, AgreesWithDenseSampling) {
  std::mt19937_64 rng(3);
  const ObstacleMap map = random_rect_obstacles(rng, 6, 100, 100, 5, 20);
  std::uniform_real_distribution<double> u(0, 100);
  for (int k = 0; k < 500; ++k) {
    const Point2D a{u(rng), u(rng)}, b{u(rng), u(rng)};
    bool hit = false;
    for (int s = 1; s < 2000 && !hit; ++s) {
      const Point2D q = oodt::geometry::lerp(a, b, s / 2000.0);
      for (const auto& o : map.obstacles()) hit = hit || oodt::geometry::strictly_inside(o, q);
    }
    // Sampling can miss a thin crossing but never reports a false one.
    if (hit) {
      EXPECT_FALSE(los_clear(map, a, b));
    }
  }
}

// Map construction and files.

TEST(ObstacleMap, RejectsObstacleOutsideArea) {
  EXPECT_EQ(error_code([] { ObstacleMap(10, 10, {square(9.8, 5, 0.5)}); }), Code::ObstacleOutsideArea);
}

TEST(ObstacleMap, RejectsOverlap) {
  EXPECT_EQ(error_code([] { ObstacleMap(20, 20, {square(5, 5, 1), square(6, 5, 1)}); }), Code::ObstaclesOverlap);
  EXPECT_EQ(error_code([] { ObstacleMap(20, 20, {square(5, 5, 3), square(5, 5, 1)}); }), Code::ObstaclesOverlap);
}

TEST(ObstacleMap, FileRoundTrip) {
  const ObstacleMap map(50, 40, {square(10, 10, 2), square(30, 20, 3)});
  std::stringstream ss;
  write_obstacle_map(ss, map);
  const ObstacleMap back = read_obstacle_map(ss);
  EXPECT_DOUBLE_EQ(back.width(), 50);
  EXPECT_DOUBLE_EQ(back.height(), 40);
  ASSERT_EQ(back.obstacles().size(), 2u);
  EXPECT_DOUBLE_EQ(back.obstacles()[1].perimeter(), 24.0);
}

TEST(ObstacleMap, MissingHeaderIsParseError) {
  std::stringstream ss("0 0\n0 1\n1 1\n");
  EXPECT_EQ(error_code([&] { read_obstacle_map(ss); }), Code::Parse);
}

TEST(ObstacleMap, RandomRectanglesAreDisjoint) {
  std::mt19937_64 rng(9);
  const ObstacleMap map = random_rect_obstacles(rng, 10, 1000, 1000, 20, 80);
  EXPECT_EQ(map.obstacles().size(), 10u);
}

// Neighborhood polygons.

TEST(NeighborhoodPolygon, CompassNoObstacles) {
  const ObstacleMap map(100, 100);
  const auto np = neighborhood_polygon(0, compass({50, 50}, 10), map);
  EXPECT_EQ(np.polygon.size(), 4u);
  EXPECT_TRUE(np.polygon.is_convex());
  for (const auto& r : np.vertex_roles) EXPECT_EQ(r.kind, VertexRoleKind::NeighborNode);
}

TEST(NeighborhoodPolygon, ObstacleAcrossNorthEastEdge) {
  const ObstacleMap map(100, 100, {square(55.5, 55.5, 1)});
  const auto np = neighborhood_polygon(0, compass({50, 50}, 10), map);
  std::size_t corners = 0;
  for (const auto& r : np.vertex_roles) corners += r.kind == VertexRoleKind::ObstacleCorner;
  EXPECT_GE(corners, 1u);
  EXPECT_GE(np.polygon.reflex_vertices().size(), 1u);
}

TEST(NeighborhoodPolygon, TooFewAndDegenerate) {
  const ObstacleMap map(100, 100);
  EXPECT_EQ(error_code([&] { neighborhood_polygon(0, {{1, {1, 1}}, {2, {2, 2}}}, map); }), Code::TooFewNeighbors);
  EXPECT_EQ(error_code([&] { neighborhood_polygon(0, {{1, {1, 1}}, {2, {1, 1}}, {3, {2, 2}}}, map); }),
            Code::TooFewNeighbors);
  EXPECT_EQ(error_code([&] { neighborhood_polygon(0, {{1, {1, 1}}, {2, {2, 2}}, {3, {3, 3}}}, map); }),
            Code::DegenerateRing);
}

TEST(NeighborhoodProperty, ValidRingsWithSoundSplices) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const ObstacleMap map = random_rect_obstacles(rng, 8, 300, 300, 10, 40);
    std::uniform_real_distribution<double> u(60, 240);
    const Point2D c{u(rng), u(rng)};
    const auto nbrs = random_neighbors(rng, c, 60, 8);
    const auto np = neighborhood_polygon(0, nbrs, map);
    ASSERT_EQ(np.vertex_roles.size(), np.polygon.size());
    for (std::size_t i = 0; i < np.polygon.size(); ++i) {
      const Point2D v = np.polygon.vertex(i);
      if (np.vertex_roles[i].kind == VertexRoleKind::NeighborNode) {
        const auto it = std::find_if(nbrs.begin(), nbrs.end(), [&](const auto& n) { return n.id == np.vertex_roles[i].node; });
        ASSERT_NE(it, nbrs.end());
        EXPECT_EQ(it->pos, v);
        EXPECT_LE(oodt::geometry::distance(c, v), 60.0 + 1e-9);
      } else {
        bool on_obstacle = false;
        for (const auto& o : map.obstacles())
          for (const auto& w : o.vertices()) on_obstacle = on_obstacle || w == v;
        EXPECT_TRUE(on_obstacle);
      }
    }
  }
}

// Pruning.

TEST(SearchableOrPrune, SearchableIsUnchanged) {
  const auto np = neighborhood_polygon(0, compass({50, 50}, 10), ObstacleMap(100, 100));
  const PruneResult r = searchable_or_prune(np, 1);
  EXPECT_TRUE(r.deleted.empty());
  EXPECT_EQ(r.polygon.polygon.size(), 4u);
  EXPECT_FALSE(r.unsalvageable);
}

TEST(SearchableOrPrune, NonSearchableEightVertexInstance) {
  const auto np = all_neighbor_roles(fixtures::c4_instance());
  ASSERT_EQ(np.polygon.size(), 8u);
  ASSERT_FALSE(oodt::geometry::is_boundary_1_searchable(np.polygon));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PruneResult r = searchable_or_prune(np, seed);
    EXPECT_LE(r.deleted.size(), 5u);
    EXPECT_FALSE(r.unsalvageable);
    EXPECT_TRUE(oodt::geometry::is_boundary_1_searchable(r.polygon.polygon));
  }
}

TEST(SearchableOrPrune, SameSeedSameLog) {
  const auto np = all_neighbor_roles(fixtures::c1_pinwheel());
  const PruneResult a = searchable_or_prune(np, 42), b = searchable_or_prune(np, 42);
  ASSERT_EQ(a.deleted.size(), b.deleted.size());
  for (std::size_t i = 0; i < a.deleted.size(); ++i) EXPECT_EQ(a.deleted[i].node, b.deleted[i].node);
}

TEST(SearchableOrPrune, ObstacleCornersAreKept) {
  auto np = all_neighbor_roles(fixtures::c1_pinwheel());
  for (std::size_t r : np.polygon.reflex_vertices()) np.vertex_roles[r] = {VertexRoleKind::ObstacleCorner, 0};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PruneResult r = searchable_or_prune(np, seed);
    for (const auto& d : r.deleted) EXPECT_GE(d.node, 100u);
    std::size_t corners = 0;
    for (const auto& role : r.polygon.vertex_roles) corners += role.kind == VertexRoleKind::ObstacleCorner;
    EXPECT_EQ(corners, 4u);
  }
}

// Observed neighbors.

TEST(ObservedNeighbors, NoObstaclesObservesAll) {
  const auto nbrs = compass({50, 50}, 10);
  const auto seen = observed_neighbors({0, {50, 50}}, nbrs, ObstacleMap(100, 100), 7);
  EXPECT_EQ(seen, (std::set<NodeId>{1, 2, 3, 4}));
}

TEST(ObservedNeighbors, OccludedNeighborExcluded) {
  const ObstacleMap map(100, 100, {square(55, 50, 1)});
  const auto seen = observed_neighbors({0, {50, 50}}, compass({50, 50}, 10), map, 7);
  EXPECT_EQ(seen.count(2), 0u);
  EXPECT_EQ(seen.count(1), 1u);
}

TEST(ObservedNeighbors, RelaySelectionLayout) {
  // SU2 at the center, SU6 behind a wall, SU7 in the clear; both in range.
  const ObstacleMap map(200, 200, {polygon_new({{118, 80}, {118, 120}, {122, 120}, {122, 80}})});
  const NodePosition su2{2, {100, 100}};
  const std::vector<NodePosition> nbrs{{1, {60, 100}}, {6, {150, 100}}, {7, {130, 150}}, {3, {100, 60}}};
  const auto seen = observed_neighbors(su2, nbrs, map, 1);
  EXPECT_EQ(seen.count(7), 1u);
  EXPECT_EQ(seen.count(6), 0u);
}

TEST(ObservedNeighbors, FewNeighborsFallBackToLos) {
  const ObstacleMap map(100, 100, {square(55, 50, 1)});
  const auto r = observed_neighbors_detail({0, {50, 50}}, {{1, {60, 50}}, {2, {50, 60}}}, map, 3);
  EXPECT_FALSE(r.used_polygon);
  EXPECT_EQ(r.observed, (std::set<NodeId>{2}));
}

TEST(ObservedProperty, LosEquivalenceWithoutObstacles) {
  std::mt19937_64 rng(31);
  const ObstacleMap map(300, 300);
  for (int trial = 0; trial < 50; ++trial) {
    const Point2D c{150, 150};
    const auto nbrs = random_neighbors(rng, c, 100, 3 + trial % 8);
    std::set<NodeId> all;
    for (const auto& n : nbrs) all.insert(n.id);
    EXPECT_EQ(observed_neighbors({0, c}, nbrs, map, trial), all);
  }
}

TEST(ObservedProperty, AddingObstacleNeverAddsLosNeighbors) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const ObstacleMap base = random_rect_obstacles(rng, 4, 300, 300, 10, 40);
    ObstacleMap more = base;
    for (int attempt = 0; attempt < 50; ++attempt) {
      try {
        std::uniform_real_distribution<double> u(20, 280);
        more = base.with(square(u(rng), u(rng), 8));
        break;
      } catch (const ObstacleError&) {
      }
    }
    std::uniform_real_distribution<double> u(80, 220);
    const Point2D c{u(rng), u(rng)};
    auto nbrs = random_neighbors(rng, c, 70, 8);
    std::erase_if(nbrs, [&](const NodePosition& n) {
      for (const auto& o : more.obstacles())
        if (oodt::geometry::contains(o, n.pos) || oodt::geometry::contains(o, c)) return true;
      return false;
    });
    const auto a = observed_neighbors({0, c}, nbrs, base, 5);
    const auto b = observed_neighbors({0, c}, nbrs, more, 5);
    for (NodeId id : b) {
      const auto it = std::find_if(nbrs.begin(), nbrs.end(), [&](const auto& n) { return n.id == id; });
      EXPECT_TRUE(los_clear(base, c, it->pos));
    }
    for (const auto& n : nbrs)
      if (!los_clear(base, c, n.pos)) {
        EXPECT_FALSE(a.count(n.id));
        EXPECT_FALSE(b.count(n.id));
      }
  }
}

TEST(ObservedProperty, Deterministic) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const ObstacleMap map = random_rect_obstacles(rng, 6, 300, 300, 10, 40);
    const Point2D c{150, 150};
    const auto nbrs = random_neighbors(rng, c, 100, 9);
    const auto a = observed_neighbors_detail({0, c}, nbrs, map, trial);
    const auto b = observed_neighbors_detail({0, c}, nbrs, map, trial);
    EXPECT_EQ(a.observed, b.observed);
    EXPECT_EQ(a.deleted.size(), b.deleted.size());
  }
}

TEST(ObservedCsv, Format) {
  std::stringstream ss;
  write_observed_csv(ss, 9, {{1, {0, 0}}, {4, {1, 1}}}, {4});
  EXPECT_EQ(ss.str(), "center_id,neighbor_id,observed\n9,1,0\n9,4,1\n");
}
