#pragma once

#include <vector>

#include "oodt/geometry.hpp"

namespace fixtures {

using oodt::geometry::Point2D;
using oodt::geometry::Polygon;
using oodt::geometry::polygon_new;

inline Polygon unit_square() { return polygon_new({{0, 0}, {0, 1}, {1, 1}, {1, 0}}); }

inline Polygon l_shape() { return polygon_new({{0, 0}, {0, 2}, {1, 2}, {1, 1}, {2, 1}, {2, 0}}); }

// Two reflex vertices, shallow steps.
inline Polygon staircase() {
  return polygon_new({{0, 0}, {0, 3}, {1, 3}, {1, 2}, {2, 2}, {2, 1}, {3, 1}, {3, 0}});
}

// Four one-side bi-tangents arranged as a pinwheel.
inline Polygon c1_pinwheel() {
  return polygon_new({{20, 0}, {89, -45}, {20, -98}, {0, -20}, {-45, -89}, {-98, -20},
                      {-20, 0}, {-89, 45}, {-20, 98}, {0, 20}, {45, 89}, {98, 20}});
}

inline Polygon c1_random() {
  return polygon_new({{57, 9}, {35, -77}, {17, -41}, {23, -76}, {-21, -90}, {-51, -2},
                      {-59, 9}, {-14, 11}, {-60, 49}, {18, 42}, {8, 14}, {72, 36}});
}

// Three arms whose forward components are pairwise disjoint.
inline std::vector<Point2D> c2_pinwheel_points() {
  return {{20, 0}, {-73, -68}, {-99, 15}, {-10, -17}, {-22, 98}, {63, 78}, {-10, 17}, {96, -30}, {36, -93}};
}

inline Polygon c2_pinwheel_right() { return polygon_new(c2_pinwheel_points()); }

inline Polygon c2_pinwheel_left() {
  auto pts = c2_pinwheel_points();
  for (auto& q : pts) q.x = -q.x;
  return polygon_new(pts);
}

inline Polygon c3_instance() {
  return polygon_new({{26, 97}, {70, 89}, {85, 22}, {51, 26}, {77, 1}, {4, 25}, {22, 27}, {2, 26}, {17, 75}, {43, 70}});
}

inline Polygon c3_instance_12() {
  return polygon_new({{77, 41}, {55, 33}, {85, 30}, {23, 7}, {8, 2}, {5, 18},
                      {7, 12}, {1, 79}, {9, 64}, {26, 57}, {14, 78}, {44, 75}});
}

inline Polygon c4_instance() {
  return polygon_new({{55, 6}, {63, 20}, {18, 51}, {9, 7}, {16, 71}, {89, 97}, {31, 74}, {99, 31}});
}

inline Polygon c4_instance_10() {
  return polygon_new({{54, 41}, {45, 80}, {9, 20}, {44, 89}, {58, 98}, {69, 45}, {78, 80}, {67, 7}, {30, 18}, {46, 27}});
}

inline Polygon c4_instance_12() {
  return polygon_new({{32, 55}, {65, 73}, {35, 87}, {39, 95}, {98, 87}, {99, 79},
                      {95, 11}, {93, 4}, {90, 13}, {89, 49}, {35, 56}, {49, 50}});
}

inline std::vector<Polygon> constructed_family() {
  return {c1_pinwheel(),  c1_random(),   c2_pinwheel_right(), c2_pinwheel_left(), c3_instance(),
          c3_instance_12(), c4_instance(), c4_instance_10(),   c4_instance_12()};
}

}  // namespace fixtures
