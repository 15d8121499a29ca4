#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "oodt/geometry/polygon.hpp"

namespace oodt::geometry {

namespace detail {

inline bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace detail

// Raw point blocks: lines "x y", blocks separated by blank lines. Lines
// starting with '#' are ignored.
inline std::vector<std::vector<Point2D>> read_point_blocks(std::istream& in) {
  std::vector<std::vector<Point2D>> blocks;
  std::vector<Point2D> cur;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank(line)) {
      if (!cur.empty()) blocks.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    if (line.find_first_not_of(" \t") != std::string::npos && line[line.find_first_not_of(" \t")] == '#') continue;
    std::istringstream ls(line);
    Point2D p;
    std::string extra;
    if (!(ls >> p.x >> p.y) || (ls >> extra))
      throw GeometryError(GeometryError::Code::Parse, "line " + std::to_string(lineno) + ": expected \"x y\"");
    cur.push_back(p);
  }
  if (!cur.empty()) blocks.push_back(std::move(cur));
  return blocks;
}

inline std::vector<Polygon> read_polygons(std::istream& in) {
  std::vector<Polygon> out;
  for (const auto& b : read_point_blocks(in)) out.push_back(polygon_new(b));
  return out;
}

inline void write_polygon(std::ostream& os, const Polygon& p) {
  const auto old = os.precision(17);
  for (const auto& v : p.vertices()) os << v.x << ' ' << v.y << '\n';
  os.precision(old);
}

inline void write_polygons(std::ostream& os, const std::vector<Polygon>& ps) {
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) os << '\n';
    write_polygon(os, ps[i]);
  }
}

}  // namespace oodt::geometry
