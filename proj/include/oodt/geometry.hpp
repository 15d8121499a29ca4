#pragma once

#include "oodt/geometry/bsa.hpp"
#include "oodt/geometry/point.hpp"
#include "oodt/geometry/polygon.hpp"
#include "oodt/geometry/polygon_io.hpp"
#include "oodt/geometry/random_polygon.hpp"
#include "oodt/geometry/reflex_rays.hpp"
#include "oodt/geometry/search_schedule.hpp"
#include "oodt/geometry/searchability.hpp"
#include "oodt/geometry/visibility.hpp"
#include "oodt/geometry/visibility_grid.hpp"
