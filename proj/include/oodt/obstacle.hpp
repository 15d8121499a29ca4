#pragma once

#include "oodt/obstacle/neighborhood.hpp"
#include "oodt/obstacle/obstacle_map.hpp"
