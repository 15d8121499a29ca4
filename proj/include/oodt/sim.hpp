#pragma once

#include "oodt/sim/channel_model.hpp"
#include "oodt/sim/engine.hpp"
#include "oodt/sim/metrics.hpp"
#include "oodt/sim/scenario.hpp"
