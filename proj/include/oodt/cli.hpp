#pragma once

#include "oodt/cli/emit.hpp"
#include "oodt/cli/sweep.hpp"
