#pragma once

#include "oodt/auction/bidding.hpp"
#include "oodt/auction/channel.hpp"
#include "oodt/auction/fsa.hpp"
#include "oodt/auction/metric.hpp"
#include "oodt/auction/subset.hpp"
