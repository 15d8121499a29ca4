#pragma once

#include "oodt/social/contacts.hpp"
#include "oodt/social/energy.hpp"
#include "oodt/social/etx.hpp"
#include "oodt/social/social_tie.hpp"
