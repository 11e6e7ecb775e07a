#pragma once

// Umbrella header.

#include "tribkar/rational.hpp"
#include "tribkar/perm.hpp"
#include "tribkar/set_partition.hpp"
#include "tribkar/polynomial.hpp"
#include "tribkar/bonds.hpp"
#include "tribkar/interpolation.hpp"
#include "tribkar/gaussian.hpp"
#include "tribkar/maps.hpp"
#include "tribkar/goulden_jackson.hpp"
#include "tribkar/trees.hpp"
#include "tribkar/gue.hpp"
#include "tribkar/expansion.hpp"
#include "tribkar/random_instances.hpp"
