#pragma once

// Exact computation with finite ultrametric spaces: proximity sets, best
// proximity pairs, the fixed-point/minimal-ball dichotomy for noncyclic
// nonexpansive self-maps, instance generators and property-check suites.

#include "umx/ball_tree.hpp"
#include "umx/dynamics.hpp"
#include "umx/errors.hpp"
#include "umx/gen.hpp"
#include "umx/json_io.hpp"
#include "umx/probe.hpp"
#include "umx/proximity.hpp"
#include "umx/rat.hpp"
#include "umx/space.hpp"
#include "umx/suites.hpp"
