#pragma once

// Umbrella header for the colat toolkit.

#include "colat/colattice.hpp"
#include "colat/cvpp.hpp"
#include "colat/enumerate.hpp"
#include "colat/instrument.hpp"
#include "colat/io.hpp"
#include "colat/latgen.hpp"
#include "colat/linalg.hpp"
#include "colat/lll.hpp"
#include "colat/numeric.hpp"
#include "colat/reduce.hpp"
#include "colat/rng.hpp"
#include "colat/vec.hpp"
