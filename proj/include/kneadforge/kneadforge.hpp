#pragma once

#include "kneadforge/numeric.hpp"
#include "kneadforge/poly.hpp"
#include "kneadforge/roots.hpp"
#include "kneadforge/algebraic.hpp"
#include "kneadforge/pwl.hpp"
#include "kneadforge/itinerary.hpp"
#include "kneadforge/bifurcation.hpp"
#include "kneadforge/exceptional.hpp"
#include "kneadforge/codim1.hpp"
#include "kneadforge/json_io.hpp"
#include "kneadforge/svg.hpp"
