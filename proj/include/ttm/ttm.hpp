#pragma once

#include "ttm/cohomology.hpp"
#include "ttm/delzant.hpp"
#include "ttm/invariants.hpp"
#include "ttm/io.hpp"
#include "ttm/lattice.hpp"
#include "ttm/monodromy.hpp"
#include "ttm/signature.hpp"
#include "ttm/spec.hpp"
#include "ttm/surface.hpp"
