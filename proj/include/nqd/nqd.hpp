#pragma once

#include "nqd/error.hpp"
#include "nqd/board.hpp"
#include "nqd/geometry.hpp"
#include "nqd/symmetry.hpp"
#include "nqd/placement_json.hpp"
#include "nqd/construct.hpp"
#include "nqd/bound_table.hpp"
#include "nqd/bounds.hpp"
#include "nqd/ipmodel.hpp"
#include "nqd/lp_format.hpp"
#include "nqd/solver.hpp"
#include "nqd/analysis.hpp"
