#pragma once

#include "tamp/actions.hpp"
#include "tamp/estimator.hpp"
#include "tamp/ledger.hpp"
#include "tamp/motion.hpp"
#include "tamp/occupancy_grid.hpp"
#include "tamp/oracle.hpp"
#include "tamp/planner.hpp"
#include "tamp/runner.hpp"
#include "tamp/scene_graph.hpp"
#include "tamp/world.hpp"
