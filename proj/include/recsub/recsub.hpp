#pragma once

#include "recsub/algorithms.hpp"
#include "recsub/bounds.hpp"
#include "recsub/edge_list_io.hpp"
#include "recsub/error.hpp"
#include "recsub/experiment.hpp"
#include "recsub/generators.hpp"
#include "recsub/graph.hpp"
#include "recsub/matching.hpp"
#include "recsub/oracle.hpp"
#include "recsub/rng.hpp"
