#pragma once

#include "skillgraph/bundle.hpp"
#include "skillgraph/classifier.hpp"
#include "skillgraph/csv.hpp"
#include "skillgraph/error.hpp"
#include "skillgraph/format.hpp"
#include "skillgraph/ids.hpp"
#include "skillgraph/layout.hpp"
#include "skillgraph/megatrend.hpp"
#include "skillgraph/ntriples.hpp"
#include "skillgraph/pipeline.hpp"
#include "skillgraph/quadtree.hpp"
#include "skillgraph/similarity.hpp"
#include "skillgraph/supply_demand.hpp"
