#pragma once

#include "hpart/analysis.hpp"
#include "hpart/asp_emit.hpp"
#include "hpart/bench.hpp"
#include "hpart/catalog.hpp"
#include "hpart/errors.hpp"
#include "hpart/generators.hpp"
#include "hpart/graph.hpp"
#include "hpart/label.hpp"
#include "hpart/labeling.hpp"
#include "hpart/model.hpp"
#include "hpart/oracle.hpp"
#include "hpart/partition.hpp"
#include "hpart/solver.hpp"
