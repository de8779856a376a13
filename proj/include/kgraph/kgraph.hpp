#pragma once

#include "kgraph/errors.hpp"
#include "kgraph/degree.hpp"
#include "kgraph/graph.hpp"
#include "kgraph/path.hpp"
#include "kgraph/enumerate.hpp"
#include "kgraph/boundary.hpp"
#include "kgraph/desource.hpp"
#include "kgraph/analysis.hpp"
#include "kgraph/ideals.hpp"
#include "kgraph/io.hpp"
#include "kgraph/fixtures.hpp"
