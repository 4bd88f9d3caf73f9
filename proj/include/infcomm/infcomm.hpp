#pragma once

// Everything except report.hpp, which needs nlohmann/json on the include path.
#include "infcomm/aggregation.hpp"
#include "infcomm/community.hpp"
#include "infcomm/constrained.hpp"
#include "infcomm/error.hpp"
#include "infcomm/graph.hpp"
#include "infcomm/maximal.hpp"
#include "infcomm/oracle.hpp"
#include "infcomm/pagerank.hpp"
#include "infcomm/powerlaw.hpp"
#include "infcomm/subgraph.hpp"
#include "infcomm/unconstrained.hpp"
