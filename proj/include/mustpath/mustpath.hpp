#pragma once

#include "connectivity.hpp"
#include "epe.hpp"
#include "flow.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "query.hpp"
#include "spqr.hpp"
#include "witness.hpp"
