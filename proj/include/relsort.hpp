#pragma once

// Convenience header pulling in the whole library.

#include "relsort/d_separation.hpp"
#include "relsort/dag.hpp"
#include "relsort/discovery.hpp"
#include "relsort/experiments.hpp"
#include "relsort/graph_io.hpp"
#include "relsort/mec.hpp"
#include "relsort/metrics.hpp"
#include "relsort/node_set.hpp"
#include "relsort/rng.hpp"
#include "relsort/samplers.hpp"
#include "relsort/scm.hpp"
#include "relsort/sortability.hpp"
#include "relsort/stats.hpp"
