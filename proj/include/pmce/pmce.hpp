#pragma once

#include "pmce/bitset.hpp"
#include "pmce/bk_core.hpp"
#include "pmce/clique_sink.hpp"
#include "pmce/errors.hpp"
#include "pmce/generators.hpp"
#include "pmce/graph.hpp"
#include "pmce/induced.hpp"
#include "pmce/metrics.hpp"
#include "pmce/scheduler.hpp"
#include "pmce/traversal.hpp"
#include "pmce/worker_list.hpp"
#include "pmce/xsets.hpp"
