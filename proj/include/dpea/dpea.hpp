#pragma once

// dpea: a phased dynamic-programming engine over user-supplied states and
// dominance orders, an evolutionary algorithm that provably simulates it,
// and a state-space trimming layer yielding deterministic and randomized
// approximation schemes, with problem adapters, brute-force oracles and an
// experiment harness.

#include "dpea/version.hpp"
#include "dpea/errors.hpp"
#include "dpea/rng.hpp"

#include "dpea/core/problem.hpp"
#include "dpea/core/dp.hpp"
#include "dpea/evo/engine.hpp"
#include "dpea/trim/boxes.hpp"
#include "dpea/trim/schemes.hpp"

#include "dpea/problems/knapsack.hpp"
#include "dpea/problems/tsp.hpp"
#include "dpea/problems/shortest_path.hpp"

#include "dpea/oracles/oracles.hpp"

#include "dpea/harness/instance_io.hpp"
#include "dpea/harness/generate.hpp"
#include "dpea/harness/experiment.hpp"
