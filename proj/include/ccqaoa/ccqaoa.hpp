#pragma once

#include "ccqaoa/analytic.hpp"
#include "ccqaoa/error.hpp"
#include "ccqaoa/experiment.hpp"
#include "ccqaoa/graph.hpp"
#include "ccqaoa/ising.hpp"
#include "ccqaoa/optimize.hpp"
#include "ccqaoa/qsim.hpp"
#include "ccqaoa/rng.hpp"
#include "ccqaoa/warmstart.hpp"
