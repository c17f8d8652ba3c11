#pragma once

#include "constructions.hpp"
#include "entropy.hpp"
#include "exact.hpp"
#include "experiments.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "lipschitz.hpp"
#include "mcmc.hpp"
#include "rng.hpp"
