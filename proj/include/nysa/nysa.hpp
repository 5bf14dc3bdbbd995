#pragma once

// Umbrella header: landmark selection for low-rank kernel approximation
// through regularized projection scores, with deterministic greedy and
// single-pass randomized samplers, a feature-space approximate path, and
// a reproducible experiment harness.

#include "nysa/christoffel.hpp"
#include "nysa/csv.hpp"
#include "nysa/dataset.hpp"
#include "nysa/harness.hpp"
#include "nysa/kernel.hpp"
#include "nysa/lambert.hpp"
#include "nysa/landmarks.hpp"
#include "nysa/nystrom.hpp"
#include "nysa/projector.hpp"
#include "nysa/rff.hpp"
#include "nysa/rng.hpp"
#include "nysa/samplers.hpp"
#include "nysa/synthetic.hpp"
#include "nysa/types.hpp"
