#pragma once
#include <limits>
#include <utility>

#include "ipevo/params.hpp"
#include "ipevo/random.hpp"
#include "ipevo/spindle.hpp"

namespace ipevo {

// exact: (z/2)/Gamma(1+alpha) with z = (a/c)^{1/q}
double sample_lifetime(const DiffusionParams& p, double a, Rng& rng);

struct BlockDiffusionPath {
    Spindle path;           // mass units on a uniform grid, birth value a, death value 0
    std::size_t steps = 0;  // Euler steps taken
    double absorption = 0;  // interpolated absorption time
};

// Euler scheme with full truncation for BESQ(-2 alpha) from (a/c)^{1/q}, mapped by x -> c x^q.
// max_time bounds the simulated time (BudgetError if not absorbed by then).
BlockDiffusionPath simulate_block_diffusion(const DiffusionParams& p, double a, double dt, Rng& rng,
                                            std::size_t n_grid = 256,
                                            double max_time = std::numeric_limits<double>::infinity());

// same dynamics, absorption time only
double euler_lifetime(const DiffusionParams& p, double a, double dt, Rng& rng);
// (step dt, step dt/2) driven by the same Brownian path, for refinement estimates
std::pair<double, double> euler_lifetime_pair(const DiffusionParams& p, double a, double dt, Rng& rng);
// running maximum in mass units, stopped once it reaches cap or the path is absorbed
double euler_amplitude(const DiffusionParams& p, double a, double dt, double cap, Rng& rng);

}  // namespace ipevo
