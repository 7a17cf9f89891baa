#pragma once
#include <vector>

#include "ipevo/params.hpp"
#include "ipevo/random.hpp"

// Lean samplers for Monte Carlo: the same constructions as the materialised route
// (block diffusion + compensated compound Poisson scaffolding), keeping only the
// quantities a statistic needs. Tests cross-check them against the full objects.
namespace ipevo {

// sup of x + X up to its hitting time of 0, capped at `cap`
double scaffold_top(const DiffusionParams& p, double x, double cap, double eps, Rng& rng);

// Supremum of a single-block clade scaffolding, capped at `cap`. The clade starts with an
// Euler block diffusion from mass a (step dt, its own alpha `block_alpha` if > 0) and runs the
// eps-truncated scaffolding until it returns to 0 or reaches the cap.
double clade_top(const DiffusionParams& p, double a, double cap, double eps, double dt, Rng& rng,
                 double block_alpha = -1);

// x + X for the eps-truncated scaffolding: true if it leaves [0,y] at 0
bool exits_at_zero(const DiffusionParams& p, double x, double y, double eps, Rng& rng);

// Level-0 view of a spindle PRM started at 0 and run to local time s_max.
// Excursions above 0 only contribute their crossing spindle, so they are skipped after it.
// Below depth `anchor` the scaffolding is the eps-truncated one; deeper it uses cutoff
// eps * 2^k on depth band [anchor 2^k, anchor 2^{k+1}) (same relative resolution at every scale).
// anchor = 0 disables the multiscale bands.
struct Level0Block {
    double mark;  // local time at the crossing jump
    double mass;  // crossing spindle value at level 0
};
struct Level0Run {
    std::vector<Level0Block> blocks;
    double slope;
    std::size_t events = 0;
};
Level0Run level0_run(const DiffusionParams& p, double eps, double s_max, double anchor, Rng& rng);

// M(tau(s)) - M(tau(0)) for each s from a level-0 run
std::vector<double> subordinator_values(const Level0Run& run, const std::vector<double>& s);

}  // namespace ipevo
