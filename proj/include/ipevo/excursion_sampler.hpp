#pragma once
#include <cstdint>

#include "ipevo/params.hpp"
#include "ipevo/random.hpp"
#include "ipevo/spindle.hpp"

namespace ipevo {

enum class SpindleMethod {
    bridge,     // exact BESQ(4+2a) bridge 0 -> 0 on the grid (default)
    reference,  // first-passage construction, rescaling and lifetime rejection
};

struct SpindleSamplerConfig {
    std::size_t n_grid = 256;
    SpindleMethod method = SpindleMethod::bridge;
    // reference sampler only
    double tol_zeta = 0.02;   // Euler step is tol^2 times the lifetime threshold
    double a0 = 1e-3;         // first-passage threshold for a unit-lifetime target
    double min_unit_amp = 0.03;
    std::size_t max_trials = 2000000;
};

// Spindle of lifetime exactly z in mass units, law nu( . | zeta = z)
Spindle sample_spindle_given_lifetime(const DiffusionParams& p, double z, const SpindleSamplerConfig& cfg,
                                      Rng& rng);
// deterministic materialisation from a stored seed
Spindle spindle_from_seed(const DiffusionParams& p, double z, std::size_t n_grid, std::uint64_t seed);

// exact one-point marginal: mass at height u of a spindle with lifetime z
double bridge_value(const DiffusionParams& p, double z, double u, Rng& rng);

// unit-lifetime BESQ(4+2a) bridge on a uniform grid with n_grid steps (BESQ units)
std::vector<double> sample_unit_bridge(double alpha, std::size_t n_grid, Rng& rng);

}  // namespace ipevo
