#include "ipevo/streaming.hpp"

#include <cmath>
#include <limits>

#include "ipevo/block_diffusion.hpp"
#include "ipevo/excursion_sampler.hpp"

namespace ipevo {

double scaffold_top(const DiffusionParams& p, double x, double cap, double eps, Rng& rng) {
    if (x >= cap) return cap;
    const double slope = compensation_slope(p, eps), rate = jump_rate(p, eps);
    const double inv = -1 / (1 + p.alpha);
    double top = x;
    for (;;) {
        x -= slope * exponential(rng) / rate;
        if (x <= 0) return top;
        x += eps * std::pow(uniform_open(rng), inv);
        if (x >= cap) return cap;
        top = std::max(top, x);
    }
}

double clade_top(const DiffusionParams& p, double a, double cap, double eps, double dt, Rng& rng,
                 double block_alpha) {
    DiffusionParams bp = p;
    if (block_alpha > 0) bp.alpha = block_alpha;
    return scaffold_top(p, euler_lifetime(bp, a, dt, rng), cap, eps, rng);
}

bool exits_at_zero(const DiffusionParams& p, double x, double y, double eps, Rng& rng) {
    const double slope = compensation_slope(p, eps), rate = jump_rate(p, eps);
    const double inv = -1 / (1 + p.alpha);
    for (;;) {
        x -= slope * exponential(rng) / rate;
        if (x <= 0) return true;
        x += eps * std::pow(uniform_open(rng), inv);
        if (x > y) return false;
    }
}

Level0Run level0_run(const DiffusionParams& p, double eps, double s_max, double anchor, Rng& rng) {
    Level0Run run;
    const double slope0 = compensation_slope(p, eps);
    run.slope = slope0;
    const double inv = -1 / (1 + p.alpha);
    // local time counts down-crossings of 0; the start at 0 is the first one
    const auto n_exc = std::size_t(std::floor(s_max * slope0)) + 1;
    for (std::size_t k = 0; k + 1 < n_exc; ++k) {
        // one excursion below 0, from depth 0 until a jump crosses back above 0
        double d = 0;
        int band = 0;
        double e = eps, slope = slope0, rate = jump_rate(p, eps);
        double lim = anchor > 0 ? 2 * anchor : std::numeric_limits<double>::infinity();
        for (;;) {
            const double w = exponential(rng) / rate;
            if (d + slope * w >= lim) {
                // drift into the next (coarser) band; the exponential clock restarts there
                d = lim;
                ++band;
                e *= 2, lim *= 2;
                slope = compensation_slope(p, e), rate = jump_rate(p, e);
                continue;
            }
            d += slope * w;
            const double z = e * std::pow(uniform_open(rng), inv);
            ++run.events;
            if (z > d) {
                run.blocks.push_back({double(k + 1) / slope0, bridge_value(p, z, d, rng)});
                break;
            }
            d -= z;
            while (band > 0 && d < lim / 2) {
                --band;
                e /= 2, lim /= 2;
                slope = compensation_slope(p, e), rate = jump_rate(p, e);
            }
        }
    }
    return run;
}

std::vector<double> subordinator_values(const Level0Run& run, const std::vector<double>& s) {
    std::vector<double> out;
    for (double si : s) {
        // tau(si) is the k-th crossing, k = floor(si*slope)+1; the excursions before it are complete
        const auto k = std::size_t(std::floor(si * run.slope)) + 1;
        double m = 0;
        for (std::size_t i = 0; i + 1 < k && i < run.blocks.size(); ++i) m += run.blocks[i].mass;
        out.push_back(m);
    }
    return out;
}

}  // namespace ipevo
