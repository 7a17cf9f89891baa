#include "ipevo/excursion_sampler.hpp"

#include <cmath>
#include <vector>

#include "ipevo/errors.hpp"

namespace ipevo {

namespace {

// BESQ(delta) over a step dt from x: 2 dt Gamma(delta/2 + Poisson(x / 2dt))
double besq_step(double delta, double x, double dt, Rng& rng) {
    return 2 * dt * gamma(rng, delta / 2 + double(poisson(rng, x / (2 * dt))));
}

Spindle to_mass(const DiffusionParams& p, double z, const std::vector<double>& unit) {
    std::vector<double> vals(unit.size());
    for (std::size_t i = 0; i < unit.size(); ++i) {
        const double x = z * unit[i];
        vals[i] = p.besq() ? x : p.c * std::pow(x, p.q);
    }
    vals.front() = 0, vals.back() = 0;
    return Spindle::from_uniform(z, std::move(vals));
}

std::vector<double> sample_unit_reference(double alpha, const SpindleSamplerConfig& cfg, Rng& rng) {
    const double a0 = cfg.a0;
    const double L = a0 / cfg.min_unit_amp;
    const double dt = cfg.tol_zeta * cfg.tol_zeta * L;
    const double up = 4 + 2 * alpha;
    const double dd = -2 * alpha * dt, sd = 2 * std::sqrt(dt);
    std::vector<double> path;
    for (std::size_t trial = 0; trial < cfg.max_trials; ++trial) {
        path.assign(1, 0.0);
        double x = 0;
        while (x < a0) {
            x = besq_step(up, x, dt, rng);
            path.push_back(x);
        }
        double zeta = 0;
        for (;;) {
            const double nx = x + dd + sd * std::sqrt(x) * normal(rng);
            if (nx <= 0) {
                zeta = (double(path.size() - 1) + x / (x - nx)) * dt;
                break;
            }
            x = nx;
            path.push_back(x);
        }
        if (zeta < L) continue;
        // rescale the realised excursion to unit lifetime and put it on the grid
        std::vector<double> unit(cfg.n_grid + 1);
        for (std::size_t i = 0; i <= cfg.n_grid; ++i) {
            const double t = zeta * double(i) / double(cfg.n_grid) / dt;
            const std::size_t k = std::size_t(t);
            double v;
            if (k + 1 < path.size())
                v = path[k] + (t - double(k)) * (path[k + 1] - path[k]);
            else
                v = path.back() * std::max(0.0, (zeta / dt - t) / (zeta / dt - double(path.size() - 1)));
            unit[i] = v / zeta;
        }
        return unit;
    }
    throw BudgetError("reference spindle sampler: rejection budget of " + std::to_string(cfg.max_trials) +
                      " trials exhausted (a0=" + std::to_string(a0) +
                      ", min_unit_amp=" + std::to_string(cfg.min_unit_amp) + ")");
}

}  // namespace

std::vector<double> sample_unit_bridge(double alpha, std::size_t n_grid, Rng& rng) {
    const double delta = 4 + 2 * alpha, h = 1.0 / double(n_grid);
    std::vector<double> b(n_grid + 1, 0.0);
    double x = 0;
    for (std::size_t i = 0; i + 1 < n_grid; ++i) {
        const double r = 1.0 - double(i) * h;  // time left to the pinned end
        const double hp = h * (r - h) / r;
        const double lam = x * hp / (h * h);
        x = 2 * hp * gamma(rng, delta / 2 + double(poisson(rng, lam / 2)));
        b[i + 1] = x;
    }
    return b;
}

Spindle sample_spindle_given_lifetime(const DiffusionParams& p, double z, const SpindleSamplerConfig& cfg,
                                      Rng& rng) {
    if (!(z > 0)) throw ValidationError("spindle lifetime must be positive");
    if (cfg.n_grid < 2) throw ValidationError("n_grid must be at least 2");
    auto unit = cfg.method == SpindleMethod::bridge ? sample_unit_bridge(p.alpha, cfg.n_grid, rng)
                                                    : sample_unit_reference(p.alpha, cfg, rng);
    return to_mass(p, z, unit);
}

Spindle spindle_from_seed(const DiffusionParams& p, double z, std::size_t n_grid, std::uint64_t seed) {
    Rng r(seed);
    SpindleSamplerConfig cfg;
    cfg.n_grid = n_grid;
    return sample_spindle_given_lifetime(p, z, cfg, r);
}

double bridge_value(const DiffusionParams& p, double z, double u, Rng& rng) {
    if (!(u > 0 && u < z)) return 0;
    const double x = 2 * u * (z - u) / z * gamma(rng, 2 + p.alpha);
    return p.besq() ? x : p.c * std::pow(x, p.q);
}

}  // namespace ipevo
