#include "ipevo/block_diffusion.hpp"

#include <cmath>
#include <vector>

#include "ipevo/errors.hpp"

namespace ipevo {

namespace {

double start_height(const DiffusionParams& p, double a) { return p.besq() ? a : std::pow(a / p.c, 1 / p.q); }
double to_mass(const DiffusionParams& p, double z) { return p.besq() ? z : p.c * std::pow(z, p.q); }

// one full-truncation Euler step of dZ = -2a ds + 2 sqrt(Z) dB
inline double euler_step(double z, double drift_dt, double two_sqrt_dt, Rng& rng) {
    return z + drift_dt + two_sqrt_dt * std::sqrt(z > 0 ? z : 0.0) * normal(rng);
}

}  // namespace

double sample_lifetime(const DiffusionParams& p, double a, Rng& rng) {
    if (!(a > 0)) return 0;
    return start_height(p, a) / 2 / gamma(rng, 1 + p.alpha);
}

BlockDiffusionPath simulate_block_diffusion(const DiffusionParams& p, double a, double dt, Rng& rng,
                                            std::size_t n_grid, double max_time) {
    p.validate();
    if (!(dt > 0)) throw ValidationError("dt must be positive");
    if (dt >= max_time) throw ValidationError("dt must be below the requested horizon");
    if (n_grid < 2) throw ValidationError("n_grid must be at least 2");
    BlockDiffusionPath out;
    if (!(a > 0)) return out;

    const double dd = -2 * p.alpha * dt, sd = 2 * std::sqrt(dt);
    // decimating buffer of (step index, value): keep every stride-th step
    std::vector<std::pair<std::size_t, double>> buf{{0, start_height(p, a)}};
    std::size_t stride = 1;
    const std::size_t cap = 4 * n_grid;
    double z = buf[0].second;
    std::size_t n = 0;
    for (;;) {
        const double nz = euler_step(z, dd, sd, rng);
        ++n;
        if (nz <= 0) {
            out.absorption = (double(n - 1) + z / (z - nz)) * dt;
            break;
        }
        z = nz;
        if (n % stride == 0) {
            buf.push_back({n, z});
            if (buf.size() >= cap) {
                std::size_t k = 0;
                for (std::size_t i = 0; i < buf.size(); i += 2) buf[k++] = buf[i];
                buf.resize(k);
                stride *= 2;
            }
        }
        if (double(n) * dt > max_time) throw BudgetError("block diffusion not absorbed within max_time");
    }
    out.steps = n;
    const double zeta = out.absorption;
    std::vector<double> vals(n_grid + 1);
    std::size_t k = 0;
    for (std::size_t i = 0; i <= n_grid; ++i) {
        const double t = zeta * double(i) / double(n_grid);
        while (k + 1 < buf.size() && double(buf[k + 1].first) * dt <= t) ++k;
        double x;
        if (k + 1 < buf.size()) {
            const double t0 = double(buf[k].first) * dt, t1 = double(buf[k + 1].first) * dt;
            x = buf[k].second + (t - t0) / (t1 - t0) * (buf[k + 1].second - buf[k].second);
        } else {
            const double t0 = double(buf[k].first) * dt;
            x = zeta > t0 ? buf[k].second * (zeta - t) / (zeta - t0) : 0.0;
        }
        vals[i] = to_mass(p, std::max(x, 0.0));
    }
    vals[0] = a;
    vals[n_grid] = 0;
    out.path = Spindle::from_uniform(zeta, std::move(vals));
    return out;
}

double euler_lifetime(const DiffusionParams& p, double a, double dt, Rng& rng) {
    if (!(a > 0)) return 0;
    const double dd = -2 * p.alpha * dt, sd = 2 * std::sqrt(dt);
    double z = start_height(p, a);
    for (std::size_t n = 1;; ++n) {
        const double nz = euler_step(z, dd, sd, rng);
        if (nz <= 0) return (double(n - 1) + z / (z - nz)) * dt;
        z = nz;
    }
}

std::pair<double, double> euler_lifetime_pair(const DiffusionParams& p, double a, double dt, Rng& rng) {
    if (!(a > 0)) return {0, 0};
    const double h = dt / 2;
    const double ddf = -2 * p.alpha * h, sdf = 2 * std::sqrt(h);
    const double ddc = -2 * p.alpha * dt, sdc = 2 * std::sqrt(dt);
    double zc = start_height(p, a), zf = zc;
    double tc = -1, tf = -1;
    for (std::size_t n = 1; tc < 0 || tf < 0; ++n) {
        const double g[2] = {normal(rng), normal(rng)};
        for (int k = 0; k < 2 && tf < 0; ++k) {
            const double nz = zf + ddf + sdf * std::sqrt(zf) * g[k];
            if (nz <= 0)
                tf = (double(2 * n - 2 + k) + zf / (zf - nz)) * h;
            else
                zf = nz;
        }
        if (tc < 0) {
            const double nz = zc + ddc + sdc * std::sqrt(zc) * (g[0] + g[1]) / std::sqrt(2.0);
            if (nz <= 0) tc = (double(n - 1) + zc / (zc - nz)) * dt;
            else zc = nz;
        }
    }
    return {tc, tf};
}

double euler_amplitude(const DiffusionParams& p, double a, double dt, double cap, Rng& rng) {
    if (!(a > 0)) return 0;
    const double dd = -2 * p.alpha * dt, sd = 2 * std::sqrt(dt);
    const double zcap = start_height(p, a > cap ? a : cap);
    double z = start_height(p, a), mx = z;
    while (z > 0 && mx < zcap) {
        const double nz = euler_step(z, dd, sd, rng);
        // maximum of the Brownian bridge between the two grid values (variance 4 z dt),
        // so that excursions above the grid between steps are not missed
        const double lo = std::max(nz, 0.0);
        const double bm = 0.5 * (z + lo + std::sqrt((lo - z) * (lo - z) + 8 * z * dt * exponential(rng)));
        mx = std::max(mx, bm);
        z = nz;
    }
    return to_mass(p, std::min(mx, zcap));
}

}  // namespace ipevo
