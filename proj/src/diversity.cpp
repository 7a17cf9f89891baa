#include "ipevo/diversity.hpp"

#include <algorithm>
#include <cmath>

#include "ipevo/errors.hpp"

namespace ipevo {

std::vector<double> log_grid(double hi, double lo, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = hi * std::pow(lo / hi, n == 1 ? 0.0 : double(i) / double(n - 1));
    return g;
}

DiversityEstimate diversity_estimate(const IntervalPartition& beta, double t,
                                     const std::vector<double>& h_grid) {
    if (beta.empty()) return {0, 0};
    if (h_grid.size() < 2) throw ValidationError("insufficient bandwidth range");
    const auto [lo, hi] = std::minmax_element(h_grid.begin(), h_grid.end());
    if (!(*lo > 0) || *hi / *lo < 100 * (1 - 1e-9)) throw ValidationError("insufficient bandwidth range");

    const double a = beta.alpha_div();
    const double g = std::tgamma(1 - a);
    std::vector<double> sizes;
    double right = 0;
    for (const auto& b : beta.blocks()) {
        right += b.mass;
        if (t >= 0 && right > t * (1 + 1e-15)) break;
        sizes.push_back(b.mass);
    }
    std::sort(sizes.begin(), sizes.end());

    // weights ~ 1/Var(v(h)); for Poisson counts Var ~ h^a, so w ~ h^-a
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> xs, ys, ws;
    for (double h : h_grid) {
        const double n = double(sizes.end() - std::upper_bound(sizes.begin(), sizes.end(), h));
        const double x = std::pow(h, a);
        const double y = g * x * n;
        const double w = 1 / x;
        xs.push_back(x), ys.push_back(y), ws.push_back(w);
        sw += w, sx += w * x, sy += w * y, sxx += w * x * x, sxy += w * x * y;
    }
    const double det = sw * sxx - sx * sx;
    const double slope = (sw * sxy - sx * sy) / det;
    const double icpt = (sy - slope * sx) / sw;
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - icpt - slope * xs[i];
        rss += ws[i] * r * r;
    }
    const double disp = xs.size() > 2 ? std::sqrt(rss / sw * double(xs.size()) / double(xs.size() - 2)) : 0.0;
    return {icpt, disp};
}

IntervalPartition sample_stable_ip(double alpha, double T, double eps, Rng& rng, double max_blocks) {
    if (!(alpha > 0 && alpha < 1)) throw ValidationError("alpha must lie in (0,1)");
    if (!(eps > 0)) throw ValidationError("cutoff must be positive");
    if (!(T > 0)) return IntervalPartition(alpha, {}, T < 0 ? std::optional<double>() : std::optional<double>(0.0));
    const double mean = T * std::pow(eps, -alpha) / std::tgamma(1 - alpha);
    if (mean > max_blocks) throw BudgetError("expected block count exceeds budget " + std::to_string(max_blocks));
    const auto n = poisson(rng, mean);
    std::vector<std::pair<double, double>> jumps(n);
    for (auto& [s, x] : jumps) {
        s = T * uniform_open(rng);
        x = eps * std::pow(uniform_open(rng), -1 / alpha);
    }
    std::sort(jumps.begin(), jumps.end());
    std::vector<Block> blocks;
    blocks.reserve(n);
    for (auto [s, x] : jumps) blocks.push_back({x, s});
    return IntervalPartition(alpha, std::move(blocks), T);
}

}  // namespace ipevo
