#include "ipevo/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ipevo/errors.hpp"

namespace ipevo {

Distortion distortion(const IntervalPartition& beta, const IntervalPartition& gamma,
                      const Correspondence& corr) {
    Distortion d;
    double diff = 0, mb = 0, mg = 0;
    const auto& B = beta.blocks();
    const auto& G = gamma.blocks();
    for (auto [i, j] : corr) {
        diff += std::abs(B[i].mass - G[j].mass);
        mb += B[i].mass;
        mg += G[j].mass;
        if (B[i].div && G[j].div) d.sup_div = std::max(d.sup_div, std::abs(*B[i].div - *G[j].div));
    }
    d.mass_beta = diff + beta.total_mass() - mb;
    d.mass_gamma = diff + gamma.total_mass() - mg;
    if (beta.total_diversity() && gamma.total_diversity())
        d.total_div = std::abs(*beta.total_diversity() - *gamma.total_diversity());
    return d;
}

namespace {

struct Pt {
    double a, b;
};

// Pareto frontier of (a,b) pairs, both minimized; kept sorted by a with b strictly decreasing.
void prune(std::vector<Pt>& v, double ub) {
    std::sort(v.begin(), v.end(), [](const Pt& x, const Pt& y) { return x.a < y.a || (x.a == y.a && x.b < y.b); });
    std::size_t k = 0;
    double best_b = std::numeric_limits<double>::infinity();
    for (const auto& p : v) {
        if (p.a >= ub || p.b >= ub) continue;
        if (p.b < best_b) {
            v[k++] = p;
            best_b = p.b;
        }
    }
    v.resize(k);
}

// min over order-preserving correspondences using pairs with |div gap| <= tau
// of max(item i, item ii). tau < 0 disables the eligibility test.
double min_mass_distortion(const std::vector<double>& m, const std::vector<double>& dm,
                           const std::vector<double>& n, const std::vector<double>& dn, double tau,
                           double ub) {
    const std::size_t I = m.size(), J = n.size();
    // rolling rows of frontiers
    std::vector<std::vector<Pt>> prev(J + 1), cur(J + 1);
    prev[0].push_back({0, 0});
    for (std::size_t j = 1; j <= J; ++j) {
        prev[j] = prev[j - 1];
        for (auto& p : prev[j]) p.b += n[j - 1];
        prune(prev[j], ub);
    }
    for (std::size_t i = 1; i <= I; ++i) {
        for (std::size_t j = 0; j <= J; ++j) {
            auto& c = cur[j];
            c.clear();
            for (const auto& p : prev[j]) c.push_back({p.a + m[i - 1], p.b});
            if (j > 0) {
                for (const auto& p : cur[j - 1]) c.push_back({p.a, p.b + n[j - 1]});
                if (tau < 0 || std::abs(dm[i - 1] - dn[j - 1]) <= tau) {
                    const double d = std::abs(m[i - 1] - n[j - 1]);
                    for (const auto& p : prev[j - 1]) c.push_back({p.a + d, p.b + d});
                }
            }
            prune(c, ub);
        }
        std::swap(prev, cur);
    }
    double best = ub;
    for (const auto& p : prev[J]) best = std::min(best, std::max(p.a, p.b));
    return best;
}

}  // namespace

double dist_hausdorff(const IntervalPartition& beta, const IntervalPartition& gamma) {
    const auto m = beta.masses(), n = gamma.masses();
    const std::vector<double> dm(m.size(), 0), dn(n.size(), 0);
    const double empty = std::max(beta.total_mass(), gamma.total_mass());
    // ub slightly above the empty correspondence so that it survives pruning
    const double ub = std::nextafter(empty, std::numeric_limits<double>::infinity());
    return std::min(empty, min_mass_distortion(m, dm, n, dn, -1, ub));
}

double dist_alpha(const IntervalPartition& beta, const IntervalPartition& gamma) {
    if (!beta.has_diversity() || !gamma.has_diversity())
        throw ValidationError("d_alpha undefined on I_H; use dist_hausdorff");
    const auto m = beta.masses(), n = gamma.masses();
    std::vector<double> dm, dn;
    for (const auto& b : beta.blocks()) dm.push_back(*b.div);
    for (const auto& b : gamma.blocks()) dn.push_back(*b.div);
    const double d0 = std::abs(*beta.total_diversity() - *gamma.total_diversity());
    const double empty = std::max(beta.total_mass(), gamma.total_mass());
    const double ub = std::nextafter(empty, std::numeric_limits<double>::infinity());

    // F(tau) only changes at pairwise mark gaps; search that finite set
    std::vector<double> cand{0.0};
    for (double x : dm)
        for (double y : dn) cand.push_back(std::abs(x - y));
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    // thresholds below d0 cost d0 anyway; start the search at the largest candidate <= d0
    auto first = std::upper_bound(cand.begin(), cand.end(), d0);
    if (first != cand.begin()) --first;
    cand.erase(cand.begin(), first);

    auto F = [&](double tau) { return std::min(empty, min_mass_distortion(m, dm, n, dn, tau, ub)); };
    // g(tau) = max(tau, F(tau)) with F nonincreasing: find first k with F(tau_k) <= tau_k
    std::size_t lo = 0, hi = cand.size();  // answer k in [lo, hi]; hi means none
    std::vector<double> memo(cand.size(), -1);
    auto Fk = [&](std::size_t k) {
        if (memo[k] < 0) memo[k] = F(cand[k]);
        return memo[k];
    };
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (Fk(mid) <= cand[mid])
            hi = mid;
        else
            lo = mid + 1;
    }
    double best = std::numeric_limits<double>::infinity();
    if (lo < cand.size()) best = std::max(cand[lo], Fk(lo));
    if (lo > 0) best = std::min(best, std::max(cand[lo - 1], Fk(lo - 1)));
    // the empty correspondence needs no eligible pair
    best = std::min(best, empty);
    return std::max(d0, best);
}

BoundedDistance dist_alpha_truncated(const IntervalPartition& beta, const IntervalPartition& gamma,
                                     double cutoff) {
    double db = 0, dg = 0;
    auto b = beta.truncated(cutoff, &db), g = gamma.truncated(cutoff, &dg);
    return {dist_alpha(b, g), std::max(db, dg)};
}

BoundedDistance dist_hausdorff_truncated(const IntervalPartition& beta,
                                         const IntervalPartition& gamma, double cutoff) {
    double db = 0, dg = 0;
    auto b = beta.truncated(cutoff, &db), g = gamma.truncated(cutoff, &dg);
    return {dist_hausdorff(b, g), std::max(db, dg)};
}

}  // namespace ipevo
