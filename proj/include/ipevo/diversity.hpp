#pragma once
#include <vector>

#include "ipevo/interval_partition.hpp"
#include "ipevo/random.hpp"

namespace ipevo {

struct DiversityEstimate {
    double value;       // regression intercept at h -> 0
    double dispersion;  // weighted residual standard deviation
};

// Estimate Gamma(1-a) lim h^a #{blocks (l,r) with mass > h and r <= t} by a weighted
// least-squares fit of v(h) = Gamma(1-a) h^a N(h) against x = h^a, extrapolated to x = 0.
// t < 0 means the whole partition.
DiversityEstimate diversity_estimate(const IntervalPartition& beta, double t,
                                     const std::vector<double>& h_grid);

// log-spaced decreasing grid from hi to lo
std::vector<double> log_grid(double hi, double lo, std::size_t n);

// Jumps of a subordinator with Laplace exponent lambda^alpha over [0,T], keeping jumps > eps.
// Each block is marked with its jump time, total diversity T.
IntervalPartition sample_stable_ip(double alpha, double T, double eps, Rng& rng,
                                   double max_blocks = 5e7);

}  // namespace ipevo
