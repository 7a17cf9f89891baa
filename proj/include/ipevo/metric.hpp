#pragma once
#include <utility>
#include <vector>

#include "ipevo/interval_partition.hpp"

namespace ipevo {

using Correspondence = std::vector<std::pair<std::size_t, std::size_t>>;

// distortion items of a correspondence; sup_div is 0 for the empty one
struct Distortion {
    double mass_beta = 0;   // sum |dmass| + unmatched mass of beta
    double mass_gamma = 0;  // sum |dmass| + unmatched mass of gamma
    double sup_div = 0;     // sup over pairs of |div difference|
    double total_div = 0;   // |total diversity difference|
};
Distortion distortion(const IntervalPartition& beta, const IntervalPartition& gamma,
                      const Correspondence& corr);

double dist_alpha(const IntervalPartition& beta, const IntervalPartition& gamma);
double dist_hausdorff(const IntervalPartition& beta, const IntervalPartition& gamma);

struct BoundedDistance {
    double value;
    double tail_bound;  // additive error from dropping blocks at or below the cutoff
};
BoundedDistance dist_alpha_truncated(const IntervalPartition& beta, const IntervalPartition& gamma,
                                     double cutoff);
BoundedDistance dist_hausdorff_truncated(const IntervalPartition& beta,
                                         const IntervalPartition& gamma, double cutoff);

}  // namespace ipevo
