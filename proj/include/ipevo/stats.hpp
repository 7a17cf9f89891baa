#pragma once
#include <functional>
#include <vector>

namespace ipevo::stats {

struct MeanSE {
    double mean = 0;
    double se = 0;
};
// batch means over n_batches contiguous batches (replicate order is fixed by seeding)
MeanSE batch_means(const std::vector<double>& x, std::size_t n_batches = 30);

double mean(const std::vector<double>& x);

// sup |F_n - F|
double ks_statistic(std::vector<double> x, const std::function<double(double)>& cdf);
struct KsTwo {
    double d;
    double p;
};
KsTwo ks_two_sample(std::vector<double> a, std::vector<double> b);
// P(K > lambda) for the Kolmogorov distribution
double kolmogorov_q(double lambda);

// k such that two-sided normal tail at k equals that at base_k divided by m
double bonferroni_k(std::size_t m, double base_k = 3.0);

struct LineFit {
    double slope, intercept;
};
LineFit ols(const std::vector<double>& x, const std::vector<double>& y);

// first-order extrapolation of a two-point refinement: bias ~ h^p, fine step h/r
struct Extrapolated {
    double value, se, allowance;
};
Extrapolated richardson(MeanSE coarse, MeanSE fine, double r, double p);

}  // namespace ipevo::stats
