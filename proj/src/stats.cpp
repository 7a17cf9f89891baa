#include "ipevo/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>

namespace ipevo::stats {

double mean(const std::vector<double>& x) {
    double s = 0;
    for (double v : x) s += v;
    return x.empty() ? 0.0 : s / double(x.size());
}

MeanSE batch_means(const std::vector<double>& x, std::size_t n_batches) {
    MeanSE r;
    const std::size_t n = x.size();
    if (n == 0) return r;
    r.mean = mean(x);
    const std::size_t B = std::min(n_batches, n);
    if (B < 2) return r;
    std::vector<double> bm;
    for (std::size_t b = 0; b < B; ++b) {
        const std::size_t lo = b * n / B, hi = (b + 1) * n / B;
        double s = 0;
        for (std::size_t i = lo; i < hi; ++i) s += x[i];
        bm.push_back(s / double(hi - lo));
    }
    const double m = mean(bm);
    double v = 0;
    for (double b : bm) v += (b - m) * (b - m);
    r.se = std::sqrt(v / double(B - 1) / double(B));
    return r;
}

double ks_statistic(std::vector<double> x, const std::function<double(double)>& cdf) {
    std::sort(x.begin(), x.end());
    const double n = double(x.size());
    double d = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double F = cdf(x[i]);
        d = std::max({d, double(i + 1) / n - F, F - double(i) / n});
    }
    return d;
}

double kolmogorov_q(double lambda) {
    if (lambda < 0.2) return 1.0;
    double s = 0;
    for (int k = 1; k <= 100; ++k) {
        const double t = 2 * std::exp(-2.0 * k * k * lambda * lambda) * (k % 2 ? 1 : -1);
        s += t;
        if (std::abs(t) < 1e-16) break;
    }
    return std::clamp(s, 0.0, 1.0);
}

KsTwo ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = double(a.size()), nb = double(b.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(double(i) / na - double(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return {d, kolmogorov_q((ne + 0.12 + 0.11 / ne) * d)};
}

double bonferroni_k(std::size_t m, double base_k) {
    boost::math::normal N;
    const double tail = boost::math::cdf(boost::math::complement(N, base_k)) / double(std::max<std::size_t>(m, 1));
    return boost::math::quantile(boost::math::complement(N, tail));
}

LineFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    const double mx = mean(x), my = mean(y);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
    const double s = sxy / sxx;
    return {s, my - s * mx};
}

Extrapolated richardson(MeanSE coarse, MeanSE fine, double r, double p) {
    const double g = 1 / (std::pow(r, p) - 1);
    Extrapolated e;
    e.value = fine.mean + (fine.mean - coarse.mean) * g;
    e.se = std::sqrt(std::pow((1 + g) * fine.se, 2) + std::pow(g * coarse.se, 2));
    e.allowance = std::abs(e.value - fine.mean);
    return e;
}

}  // namespace ipevo::stats
