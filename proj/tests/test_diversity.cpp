#include <doctest.h>

#include <cmath>

#include "ipevo/diversity.hpp"
#include "ipevo/errors.hpp"
#include "ipevo/stats.hpp"

using namespace ipevo;

TEST_SUITE("diversity") {

TEST_CASE("finite partitions have zero diversity") {
    const auto b = IntervalPartition::from_masses(0.5, {0.3, 1, 0.2});
    // grid below the smallest block: constant count, estimate extrapolates to 0
    CHECK(std::abs(diversity_estimate(b, -1, log_grid(1e-4, 1e-8, 10)).value) < 1e-9);
    CHECK(diversity_estimate(IntervalPartition(0.5), -1, log_grid(1, 1e-3, 5)).value == 0);
    CHECK_THROWS_AS(diversity_estimate(b, -1, log_grid(1e-2, 1e-3, 5)), ValidationError);
}

TEST_CASE("stable partitions") {
    Rng rng(41);
    CHECK(sample_stable_ip(0.5, 0, 1e-3, rng).empty());
    std::vector<double> counts, est1, est2;
    for (int i = 0; i < 100; ++i) {
        const auto b1 = sample_stable_ip(0.5, 1, 1e-6, rng);
        counts.push_back(double(b1.size()));
        est1.push_back(diversity_estimate(b1, -1, log_grid(1e-2, 1e-5, 12)).value);
        const auto b2 = sample_stable_ip(0.5, 2, 1e-6, rng);
        est2.push_back(diversity_estimate(b2, -1, log_grid(1e-2, 1e-5, 12)).value);
        CHECK(*b2.total_diversity() == 2);
    }
    // E count = T eps^-alpha / Gamma(1-alpha)
    const auto c = stats::batch_means(counts, 20);
    CHECK(std::abs(c.mean - 1000 / std::sqrt(M_PI)) < 3 * c.se);
    CHECK(stats::mean(est1) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(stats::mean(est2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("estimate up to a position") {
    Rng rng(43);
    std::vector<double> e;
    for (int i = 0; i < 100; ++i) {
        const auto b = sample_stable_ip(0.5, 2, 1e-6, rng);
        // left part up to the block whose mark first exceeds 1
        double pos = 0;
        for (const auto& bl : b.blocks()) {
            if (*bl.div > 1) break;
            pos += bl.mass;
        }
        e.push_back(diversity_estimate(b, pos, log_grid(1e-2, 1e-5, 12)).value);
    }
    CHECK(stats::mean(e) == doctest::Approx(1.0).epsilon(0.05));
}

}

TEST_SUITE("stats") {

TEST_CASE("batch means and ks") {
    std::vector<double> x(300);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = double(i % 10);
    const auto m = stats::batch_means(x);
    CHECK(m.mean == doctest::Approx(4.5));
    CHECK(stats::ks_statistic({0.5}, [](double t) { return t; }) == doctest::Approx(0.5));
    CHECK(stats::kolmogorov_q(1.36) == doctest::Approx(0.049).epsilon(0.02));
    CHECK(stats::ks_two_sample({1, 2, 3}, {1, 2, 3}).d == 0);
    CHECK(stats::bonferroni_k(1) == doctest::Approx(3));
    CHECK(stats::bonferroni_k(10) > 3);
    const auto f = stats::ols({0, 1, 2}, {1, 3, 5});
    CHECK(f.slope == doctest::Approx(2));
    CHECK(f.intercept == doctest::Approx(1));
}

TEST_CASE("richardson removes a power-law bias") {
    // value 1 + h^p at h = 0.1 and 0.05
    const double p = 0.5;
    const auto e = stats::richardson({1 + std::pow(0.1, p), 0.01}, {1 + std::pow(0.05, p), 0.01}, 2, p);
    CHECK(e.value == doctest::Approx(1));
}

TEST_CASE("seed derivation") {
    CHECK(derive_seed(1, "a", 0) == derive_seed(1, "a", 0));
    CHECK(derive_seed(1, "a", 0) != derive_seed(1, "a", 1));
    CHECK(derive_seed(1, "a", 0) != derive_seed(1, "b", 0));
    CHECK(derive_seed(1, "a", 0) != derive_seed(2, "a", 0));
}

}

#include "ipevo/verify.hpp"

TEST_SUITE("stats") {

TEST_CASE("verify reports are deterministic") {
    verify::Options o;
    o.seed = 5;
    o.scale = 0.05;
    for (const char* s : {"metric", "biclade", "exit"}) {
        const auto a = verify::run_suite(s, o), b = verify::run_suite(s, o);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(verify::to_json(a[i], false) == verify::to_json(b[i], false));
    }
    o.threads = 3;
    const auto c = verify::run_suite("exit", o);
    o.threads = 1;
    CHECK(verify::to_json(c[0], false) == verify::to_json(verify::run_suite("exit", o)[0], false));
}

}
