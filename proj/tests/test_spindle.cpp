#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "ipevo/block_diffusion.hpp"
#include "ipevo/errors.hpp"
#include "ipevo/excursion_sampler.hpp"
#include "ipevo/params.hpp"
#include "ipevo/spindle.hpp"
#include "ipevo/stats.hpp"

using namespace ipevo;

namespace {
const DiffusionParams kP{0.5, 1, 1};

Spindle sample(double z, std::uint64_t seed, std::size_t n = 64) {
    Rng rng(seed);
    SpindleSamplerConfig cfg;
    cfg.n_grid = n;
    return sample_spindle_given_lifetime(kP, z, cfg, rng);
}
}  // namespace

TEST_SUITE("spindle") {

TEST_CASE("basic operations") {
    const auto f = sample(1.3, 1);
    CHECK(f.lifetime() == doctest::Approx(1.3));
    CHECK(f.birth() == 0);
    CHECK(f.death() == 0);
    CHECK(reverse(reverse(f)) == f);
    CHECK(scale_spindle(1, f, 1) == f);
    const auto g = scale_spindle(2, f, 1);
    CHECK(g.lifetime() == doctest::Approx(2 * f.lifetime()));
    CHECK(g.amplitude() == doctest::Approx(2 * f.amplitude()));
    CHECK(f.value(-1) == 0);
    CHECK(f.value(2) == 0);
    const auto r = reverse(f);
    CHECK(r.value(0.3) == doctest::Approx(f.value(1.0)));
}

TEST_CASE("split and join are exact") {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const auto f = sample(0.5 + 0.1 * double(s), s, 32);
        for (double frac : {0.01, 0.25, 0.37, 0.99}) {
            const double u = frac * f.lifetime();
            const auto sp = split_spindle(f, u);
            CHECK(sp.check.lifetime() + sp.hat.lifetime() == doctest::Approx(f.lifetime()));
            CHECK(join_spindle(sp.check, sp.hat) == f);
            for (std::size_t k = 0; k < f.h.size(); ++k) {
                const double x = f.h[k];
                if (x < u) CHECK(sp.check.value(x) == doctest::Approx(f.v[k]));
            }
        }
    }
}

TEST_CASE("json round trip") {
    const auto f = sample(0.8, 4);
    CHECK(Spindle::from_json(nlohmann::json::parse(f.to_json().dump())) == f);
}

TEST_CASE("bridge marginal matches grid samples") {
    // value at mid-height: sampled bridges vs exact one-point marginal
    std::vector<double> a, b;
    Rng rng(9);
    for (int i = 0; i < 4000; ++i) {
        a.push_back(sample_unit_bridge(0.5, 2, rng)[1]);
        b.push_back(bridge_value(kP, 1, 0.5, rng));
    }
    CHECK(stats::ks_two_sample(a, b).p > 1e-3);
    // BESQ(4+2a) bridge 0->0 at t=1/2: mean = delta * t(1-t) = 5 * 0.25
    CHECK(stats::mean(b) == doctest::Approx(1.25).epsilon(0.05));
}

TEST_CASE("bridge and reference samplers agree") {
    SpindleSamplerConfig ref;
    ref.method = SpindleMethod::reference;
    ref.n_grid = 32;
    SpindleSamplerConfig br;
    br.n_grid = 32;
    std::vector<double> a, b;
    for (int i = 0; i < 600; ++i) {
        Rng r1 = make_rng(5, "ref", i), r2 = make_rng(5, "br", i);
        a.push_back(sample_spindle_given_lifetime(kP, 1, ref, r1).amplitude());
        b.push_back(sample_spindle_given_lifetime(kP, 1, br, r2).amplitude());
    }
    CHECK(stats::ks_two_sample(a, b).p > 1e-3);
}

TEST_CASE("reversal invariance of sampled spindles") {
    std::vector<double> a, b, ma, mb;
    for (int i = 0; i < 2000; ++i) {
        const auto f = sample(1, 100 + i, 16), g = sample(1, 50000 + i, 16);
        const auto r = reverse(g);
        a.push_back(f.amplitude());
        b.push_back(r.amplitude());
        ma.push_back(f.value(0.25));
        mb.push_back(r.value(0.25));
    }
    CHECK(stats::ks_two_sample(a, b).p > 0.01);
    CHECK(stats::ks_two_sample(ma, mb).p > 0.01);
}

TEST_CASE("amplitude tail of the truncated excursion measure") {
    // lifetimes from nu restricted to zeta > eps; amplitudes above m >> eps come from long spindles,
    // so P(A > m) ~ nu{A > m} / nu{zeta > eps}. The grid maximum misses the peak by O(n_grid^-1/2),
    // so the two grids are extrapolated.
    const double eps = 0.01, m = 0.1;
    const int n = 20000;
    double ph[2];
    const std::size_t grids[2] = {64, 256};
    for (int g = 0; g < 2; ++g) {
        Rng rng(77 + g);
        SpindleSamplerConfig cfg;
        cfg.n_grid = grids[g];
        int hit = 0;
        for (int i = 0; i < n; ++i) {
            const double z = eps * std::pow(uniform_open(rng), -1 / 1.5);
            hit += sample_spindle_given_lifetime(kP, z, cfg, rng).amplitude() > m;
        }
        ph[g] = double(hit) / n;
    }
    const double ref = nu_tail(kP, TailKind::amplitude, m) / nu_tail(kP, TailKind::lifetime, eps);
    const double ext = 2 * ph[1] - ph[0];
    const double se = std::sqrt(5 * ref * (1 - ref) / n);
    CHECK(ph[1] < ref);
    CHECK(std::abs(ext - ref) < 3 * se);
}

}

TEST_SUITE("block_diffusion") {

TEST_CASE("zero mass is absorbing") {
    Rng rng(1);
    const auto r = simulate_block_diffusion(kP, 0, 1e-3, rng);
    CHECK(r.path.empty());
    CHECK(r.absorption == 0);
    CHECK(sample_lifetime(kP, 0, rng) == 0);
    CHECK_THROWS_AS(simulate_block_diffusion(kP, 1, 0, rng), ValidationError);
    CHECK_THROWS_AS(simulate_block_diffusion(kP, 100, 1e-2, rng, 16, 0.5), BudgetError);
}

TEST_CASE("exact lifetime law") {
    Rng rng(2);
    std::vector<double> z(20000);
    for (auto& x : z) x = sample_lifetime(kP, 2, rng);
    const auto m = stats::batch_means(z);
    CHECK(std::abs(m.mean - 2.0) < 3 * m.se);
    // P(zeta > 1/2) at a=1 equals P(Gamma(1.5) < 1)
    CHECK(boost::math::gamma_p(1.5, 1.0) == doctest::Approx(0.42759).epsilon(1e-4));
    std::size_t hit = 0;
    for (int i = 0; i < 20000; ++i) hit += sample_lifetime(kP, 1, rng) > 0.5;
    const double ph = double(hit) / 20000;
    CHECK(std::abs(ph - 0.42759) < 3 * std::sqrt(0.42759 * 0.57241 / 20000));
}

TEST_CASE("Euler path: mean lifetime and endpoints") {
    Rng rng(3);
    std::vector<double> z(4000);
    for (auto& x : z) {
        const auto r = simulate_block_diffusion(kP, 2, 1e-3, rng, 16);
        CHECK(r.path.birth() == 2);
        CHECK(r.path.death() == 0);
        x = r.absorption;
    }
    const auto m = stats::batch_means(z);
    // Euler bias at dt=1e-3 is far below the 4000-sample SE
    CHECK(std::abs(m.mean - 2.0) < 3 * m.se + 0.02);
}

TEST_CASE("amplitude hitting probability") {
    Rng rng(4);
    const int n = 20000;
    int hit = 0;
    for (int i = 0; i < n; ++i) hit += euler_amplitude(kP, 1, 1e-3, 2, rng) >= 2;
    const double ref = std::pow(2, -1.5), ph = double(hit) / n;
    CHECK(std::abs(ph - ref) < 3 * std::sqrt(ref * (1 - ref) / n) + 0.01);
}

TEST_CASE("coupled lifetime pair") {
    Rng rng(5);
    double sc = 0, sf = 0;
    for (int i = 0; i < 5000; ++i) {
        const auto [c, f] = euler_lifetime_pair(kP, 1, 1e-3, rng);
        CHECK(c > 0);
        CHECK(f > 0);
        sc += c, sf += f;
    }
    CHECK(sc / 5000 == doctest::Approx(1.0).epsilon(0.05));
    CHECK(sf / 5000 == doctest::Approx(1.0).epsilon(0.05));
}

}

TEST_SUITE("spindle") {

TEST_CASE("scaling is a group action") {
    const auto f = sample(0.7, 21);
    for (double q : {1.0, 2.0})
        for (auto [a, b] : {std::pair{2.0, 0.5}, std::pair{0.3, 1.7}}) {
            const auto l = scale_spindle(a, scale_spindle(b, f, q), q), r = scale_spindle(a * b, f, q);
            REQUIRE(l.h.size() == r.h.size());
            for (std::size_t k = 0; k < l.h.size(); ++k) {
                CHECK(l.h[k] == doctest::Approx(r.h[k]).epsilon(1e-13));
                CHECK(l.v[k] == doctest::Approx(r.v[k]).epsilon(1e-13));
            }
        }
}

}

TEST_SUITE("block_diffusion") {

TEST_CASE("(q, c) paths are the BESQ path under x -> c x^q") {
    const DiffusionParams pq{0.5, 2, 3};
    for (std::uint64_t s = 1; s <= 20; ++s) {
        Rng r1(s), r2(s);
        const double a = 0.7;
        const auto P = simulate_block_diffusion(pq, a, 1e-3, r1, 32);
        const auto B = simulate_block_diffusion(kP, std::pow(a / 3, 0.5), 1e-3, r2, 32);
        CHECK(P.absorption == B.absorption);
        REQUIRE(P.path.v.size() == B.path.v.size());
        for (std::size_t k = 1; k < P.path.v.size(); ++k)
            CHECK(P.path.v[k] == doctest::Approx(3 * B.path.v[k] * B.path.v[k]).epsilon(1e-12));
    }
}

}
