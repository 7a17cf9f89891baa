#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>

#include "ipevo/errors.hpp"
#include "ipevo/params.hpp"

using namespace ipevo;

TEST_SUITE("params") {

TEST_CASE("validation") {
    CHECK_THROWS_AS((DiffusionParams{0, 1, 1}.validate()), ValidationError);
    CHECK_THROWS_AS((DiffusionParams{1, 1, 1}.validate()), ValidationError);
    CHECK_THROWS_AS((DiffusionParams{0.5, 0.5, 1}.validate()), ValidationError);  // q <= alpha
    CHECK_THROWS_AS((DiffusionParams{0.5, 1, 0}.validate()), ValidationError);
    CHECK_NOTHROW((DiffusionParams{0.5, 2, 3}.validate()));
}

TEST_CASE("closed forms at alpha = 1/2") {
    const DiffusionParams p{0.5, 1, 1};
    // c_nu = alpha / (2^alpha Gamma(1-alpha) Gamma(1+alpha)) * (1+alpha), from nu{zeta>1}
    const double tail1 = 0.5 / (std::sqrt(2.0) * std::tgamma(0.5) * std::tgamma(1.5));
    CHECK(nu_tail(p, TailKind::lifetime, 1) == doctest::Approx(tail1).epsilon(1e-12));
    CHECK(nu_tail(p, TailKind::lifetime, 1) == doctest::Approx(0.22508).epsilon(1e-4));
    CHECK(nu_tail(p, TailKind::amplitude, 1) == doctest::Approx(2 * 0.5 * 1.5 / std::tgamma(0.5)).epsilon(1e-12));
    CHECK(nu_tail(p, TailKind::amplitude, 1) == doctest::Approx(0.84628).epsilon(1e-4));
    CHECK(c_nu(p) == doctest::Approx(0.33762).epsilon(1e-4));
    CHECK(nu_tail(p, TailKind::lifetime, 1) / nu_tail(p, TailKind::lifetime, 2) == doctest::Approx(std::pow(2, 1.5)));
    CHECK(parse_tail_kind("amplitude") == TailKind::amplitude);
    CHECK_THROWS_AS(parse_tail_kind("x"), ValidationError);
}

TEST_CASE("rates agree with quadrature of the Levy density") {
    for (double alpha : {0.3, 0.5, 0.7}) {
        const DiffusionParams p{alpha, 1, 1};
        const double c = c_nu(p);
        auto dens = [&](double x) { return c * std::pow(x, -2 - alpha); };
        boost::math::quadrature::exp_sinh<double> es;
        for (double eps : {1e-2, 0.1, 1.0}) {
            const double rate = es.integrate([&](double u) { return dens(eps + u); });
            CHECK(jump_rate(p, eps) == doctest::Approx(rate).epsilon(1e-8));
            CHECK(nu_tail(p, TailKind::lifetime, eps) == doctest::Approx(rate).epsilon(1e-8));
            const double drift = es.integrate([&](double u) { return (eps + u) * dens(eps + u); });
            CHECK(compensation_slope(p, eps) == doctest::Approx(drift).epsilon(1e-8));
        }
        // psi(lambda) = int (e^{-lambda x} - 1 + lambda x) nu(dx)
        for (double lam : {0.5, 1.0, 3.0}) {
            auto g = [&](double x) {
                const double u = lam * x;
                // series near 0 avoids cancellation against the x^{-2-alpha} blow-up
                if (u < 1e-4) return c * lam * lam * (0.5 - u / 6) * std::pow(x, -alpha);
                return (std::expm1(-u) + u) * dens(x);
            };
            boost::math::quadrature::tanh_sinh<double> ts;
            const double lo = ts.integrate(g, 0.0, 1.0);
            const double hi = es.integrate([&](double u) { return g(1 + u); });
            CHECK(scaffold_laplace_exponent(p, lam) == doctest::Approx(lo + hi).epsilon(1e-6));
        }
    }
}

}
