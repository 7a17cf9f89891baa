#include "ipevo/params.hpp"

#include <cmath>

#include "ipevo/errors.hpp"

namespace ipevo {

void DiffusionParams::validate() const {
    if (!(alpha > 0 && alpha < 1)) throw ValidationError("alpha must lie in (0,1)");
    if (!(q > alpha)) throw ValidationError("q must exceed alpha");
    if (!(c > 0)) throw ValidationError("c must be positive");
}

double c_nu(const DiffusionParams& p) {
    const double a = p.alpha, r = p.alpha / p.q;
    // int_0^1 E[f(y)^r] dy for the unit-lifetime excursion is 2^a Gamma(1+a)/(1+a) at r = a/q
    // after the mass map c Z^q, giving the general constant below
    return a * (1 + a) / (std::tgamma(1 - r) * std::pow(p.c, r) * std::pow(2.0, a) * std::tgamma(1 + a));
}

double nu_tail(const DiffusionParams& p, TailKind kind, double x) {
    if (!(x > 0)) throw ValidationError("tail argument must be positive");
    const double a = p.alpha, cn = c_nu(p);
    if (kind == TailKind::lifetime) return cn * std::pow(x, -1 - a) / (1 + a);
    // BESQ amplitude tail 2a(1+a) m^{-1-a}/Gamma(1-a), rescaled by the c_nu ratio and the mass map
    const double besq = a * (1 + a) / (std::pow(2.0, a) * std::tgamma(1 - a) * std::tgamma(1 + a));
    const double m = std::pow(x / p.c, 1 / p.q);
    return (cn / besq) * 2 * a * (1 + a) * std::pow(m, -1 - a) / std::tgamma(1 - a);
}

TailKind parse_tail_kind(const std::string& s) {
    if (s == "lifetime") return TailKind::lifetime;
    if (s == "amplitude") return TailKind::amplitude;
    throw ValidationError("tail kind must be lifetime or amplitude");
}

ExcursionMeasureTable::ExcursionMeasureTable(const DiffusionParams& p) : params(p), c_nu(ipevo::c_nu(p)) {
    p.validate();
}

double compensation_slope(const DiffusionParams& p, double eps) {
    return c_nu(p) * std::pow(eps, -p.alpha) / p.alpha;
}

double jump_rate(const DiffusionParams& p, double eps) { return nu_tail(p, TailKind::lifetime, eps); }

double scaffold_laplace_exponent(const DiffusionParams& p, double lambda) {
    const double a = p.alpha;
    return c_nu(p) * std::tgamma(1 - a) / (a * (1 + a)) * std::pow(lambda, 1 + a);
}

}  // namespace ipevo
