#pragma once
#include <string>

namespace ipevo {

// (alpha,q,c): block masses are c Z^q for Z a BESQ(-2 alpha) diffusion
struct DiffusionParams {
    double alpha = 0.5;
    double q = 1.0;
    double c = 1.0;

    void validate() const;  // throws ValidationError
    double alpha_div() const { return alpha / q; }
    bool besq() const { return q == 1.0 && c == 1.0; }
};

// normalisation of the spindle measure so that skewer diversity is scaffolding local time:
// nu{zeta in dx} = c_nu x^{-2-alpha} dx
double c_nu(const DiffusionParams& p);

enum class TailKind { lifetime, amplitude };
// nu{zeta > x} or nu{A > x} (amplitude in mass units)
double nu_tail(const DiffusionParams& p, TailKind kind, double x);
TailKind parse_tail_kind(const std::string& s);

struct ExcursionMeasureTable {
    DiffusionParams params;
    double c_nu;
    explicit ExcursionMeasureTable(const DiffusionParams& p);
    double tail(TailKind k, double x) const { return nu_tail(params, k, x); }
};

// drift of the scaffolding truncated at jump cutoff eps: c_nu eps^-alpha / alpha
double compensation_slope(const DiffusionParams& p, double eps);
// rate of jumps > eps: c_nu eps^{-1-alpha}/(1+alpha)
double jump_rate(const DiffusionParams& p, double eps);
// psi(lambda) = log E exp(-lambda X_1) of the untruncated scaffolding
double scaffold_laplace_exponent(const DiffusionParams& p, double lambda);

}  // namespace ipevo
