#pragma once
#include <iosfwd>
#include <optional>
#include <vector>

#include "ipevo/evolution.hpp"
#include "ipevo/point_process.hpp"
#include "ipevo/scaffolding.hpp"

namespace ipevo {

enum class IntervalKind { complete, first_incomplete, last_incomplete };

struct ExcursionInterval {
    double a = 0, b = 0;
    bool includes_a = true, includes_b = true;
    IntervalKind kind = IntervalKind::complete;
    bool contains(double t) const {
        return (t > a || (t == a && includes_a)) && (t < b || (t == b && includes_b));
    }
};

// Excursion intervals of X about y. Values within tol of y at segment ends count as y.
std::vector<ExcursionInterval> excursion_intervals(const Scaffolding& X, double y, double tol = 0);

struct BiClade {
    SpindlePointProcess process;  // stored times of the parent, see SpindlePointProcess
    double level = 0;             // reference level in the coordinates of xi(process)
    std::optional<double> T0plus; // crossing time, own time
    double m0 = 0;
    double zeta_plus = 0;         // sup xi - level
    double zeta_minus = 0;        // level - inf xi
    double s = 0;                 // local time of the parent at the interval start
    IntervalKind kind = IntervalKind::complete;
};

// m0(N) = sum of spindle values at height level - xi(t-)
double central_mass(const SpindlePointProcess& N, double level = 0);
// fills T0plus, m0, zeta_plus, zeta_minus from the process
BiClade make_biclade(SpindlePointProcess N, double level = 0, double s = 0,
                     IntervalKind kind = IntervalKind::complete);

// F^y: one bi-clade per excursion interval, in time order
std::vector<BiClade> decompose_biclades(const SpindlePointProcess& N, double y);
// inverse of decompose_biclades
SpindlePointProcess reassemble(const std::vector<BiClade>& parts);

struct SplitBiClade {
    SpindlePointProcess anti;   // N-, ends with the checked half of the crossing spindle
    SpindlePointProcess clade;  // N+, starts with the hatted half
};
SplitBiClade split_biclade(const BiClade& B);
SpindlePointProcess join_biclade(const SplitBiClade& s);

enum class CutoffSide { below, above };
// spindles and scaffolding below / above level y, time-changed to remove the other side
SpindlePointProcess cutoff(const SpindlePointProcess& N, double y, CutoffSide side);

// R_cld: reverse point order and each spindle
SpindlePointProcess reverse_process(const SpindlePointProcess& N);
BiClade reverse_biclade(const BiClade& B);

// clade with central mass a: delta(0, block diffusion from a) + N|[0, hitting time of -zeta]
BiClade sample_clade_given_m0(double a, const DiffusionParams& p, const EvolveConfig& cfg, Rng& rng,
                              bool anti = false);

void write_biclades_jsonl(std::ostream& os, const std::vector<BiClade>& bs);

}  // namespace ipevo
