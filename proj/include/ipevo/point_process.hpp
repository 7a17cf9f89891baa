#pragma once
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "ipevo/excursion_sampler.hpp"
#include "ipevo/params.hpp"
#include "ipevo/random.hpp"
#include "ipevo/spindle.hpp"

namespace ipevo {

struct SpindlePoint {
    double t;
    Spindle f;
};

// Finite point process of spindles with strictly increasing times.
// Point times are stored in the coordinates of the process they were cut from; the process
// occupies [origin, end] there and its own time is t - origin. Shifted restrictions therefore
// never round point times, and pieces of one process concatenate back exactly.
struct SpindlePointProcess {
    DiffusionParams params;
    double cutoff = 1e-3;  // jump cutoff eps; fixes the compensation drift
    double origin = 0;
    double end = 0;
    std::vector<SpindlePoint> points;
    std::uint64_t seed = 0;  // provenance only

    void validate() const;
    std::size_t size() const { return points.size(); }
    double length() const { return end - origin; }
    double time(std::size_t i) const { return origin == 0 ? points[i].t : points[i].t - origin; }
    bool operator==(const SpindlePointProcess& o) const;
};

struct PrmConfig {
    SpindleSamplerConfig spindle;
    double max_points = 5e6;
};

// Poisson random measure of spindles with lifetime > eps on [0,T]
SpindlePointProcess sample_prm(const DiffusionParams& p, double eps, double T, Rng& rng,
                               const PrmConfig& cfg = {});

// points with t in [a,b]; shift moves a to 0
SpindlePointProcess restrict(const SpindlePointProcess& N, double a, double b, bool shift);
// time-shifted union; lengths add. Members that abut exactly (end == next origin) keep their
// stored times.
SpindlePointProcess concat_pp(const std::vector<SpindlePointProcess>& family);

// JSONL: header {"alpha","q","c","cutoff","horizon","seed"} then {"t","spindle"} per point
void write_jsonl(std::ostream& os, const SpindlePointProcess& N);
SpindlePointProcess read_jsonl(std::istream& is);

}  // namespace ipevo
