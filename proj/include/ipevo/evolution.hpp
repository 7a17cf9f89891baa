#pragma once
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ipevo/excursion_sampler.hpp"
#include "ipevo/interval_partition.hpp"
#include "ipevo/params.hpp"
#include "ipevo/random.hpp"
#include "ipevo/skewer.hpp"

namespace ipevo {

struct EvolveConfig {
    double eps = 1e-3;             // jump cutoff of the clade point processes
    double dt = 1e-3;              // Euler step of the initial block diffusions
    std::size_t n_grid = 128;      // samples per materialised spindle
    double max_points = 5e7;       // budget over all clades
};

struct EvolutionPath {
    DiffusionParams params;
    EvolveConfig config;
    std::uint64_t seed = 0;
    std::vector<double> levels;
    std::vector<SkewerSnapshot> snapshots;
};

// Skewer of the concatenation of independent clades, one per block of beta, read at each level.
// Clade scaffoldings are cut off above the top level (excursions above it are excised), which
// leaves every queried level untouched and keeps the per-clade work bounded.
EvolutionPath evolve(const IntervalPartition& beta, const DiffusionParams& p, const std::vector<double>& levels,
                     const EvolveConfig& cfg, Rng& rng);

// concatenation of independent single-block evolutions read at level y > 0
IntervalPartition transition_sample(const IntervalPartition& beta, double y, const DiffusionParams& p,
                                    const EvolveConfig& cfg, Rng& rng);

enum class MetricKind { alpha, hausdorff };
MetricKind parse_metric_kind(const std::string& s);

struct HolderFit {
    double exponent;
    std::vector<double> lags;       // level increments used
    std::vector<double> mean_incr;  // mean metric increment per lag
};
// log-log slope of mean metric increments against dyadic level lags; needs >= 50 levels
HolderFit holder_exponent_estimate(const EvolutionPath& path, MetricKind metric, double cutoff = 0);

void write_jsonl(std::ostream& os, const EvolutionPath& path);
EvolutionPath read_evolution_jsonl(std::istream& is);
void write_summary_csv(std::ostream& os, const EvolutionPath& path);

}  // namespace ipevo
