#pragma once
#include <vector>

#include "ipevo/interval_partition.hpp"
#include "ipevo/point_process.hpp"
#include "ipevo/scaffolding.hpp"

namespace ipevo {

// blocks below this are interpolation noise at spindle ends
inline constexpr double kMinBlock = 1e-12;

struct SkewerSnapshot {
    double y = 0;
    IntervalPartition partition;
    std::vector<double> block_ids;  // point time of the spindle behind each block
};

// sum over points u <= t of the spindle value at height y - X(u-)
double aggregate_mass(const SpindlePointProcess& N, double y, double t);
double aggregate_mass(const SpindlePointProcess& N, const Scaffolding& X, double y, double t);

// one block per spindle alive at level y, in time order, marked with the level-y local time
SkewerSnapshot skewer(const SpindlePointProcess& N, double y);
SkewerSnapshot skewer(const SpindlePointProcess& N, const Scaffolding& X, double y);

}  // namespace ipevo
