#include "ipevo/skewer.hpp"

namespace ipevo {

double aggregate_mass(const SpindlePointProcess& N, const Scaffolding& X, double y, double t) {
    double m = 0;
    for (std::size_t i = 0; i < N.size() && X.jump_time(i) <= t; ++i)
        m += N.points[i].f.value(y - X.before(i));
    return m;
}

double aggregate_mass(const SpindlePointProcess& N, double y, double t) {
    return aggregate_mass(N, xi(N), y, t);
}

SkewerSnapshot skewer(const SpindlePointProcess& N, const Scaffolding& X, double y) {
    SkewerSnapshot s;
    s.y = y;
    LocalTimeProfile lt(X, y);
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < N.size(); ++i) {
        const double m = N.points[i].f.value(y - X.before(i));
        if (m > kMinBlock) {
            blocks.push_back({m, lt.at(X.jump_time(i))});
            s.block_ids.push_back(X.jump_time(i));
        }
    }
    s.partition = IntervalPartition(N.params.alpha_div(), std::move(blocks), lt.total());
    return s;
}

SkewerSnapshot skewer(const SpindlePointProcess& N, double y) { return skewer(N, xi(N), y); }

}  // namespace ipevo
