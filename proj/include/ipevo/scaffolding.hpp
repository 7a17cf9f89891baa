#pragma once
#include <iosfwd>
#include <limits>
#include <vector>

#include "ipevo/point_process.hpp"

namespace ipevo {

inline constexpr double kNever = std::numeric_limits<double>::infinity();

// Piecewise-linear path with upward jumps and constant negative slope:
// X(t) = x0 + sum_{t_i <= t} jump_i - slope * t on [0, horizon].
class Scaffolding {
public:
    Scaffolding() = default;
    Scaffolding(std::vector<double> times, std::vector<double> jumps, double slope, double horizon,
                double x0 = 0);

    std::size_t jumps() const { return t_.size(); }
    double jump_time(std::size_t i) const { return t_[i]; }
    double jump_height(std::size_t i) const { return h_[i]; }
    const std::vector<double>& jump_times() const { return t_; }
    double before(std::size_t i) const { return after_[i] - h_[i]; }  // X(t_i-)
    double after(std::size_t i) const { return after_[i]; }           // X(t_i)
    double slope() const { return slope_; }
    double horizon() const { return horizon_; }
    double start() const { return x0_; }
    double end_value() const { return value(horizon_); }

    double value(double t) const;       // X(t)
    double value_left(double t) const;  // X(t-)
    double max_value() const;
    double min_value() const;

    // drift down-crossing times of level y: segments with X(end) < y <= X(start)
    std::vector<double> crossings(double y) const;
    // occupation density of level y on [0,t]; each crossing before t carries 1/slope
    double local_time(double y, double t) const;
    // inf{t : local_time(y,t) > s}, kNever if not reached
    double inverse_local_time(double y, double s) const;
    double hitting_time(double y) const;   // inf{t : X(t) = y}
    double crossing_time(double y) const;  // inf{t : X(t) >= y}

    // occupation time of [lo,hi) over [0,t], exact
    double occupation(double lo, double hi, double t) const;

    void write_csv(std::ostream& os) const;

private:
    std::vector<double> t_, h_, after_;
    double slope_ = 1, horizon_ = 0, x0_ = 0;
};

Scaffolding xi(const SpindlePointProcess& N);
// gluing of excursions that start and end at 0
Scaffolding concat_scaffolding(const std::vector<Scaffolding>& family, double tol = 1e-9);

// sorted crossing times for one level, for repeated local-time queries
struct LocalTimeProfile {
    double y = 0;
    double slope = 1;
    std::vector<double> crossings;
    LocalTimeProfile() = default;
    LocalTimeProfile(const Scaffolding& X, double y);
    double at(double t) const;        // local time at t
    double inverse(double s) const;   // tau(s)
    double total() const { return double(crossings.size()) / slope; }
};

}  // namespace ipevo
