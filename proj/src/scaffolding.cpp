#include "ipevo/scaffolding.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ipevo/errors.hpp"

namespace ipevo {

Scaffolding::Scaffolding(std::vector<double> times, std::vector<double> jumps, double slope, double horizon,
                         double x0)
    : t_(std::move(times)), h_(std::move(jumps)), slope_(slope), horizon_(horizon), x0_(x0) {
    if (t_.size() != h_.size()) throw ValidationError("scaffolding: times/jumps size mismatch");
    if (!(slope_ > 0)) throw ValidationError("scaffolding: slope must be positive");
    after_.resize(t_.size());
    double s = 0;
    for (std::size_t i = 0; i < t_.size(); ++i) {
        if (i > 0 && t_[i] < t_[i - 1]) throw ValidationError("scaffolding: unsorted jump times");
        s += h_[i];
        after_[i] = x0_ + s - slope_ * t_[i];
    }
    if (!t_.empty() && horizon_ < t_.back()) throw ValidationError("scaffolding: horizon before last jump");
}

double Scaffolding::value(double t) const {
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    if (it == t_.begin()) return x0_ - slope_ * t;
    const std::size_t i = std::size_t(it - t_.begin()) - 1;
    return after_[i] - slope_ * (t - t_[i]);
}

double Scaffolding::value_left(double t) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), t);
    if (it == t_.begin()) return x0_ - slope_ * t;
    const std::size_t i = std::size_t(it - t_.begin()) - 1;
    return after_[i] - slope_ * (t - t_[i]);
}

double Scaffolding::max_value() const {
    double m = x0_;
    for (double a : after_) m = std::max(m, a);
    return m;
}

double Scaffolding::min_value() const {
    double m = std::min(x0_, end_value());
    for (std::size_t i = 0; i < t_.size(); ++i) m = std::min(m, before(i));
    return m;
}

// visit segments (start time, start value, end time, end value)
template <class F>
static void for_segments(const Scaffolding& X, F&& f) {
    double ts = 0, vs = X.start();
    for (std::size_t i = 0; i < X.jumps(); ++i) {
        const double te = X.jump_time(i);
        if (!f(ts, vs, te, X.before(i))) return;
        ts = te, vs = X.after(i);
    }
    f(ts, vs, X.horizon(), vs - X.slope() * (X.horizon() - ts));
}

std::vector<double> Scaffolding::crossings(double y) const {
    std::vector<double> c;
    for_segments(*this, [&](double ts, double vs, double te, double ve) {
        if (ve < y && y <= vs) c.push_back(std::min(te, ts + (vs - y) / slope_));
        return true;
    });
    return c;
}

double Scaffolding::local_time(double y, double t) const {
    std::size_t n = 0;
    for_segments(*this, [&](double ts, double vs, double te, double ve) {
        if (ts >= t) return false;
        if (ve < y && y <= vs && std::min(te, ts + (vs - y) / slope_) < t) ++n;
        return true;
    });
    return double(n) / slope_;
}

double Scaffolding::inverse_local_time(double y, double s) const {
    if (s < 0) return 0;
    const double k = std::floor(s * slope_) + 1;
    double seen = 0, out = kNever;
    for_segments(*this, [&](double ts, double vs, double te, double ve) {
        if (ve < y && y <= vs && ++seen == k) {
            out = std::min(te, ts + (vs - y) / slope_);
            return false;
        }
        return true;
    });
    return out;
}

double Scaffolding::hitting_time(double y) const {
    double out = kNever;
    for_segments(*this, [&](double ts, double vs, double te, double ve) {
        if (ve <= y && y <= vs) {
            out = std::min(te, ts + (vs - y) / slope_);
            return false;
        }
        return true;
    });
    return out;
}

double Scaffolding::crossing_time(double y) const {
    if (x0_ >= y) return 0;
    for (std::size_t i = 0; i < t_.size(); ++i)
        if (after_[i] >= y) return t_[i];
    return kNever;
}

double Scaffolding::occupation(double lo, double hi, double t) const {
    double occ = 0;
    for_segments(*this, [&](double ts, double vs, double te, double ve) {
        if (ts >= t) return false;
        if (te > t) {
            ve = vs - slope_ * (t - ts);
            te = t;
        }
        // time spent in [lo,hi) while falling from vs to ve
        const double top = std::min(vs, hi), bot = std::max(ve, lo);
        if (top > bot) occ += (top - bot) / slope_;
        return true;
    });
    return occ;
}

void Scaffolding::write_csv(std::ostream& os) const {
    os << "t,X_left,X\n";
    os.precision(17);
    os << 0.0 << ',' << x0_ << ',' << (!t_.empty() && t_[0] == 0 ? after_[0] : x0_) << '\n';
    for (std::size_t i = 0; i < t_.size(); ++i) {
        if (t_[i] == 0) continue;
        os << t_[i] << ',' << before(i) << ',' << after_[i] << '\n';
    }
    os << horizon_ << ',' << value_left(horizon_) << ',' << value(horizon_) << '\n';
}

Scaffolding xi(const SpindlePointProcess& N) {
    std::vector<double> t, h;
    t.reserve(N.size()), h.reserve(N.size());
    for (std::size_t i = 0; i < N.size(); ++i) {
        t.push_back(N.time(i));
        h.push_back(N.points[i].f.lifetime());
    }
    return Scaffolding(std::move(t), std::move(h), compensation_slope(N.params, N.cutoff), N.length());
}

Scaffolding concat_scaffolding(const std::vector<Scaffolding>& family, double tol) {
    if (family.empty()) return Scaffolding({}, {}, 1, 0);
    std::vector<double> t, h;
    double off = 0;
    const double s = family.front().slope();
    for (const auto& X : family) {
        if (X.slope() != s) throw ValidationError("concat_scaffolding: slopes differ");
        const double scale = std::max(1.0, X.max_value());
        if (X.start() != 0 || std::abs(X.end_value()) > tol * scale)
            throw ValidationError("concat_scaffolding: member is not an excursion returning to 0");
        for (std::size_t i = 0; i < X.jumps(); ++i) {
            t.push_back(X.jump_time(i) + off);
            h.push_back(X.jump_height(i));
        }
        off += X.horizon();
    }
    return Scaffolding(std::move(t), std::move(h), s, off);
}

LocalTimeProfile::LocalTimeProfile(const Scaffolding& X, double level)
    : y(level), slope(X.slope()), crossings(X.crossings(level)) {}

double LocalTimeProfile::at(double t) const {
    return double(std::lower_bound(crossings.begin(), crossings.end(), t) - crossings.begin()) / slope;
}

double LocalTimeProfile::inverse(double s) const {
    if (s < 0) return 0;
    const double k = std::floor(s * slope) + 1;
    return k <= double(crossings.size()) ? crossings[std::size_t(k) - 1] : kNever;
}

}  // namespace ipevo
