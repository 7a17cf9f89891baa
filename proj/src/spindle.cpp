#include "ipevo/spindle.hpp"

#include <algorithm>
#include <cmath>

#include "ipevo/errors.hpp"

namespace ipevo {

Spindle Spindle::from_uniform(double lifetime, std::vector<double> values) {
    Spindle f;
    if (values.empty()) return f;
    if (values.size() < 2 || !(lifetime > 0)) throw ValidationError("spindle needs a positive lifetime and two samples");
    const std::size_t n = values.size() - 1;
    f.h.resize(n + 1);
    for (std::size_t i = 0; i < n; ++i) f.h[i] = lifetime * double(i) / double(n);
    f.h[n] = lifetime;
    f.v = std::move(values);
    return f;
}

double Spindle::amplitude() const { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

double Spindle::value(double x) const {
    if (h.empty() || x < 0) return 0;
    if (h.front() != 0) x += h.front();
    if (x > h.back()) return 0;
    auto it = std::lower_bound(h.begin(), h.end(), x);
    std::size_t k = std::size_t(it - h.begin());
    if (*it == x) return v[k];
    const double w = (x - h[k - 1]) / (h[k] - h[k - 1]);
    return v[k - 1] + w * (v[k] - v[k - 1]);
}

double Spindle::value_left(double x) const { return x <= 0 ? 0.0 : value(x); }
double Spindle::value_right(double x) const { return (h.empty() || x >= lifetime()) ? 0.0 : value(x); }

nlohmann::json Spindle::to_json() const {
    nlohmann::json j{{"zeta", lifetime()}, {"birth", birth()}, {"death", death()}, {"samples", v}};
    if (!uniform) {
        auto k = h;
        for (auto& x : k) x -= h.front();
        j["knots"] = k;
    }
    return j;
}

Spindle Spindle::from_json(const nlohmann::json& j) {
    try {
        auto vals = j.at("samples").get<std::vector<double>>();
        Spindle f;
        if (j.contains("knots")) {
            f.h = j["knots"].get<std::vector<double>>();
            f.v = std::move(vals);
            f.uniform = false;
            if (f.h.size() != f.v.size()) throw ValidationError("spindle knots/samples length mismatch");
        } else {
            f = from_uniform(j.at("zeta").get<double>(), std::move(vals));
        }
        for (double x : f.v)
            if (!(x >= 0)) throw ValidationError("spindle values must be nonnegative");
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed spindle JSON: ") + e.what());
    }
}

Spindle reverse(const Spindle& f) {
    // a uniform grid is symmetric, so rebuilding it keeps reverse an exact involution
    if (f.uniform && !f.h.empty() && f.h.front() == 0 && f.split_bits == 0)
        return Spindle::from_uniform(f.h.back(), std::vector<double>(f.v.rbegin(), f.v.rend()));
    Spindle r;
    r.uniform = f.uniform;
    const double z = f.lifetime();
    r.h.resize(f.h.size());
    r.v.assign(f.v.rbegin(), f.v.rend());
    for (std::size_t i = 0; i < f.h.size(); ++i) r.h[i] = f.h.back() - f.h[f.h.size() - 1 - i];
    if (!r.h.empty()) r.h.front() = 0, r.h.back() = z;
    return r;
}

Spindle scale_spindle(double a, const Spindle& f, double q) {
    if (!(a > 0)) throw ValidationError("spindle scale factor must be positive");
    Spindle r = f;
    const double aq = std::pow(a, q);
    const double h0 = f.h.empty() ? 0.0 : f.h.front();
    for (auto& x : r.h) x = h0 == 0 ? x * a : (x - h0) * a;
    for (auto& x : r.v) x *= aq;
    return r;
}

SplitSpindle split_spindle(const Spindle& f, double u) {
    if (!(u > 0 && u < f.lifetime())) throw ValidationError("split level outside (0, lifetime)");
    const double fu = f.value(u);
    const double U = f.h.front() == 0 ? u : f.h.front() + u;
    SplitSpindle s;
    s.check.uniform = s.hat.uniform = false;
    std::size_t k = 0;
    for (; k < f.h.size() && f.h[k] < U; ++k) {
        s.check.h.push_back(f.h[k]);
        s.check.v.push_back(f.v[k]);
    }
    s.check.h.push_back(U);
    s.check.v.push_back(fu);
    s.hat.h.push_back(U);
    s.hat.v.push_back(fu);
    const bool inserted = !(k < f.h.size() && f.h[k] == U);
    if (!inserted) ++k;
    s.check.split_bits = s.hat.split_bits = (inserted ? 1 : 0) | (f.uniform ? 2 : 0);
    for (; k < f.h.size(); ++k) {
        s.hat.h.push_back(f.h[k]);
        s.hat.v.push_back(f.v[k]);
    }
    return s;
}

Spindle join_spindle(const Spindle& check, const Spindle& hat) {
    Spindle f;
    f.h = check.h;
    f.v = check.v;
    f.uniform = (check.split_bits & 2) != 0;
    if (check.split_bits & 1) f.h.pop_back(), f.v.pop_back();
    // a hat produced by split_spindle keeps absolute knots; otherwise shift it on
    const double shift = hat.h.empty() || hat.h.front() == check.h.back() ? 0.0 : check.h.back() - hat.h.front();
    for (std::size_t i = 1; i < hat.h.size(); ++i) {
        f.h.push_back(hat.h[i] + shift);
        f.v.push_back(hat.v[i]);
    }
    return f;
}

}  // namespace ipevo
