#pragma once
#include <vector>

#include <json.hpp>

namespace ipevo {

// A sampled excursion in mass units: piecewise linear through knots (heights, values)
// with heights running from 0 to the lifetime. Fresh spindles use a uniform grid;
// splitting adds a knot at the cut, so split halves reassemble exactly.
// Outside [0, lifetime] the spindle is 0; birth/death values may be nonzero (broken spindles).
// Knot heights are stored with an offset h.front() (nonzero only for hat halves) so that
// a split never rounds the original knots.
struct Spindle {
    std::vector<double> h;  // knot heights; the spindle lives on [h.front(), h.back()]
    std::vector<double> v;  // values
    bool uniform = true;
    // set on split halves: bit 0 = the cut knot was inserted, bit 1 = parent grid was uniform
    unsigned char split_bits = 0;

    static Spindle from_uniform(double lifetime, std::vector<double> values);

    bool empty() const { return h.empty(); }
    double lifetime() const { return h.empty() ? 0.0 : h.back() - h.front(); }
    double birth() const { return v.empty() ? 0.0 : v.front(); }
    double death() const { return v.empty() ? 0.0 : v.back(); }
    double amplitude() const;
    std::size_t n_grid() const { return h.empty() ? 0 : h.size() - 1; }

    // f(x) on the closed support, i.e. max{f(x-), f(x)}; 0 outside
    double value(double x) const;
    // f(x-) and f(x) for the cadlag convention at birth/death
    double value_left(double x) const;
    double value_right(double x) const;

    nlohmann::json to_json() const;
    static Spindle from_json(const nlohmann::json& j);
    bool operator==(const Spindle& o) const { return h == o.h && v == o.v && uniform == o.uniform; }
};

// R(f)(x) = f((lifetime - x)-)
Spindle reverse(const Spindle& f);
// (a * f)(x) = a^q f(x/a)
Spindle scale_spindle(double a, const Spindle& f, double q);

struct SplitSpindle {
    Spindle check;  // f on [0,u], broken at death with value f(u-)
    Spindle hat;    // f(u + .), broken at birth with value f(u)
};
SplitSpindle split_spindle(const Spindle& f, double u);
// inverse of split_spindle
Spindle join_spindle(const Spindle& check, const Spindle& hat);

}  // namespace ipevo
