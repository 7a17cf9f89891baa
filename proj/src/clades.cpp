#include "ipevo/clades.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "ipevo/block_diffusion.hpp"
#include "ipevo/errors.hpp"

namespace ipevo {

std::vector<ExcursionInterval> excursion_intervals(const Scaffolding& X, double y, double tol) {
    auto at = [&](double v) { return std::abs(v - y) <= tol; };
    std::vector<double> visits;
    auto add = [&](double t) {
        if (visits.empty() || t > visits.back()) visits.push_back(t);
    };
    double ts = 0, vs = X.start();
    for (std::size_t i = 0; i <= X.jumps(); ++i) {
        const bool last = i == X.jumps();
        const double te = last ? X.horizon() : X.jump_time(i);
        const double ve = last ? vs - X.slope() * (X.horizon() - ts) : X.before(i);
        if (at(vs)) add(ts);
        else if (ve < y && y < vs && !at(ve)) add(std::min(te, ts + (vs - y) / X.slope()));
        if (at(ve)) add(te);
        if (!last) ts = te, vs = X.after(i);
    }
    const double len = X.horizon();
    std::vector<ExcursionInterval> out;
    if (visits.empty()) {
        out.push_back({0, len, true, true, IntervalKind::first_incomplete});
        return out;
    }
    auto rule = [&](ExcursionInterval I) {
        if (I.a < I.b) {
            // a jump landing on y belongs to the excursion before it; one leaving y to the one after
            I.includes_a = !(X.value_left(I.a) < y && !at(X.value_left(I.a)) && at(X.value(I.a)));
            I.includes_b = !(at(X.value_left(I.b)) && X.value(I.b) > y && !at(X.value(I.b)));
        }
        return I;
    };
    if (visits.front() > 0) out.push_back(rule({0, visits.front(), true, true, IntervalKind::first_incomplete}));
    for (std::size_t k = 0; k + 1 < visits.size(); ++k)
        out.push_back(rule({visits[k], visits[k + 1], true, true, IntervalKind::complete}));
    if (visits.back() < len) out.push_back(rule({visits.back(), len, true, true, IntervalKind::last_incomplete}));
    return out;
}

double central_mass(const SpindlePointProcess& N, double level) {
    const Scaffolding X = xi(N);
    double m = 0;
    for (std::size_t i = 0; i < N.size(); ++i) m += N.points[i].f.value(level - X.before(i));
    return m;
}

BiClade make_biclade(SpindlePointProcess N, double level, double s, IntervalKind kind) {
    BiClade B;
    const Scaffolding X = xi(N);
    B.level = level;
    B.s = s;
    B.kind = kind;
    if (X.start() > level) {
        B.T0plus = 0.0;
    } else {
        for (std::size_t i = 0; i < X.jumps(); ++i)
            if (X.after(i) >= level) {
                B.T0plus = X.jump_time(i);
                break;
            }
    }
    for (std::size_t i = 0; i < N.size(); ++i) B.m0 += N.points[i].f.value(level - X.before(i));
    B.zeta_plus = std::max(0.0, X.max_value() - level);
    B.zeta_minus = std::max(0.0, level - X.min_value());
    B.process = std::move(N);
    return B;
}

std::vector<BiClade> decompose_biclades(const SpindlePointProcess& N, double y) {
    const Scaffolding X = xi(N);
    const LocalTimeProfile lt(X, y);
    std::vector<BiClade> out;
    const auto iv = excursion_intervals(X, y);
    std::size_t i = 0;
    for (const auto& I : iv) {
        SpindlePointProcess P;
        P.params = N.params;
        P.cutoff = N.cutoff;
        P.seed = N.seed;
        P.origin = N.origin == 0 ? I.a : N.origin + I.a;
        P.end = N.origin == 0 ? I.b : N.origin + I.b;
        if (&I == &iv.back()) P.end = N.end;
        bool first_in = false;
        for (; i < N.size(); ++i) {
            const double t = N.time(i);
            if (t > I.b || (t == I.b && !I.includes_b)) break;
            if (!I.contains(t)) continue;
            if (t == I.a) first_in = true;
            P.points.push_back(N.points[i]);
        }
        // own scaffolding is X(a + .) - X(a-) when a point at a is included, else X(a + .) - X(a)
        const double base = first_in ? X.value_left(I.a) : X.value(I.a);
        double level = y - base;
        if (I.kind != IntervalKind::first_incomplete && std::abs(level) < 1e-12 * std::max(1.0, std::abs(y)))
            level = 0;
        out.push_back(make_biclade(std::move(P), level, lt.at(I.a), I.kind));
    }
    return out;
}

SpindlePointProcess reassemble(const std::vector<BiClade>& parts) {
    std::vector<SpindlePointProcess> ps;
    for (const auto& b : parts) ps.push_back(b.process);
    return concat_pp(ps);
}

SplitBiClade split_biclade(const BiClade& B) {
    const auto& N = B.process;
    SplitBiClade out;
    out.anti = out.clade = N;
    out.anti.points.clear(), out.clade.points.clear();
    auto all_anti = [&] {
        out.anti = N;
        out.clade.origin = N.end;
        return out;
    };
    auto all_clade = [&] {
        out.clade = N;
        out.anti.end = N.origin;
        return out;
    };
    if (!B.T0plus) return all_anti();
    const Scaffolding X = xi(N);
    if (X.start() > B.level) return all_clade();
    std::size_t k = 0;
    while (k < N.size() && N.time(k) < *B.T0plus) ++k;
    if (k == N.size()) return all_anti();
    const double u = B.level - X.before(k);
    if (!(u > 0)) return all_clade();
    if (!(u < N.points[k].f.lifetime())) return all_anti();
    auto halves = split_spindle(N.points[k].f, u);
    const double T = N.points[k].t;  // stored time, kept exact on both sides
    out.anti.end = T;
    out.clade.origin = T;
    for (std::size_t i = 0; i < k; ++i) out.anti.points.push_back(N.points[i]);
    out.anti.points.push_back({T, std::move(halves.check)});
    out.clade.points.push_back({T, std::move(halves.hat)});
    for (std::size_t i = k + 1; i < N.size(); ++i) out.clade.points.push_back(N.points[i]);
    return out;
}

SpindlePointProcess join_biclade(const SplitBiClade& s) {
    if (s.anti.points.empty() && s.anti.length() == 0) return s.clade;
    if (s.clade.points.empty() && s.clade.length() == 0) return s.anti;
    SpindlePointProcess N = s.anti;
    N.end = s.clade.end;
    // a split leaves the two halves at the same stored time
    if (!s.clade.points.empty() && !N.points.empty() && N.points.back().t == s.clade.points.front().t) {
        N.points.back().f = join_spindle(N.points.back().f, s.clade.points.front().f);
        N.points.insert(N.points.end(), s.clade.points.begin() + 1, s.clade.points.end());
    } else {
        N.points.insert(N.points.end(), s.clade.points.begin(), s.clade.points.end());
    }
    return N;
}

SpindlePointProcess cutoff(const SpindlePointProcess& N, double y, CutoffSide side) {
    const Scaffolding X = xi(N);
    // nothing to remove: return the input itself rather than a re-timed copy
    if (side == CutoffSide::below && X.max_value() < y) return N;
    const double inf = kNever;
    auto below_time = [&](double t) { return X.occupation(-inf, y, t); };
    SpindlePointProcess C;
    C.params = N.params;
    C.cutoff = N.cutoff;
    C.seed = N.seed;
    const double len = N.length(), sig = below_time(len);
    C.end = side == CutoffSide::below ? sig : len - sig;
    for (std::size_t i = 0; i < N.size(); ++i) {
        const double t = N.time(i), b = X.before(i), a = X.after(i);
        const auto& f = N.points[i].f;
        if (side == CutoffSide::below) {
            if (!(b < y)) continue;
            const double nt = std::min(below_time(t), C.end);
            if (a <= y)
                C.points.push_back({nt, f});
            else
                C.points.push_back({nt, split_spindle(f, y - b).check});
        } else {
            if (!(a > y)) continue;
            const double nt = std::clamp(t - below_time(t), 0.0, C.end);
            if (b >= y)
                C.points.push_back({nt, f});
            else
                C.points.push_back({nt, split_spindle(f, y - b).hat});
        }
    }
    C.validate();
    return C;
}

SpindlePointProcess reverse_process(const SpindlePointProcess& N) {
    SpindlePointProcess R;
    R.params = N.params;
    R.cutoff = N.cutoff;
    R.seed = N.seed;
    R.end = N.length();
    for (std::size_t k = N.size(); k-- > 0;) R.points.push_back({N.length() - N.time(k), reverse(N.points[k].f)});
    return R;
}

BiClade reverse_biclade(const BiClade& B) {
    const double endv = xi(B.process).end_value();
    return make_biclade(reverse_process(B.process), endv - B.level, B.s, B.kind);
}

BiClade sample_clade_given_m0(double a, const DiffusionParams& p, const EvolveConfig& cfg, Rng& rng, bool anti) {
    if (!(a > 0)) throw ValidationError("central mass must be positive");
    SpindlePointProcess N;
    N.params = p;
    N.cutoff = cfg.eps;
    auto bd = simulate_block_diffusion(p, a, cfg.dt, rng, cfg.n_grid);
    const double slope = compensation_slope(p, cfg.eps), rate = jump_rate(p, cfg.eps);
    double x = bd.path.lifetime(), t = 0, budget = cfg.max_points;
    N.points.push_back({0, std::move(bd.path)});
    for (;;) {
        const double w = exponential(rng) / rate;
        if (x - slope * w <= 0) {
            t += x / slope;
            break;
        }
        t += w;
        x -= slope * w;
        const double z = cfg.eps * std::pow(uniform_open(rng), -1 / (1 + p.alpha));
        N.points.push_back({t, spindle_from_seed(p, z, cfg.n_grid, rng())});
        x += z;
        if (--budget < 0) throw BudgetError("sample_clade_given_m0: point budget exhausted");
    }
    N.end = t;
    BiClade B = make_biclade(std::move(N), 0, 0, IntervalKind::complete);
    return anti ? reverse_biclade(B) : B;
}

void write_biclades_jsonl(std::ostream& os, const std::vector<BiClade>& bs) {
    for (const auto& b : bs) {
        nlohmann::json h{{"s", b.s},
                         {"m0", b.m0},
                         {"T0plus", b.T0plus ? nlohmann::json(*b.T0plus) : nlohmann::json(nullptr)},
                         {"zeta_plus", b.zeta_plus},
                         {"level", b.level},
                         {"alpha", b.process.params.alpha},
                         {"q", b.process.params.q},
                         {"c", b.process.params.c},
                         {"cutoff", b.process.cutoff},
                         {"horizon", b.process.length()},
                         {"points", b.process.size()}};
        os << h.dump() << '\n';
        for (std::size_t i = 0; i < b.process.size(); ++i)
            os << nlohmann::json{{"t", b.process.time(i)}, {"spindle", b.process.points[i].f.to_json()}}.dump()
               << '\n';
    }
}

}  // namespace ipevo
