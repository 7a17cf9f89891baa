#include "ipevo/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "ipevo/errors.hpp"

namespace ipevo {

void SpindlePointProcess::validate() const {
    params.validate();
    if (!(cutoff > 0)) throw ValidationError("cutoff must be positive");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i > 0 && !(points[i].t > points[i - 1].t)) throw ValidationError("point times must be strictly increasing");
    }
    if (!points.empty() && (points.front().t < origin || end < points.back().t))
        throw ValidationError("point times outside [origin, end]");
    if (end < origin) throw ValidationError("negative length");
}

bool SpindlePointProcess::operator==(const SpindlePointProcess& o) const {
    if (params.alpha != o.params.alpha || params.q != o.params.q || params.c != o.params.c ||
        cutoff != o.cutoff || origin != o.origin || end != o.end || points.size() != o.points.size())
        return false;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i].t != o.points[i].t || !(points[i].f == o.points[i].f)) return false;
    return true;
}

SpindlePointProcess sample_prm(const DiffusionParams& p, double eps, double T, Rng& rng, const PrmConfig& cfg) {
    p.validate();
    if (!(eps > 0)) throw ValidationError("cutoff must be positive");
    if (!(T > 0)) throw ValidationError("horizon must be positive");
    SpindlePointProcess N;
    N.params = p;
    N.cutoff = eps;
    N.end = T;
    const double mean = T * jump_rate(p, eps);
    if (mean > cfg.max_points)
        throw BudgetError("expected point count " + std::to_string(mean) + " exceeds max_points " +
                          std::to_string(cfg.max_points));
    const auto n = poisson(rng, mean);
    std::vector<double> times(n);
    for (auto& t : times) t = T * uniform_open(rng);
    std::sort(times.begin(), times.end());
    N.points.reserve(n);
    for (double t : times) {
        const double z = eps * std::pow(uniform_open(rng), -1 / (1 + p.alpha));
        Rng sr(rng());
        N.points.push_back({t, sample_spindle_given_lifetime(p, z, cfg.spindle, sr)});
    }
    return N;
}

SpindlePointProcess restrict(const SpindlePointProcess& N, double a, double b, bool shift) {
    if (a > b) throw ValidationError("restrict: window start after end");
    SpindlePointProcess r;
    r.params = N.params;
    r.cutoff = N.cutoff;
    r.seed = N.seed;
    const double A = N.origin == 0 ? a : N.origin + a;
    const double B = std::min(N.origin == 0 ? b : N.origin + b, N.end);
    r.origin = shift ? std::min(A, std::max(B, N.origin)) : N.origin;
    r.end = std::max(B, r.origin);
    for (const auto& pt : N.points)
        if (pt.t >= A && pt.t <= B) r.points.push_back(pt);
    return r;
}

SpindlePointProcess concat_pp(const std::vector<SpindlePointProcess>& family) {
    SpindlePointProcess r;
    if (family.empty()) return r;
    r.params = family.front().params;
    r.cutoff = family.front().cutoff;
    r.seed = family.front().seed;
    bool abut = true;
    for (std::size_t k = 0; k < family.size(); ++k) {
        const auto& N = family[k];
        if (N.cutoff != r.cutoff || N.params.alpha != r.params.alpha || N.params.q != r.params.q ||
            N.params.c != r.params.c)
            throw ValidationError("concat_pp: members differ in params or cutoff");
        if (k > 0 && N.origin != family[k - 1].end) abut = false;
    }
    if (abut) {
        r.origin = family.front().origin;
        r.end = family.back().end;
    }
    double off = 0;
    for (const auto& N : family) {
        for (std::size_t i = 0; i < N.size(); ++i) {
            const double t = abut ? N.points[i].t : (off == 0 ? N.time(i) : N.time(i) + off);
            if (!r.points.empty() && !(t > r.points.back().t))
                throw ValidationError("concat_pp: coincident point times");
            r.points.push_back({t, N.points[i].f});
        }
        off += N.length();
    }
    if (!abut) r.end = off;
    return r;
}

void write_jsonl(std::ostream& os, const SpindlePointProcess& N) {
    nlohmann::json h{{"alpha", N.params.alpha}, {"q", N.params.q},  {"c", N.params.c},
                     {"cutoff", N.cutoff},      {"horizon", N.length()}, {"seed", N.seed}};
    os << h.dump() << '\n';
    for (std::size_t i = 0; i < N.size(); ++i)
        os << nlohmann::json{{"t", N.time(i)}, {"spindle", N.points[i].f.to_json()}}.dump() << '\n';
}

SpindlePointProcess read_jsonl(std::istream& is) {
    SpindlePointProcess N;
    std::string line;
    bool header = false;
    try {
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            auto j = nlohmann::json::parse(line);
            if (!header) {
                N.params = {j.at("alpha").get<double>(), j.at("q").get<double>(), j.at("c").get<double>()};
                N.cutoff = j.at("cutoff").get<double>();
                N.end = j.at("horizon").get<double>();
                N.seed = j.value("seed", std::uint64_t(0));
                header = true;
                continue;
            }
            N.points.push_back({j.at("t").get<double>(), Spindle::from_json(j.at("spindle"))});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed point-process JSONL: ") + e.what());
    }
    if (!header) throw ValidationError("point-process JSONL: missing header");
    for (std::size_t i = 1; i < N.points.size(); ++i)
        if (N.points[i].t == N.points[i - 1].t) throw ValidationError("point-process JSONL: duplicate point times");
    N.validate();
    return N;
}

}  // namespace ipevo
