#include "ipevo/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "ipevo/block_diffusion.hpp"
#include "ipevo/errors.hpp"
#include "ipevo/metric.hpp"

namespace ipevo {

namespace {

struct LeanPoint {
    double t;         // global time in the concatenation
    double before;    // X(t-)
    double jump;      // jump kept after the cutoff at the top level
    double lifetime;  // full spindle lifetime
    std::uint64_t seed;
};

struct Clade {
    double offset = 0, length = 0, top = 0;
    Spindle first;  // block diffusion started from the block mass
    std::vector<LeanPoint> pts;  // pts[0] is the block diffusion itself
};

// delta(0,f) + N|[0,T] with T the hitting time of -zeta(f), cut off above z_cut
Clade build_clade(const DiffusionParams& p, double a, double z_cut, double offset, const EvolveConfig& cfg,
                  Rng& rng, double& budget) {
    Clade c;
    c.offset = offset;
    auto bd = simulate_block_diffusion(p, a, cfg.dt, rng, cfg.n_grid);
    c.first = std::move(bd.path);
    const double zf = c.first.lifetime();
    const double slope = compensation_slope(p, cfg.eps), rate = jump_rate(p, cfg.eps);
    const double inv = -1 / (1 + p.alpha);
    double x = std::min(zf, z_cut), t = offset;
    c.pts.push_back({offset, 0, x, zf, 0});
    c.top = x;
    for (;;) {
        const double w = exponential(rng) / rate;
        if (x - slope * w <= 0) {
            t += x / slope;
            break;
        }
        t += w;
        x -= slope * w;
        const double z = cfg.eps * std::pow(uniform_open(rng), inv);
        const std::uint64_t seed = rng();
        const double kept = std::min(z, z_cut - x);
        c.pts.push_back({t, x, kept, z, seed});
        x += kept;
        c.top = std::max(c.top, x);
        if (--budget < 0) throw BudgetError("evolve: point budget exhausted (max_points)");
    }
    c.length = t - offset;
    return c;
}

}  // namespace

EvolutionPath evolve(const IntervalPartition& beta, const DiffusionParams& p, const std::vector<double>& levels,
                     const EvolveConfig& cfg, Rng& rng) {
    p.validate();
    if (!(cfg.eps > 0)) throw ValidationError("cutoff must be positive");
    if (!(cfg.dt > 0)) throw ValidationError("dt must be positive");
    if (std::abs(beta.alpha_div() - p.alpha_div()) > 1e-15)
        throw ValidationError("initial partition alpha_div must equal alpha/q");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i] >= 0)) throw ValidationError("levels must be nonnegative");
        if (i > 0 && !(levels[i] > levels[i - 1])) throw ValidationError("levels must be increasing");
    }
    EvolutionPath path;
    path.params = p;
    path.config = cfg;
    path.levels = levels;
    const double z_cut = levels.empty() ? 0.0 : levels.back();
    double y_min = kNever;
    for (double y : levels)
        if (y > 0) y_min = std::min(y_min, y);

    // clades in block order; only those reaching a positive queried level are kept
    std::vector<Clade> clades;
    std::vector<double> offsets;
    double offset = 0, budget = cfg.max_points;
    for (const auto& b : beta.blocks()) {
        offsets.push_back(offset);
        Rng br(rng());
        if (z_cut <= 0) continue;
        Clade c = build_clade(p, b.mass, z_cut, offset, cfg, br, budget);
        offset += c.length;
        if (c.top >= y_min) clades.push_back(std::move(c));
    }

    const double slope = compensation_slope(p, cfg.eps);
    std::unordered_map<std::size_t, Spindle> cache;
    for (double y : levels) {
        SkewerSnapshot s;
        s.y = y;
        if (y == 0) {
            s.partition = beta;
            s.block_ids = offsets;
            path.snapshots.push_back(std::move(s));
            continue;
        }
        // down-crossings of y, in time order
        std::vector<double> cross;
        for (const auto& c : clades) {
            for (std::size_t i = 0; i < c.pts.size(); ++i) {
                const double top = c.pts[i].before + c.pts[i].jump;
                const double bot = i + 1 < c.pts.size() ? c.pts[i + 1].before : 0.0;
                const double te = i + 1 < c.pts.size() ? c.pts[i + 1].t : c.offset + c.length;
                if (bot < y && y <= top) cross.push_back(std::min(te, c.pts[i].t + (top - y) / slope));
            }
        }
        std::vector<Block> blocks;
        std::size_t key = 0;
        for (std::size_t ci = 0; ci < clades.size(); ++ci) {
            const auto& c = clades[ci];
            for (std::size_t i = 0; i < c.pts.size(); ++i, ++key) {
                const auto& pt = c.pts[i];
                if (!(pt.before <= y && y <= pt.before + pt.jump)) continue;
                double m;
                if (i == 0) {
                    m = c.first.value(y);
                } else {
                    auto it = cache.find(key);
                    if (it == cache.end())
                        it = cache.emplace(key, spindle_from_seed(p, pt.lifetime, cfg.n_grid, pt.seed)).first;
                    m = it->second.value(y - pt.before);
                }
                if (m <= kMinBlock) continue;
                const double lt = double(std::lower_bound(cross.begin(), cross.end(), pt.t) - cross.begin()) / slope;
                blocks.push_back({m, lt});
                s.block_ids.push_back(pt.t);
            }
        }
        s.partition = IntervalPartition(p.alpha_div(), std::move(blocks), double(cross.size()) / slope);
        path.snapshots.push_back(std::move(s));
    }
    return path;
}

IntervalPartition transition_sample(const IntervalPartition& beta, double y, const DiffusionParams& p,
                                    const EvolveConfig& cfg, Rng& rng) {
    if (!(y > 0)) throw ValidationError("transition_sample needs y > 0");
    std::vector<IntervalPartition> parts;
    for (const auto& b : beta.blocks()) {
        auto one = IntervalPartition(beta.alpha_div(), {{b.mass, std::nullopt}}, std::nullopt);
        Rng br(rng());
        parts.push_back(evolve(one, p, {y}, cfg, br).snapshots.front().partition);
    }
    if (parts.empty()) return IntervalPartition(p.alpha_div(), {}, 0.0);
    return concat(parts);
}

MetricKind parse_metric_kind(const std::string& s) {
    if (s == "alpha") return MetricKind::alpha;
    if (s == "hausdorff") return MetricKind::hausdorff;
    throw ValidationError("metric must be alpha or hausdorff");
}

HolderFit holder_exponent_estimate(const EvolutionPath& path, MetricKind metric, double cutoff) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < path.snapshots.size(); ++i)
        if (metric == MetricKind::hausdorff || path.snapshots[i].partition.has_diversity()) idx.push_back(i);
    if (idx.size() < 50) throw ValidationError("holder estimate needs at least 50 levels");
    auto d = [&](std::size_t i, std::size_t j) {
        const auto& a = path.snapshots[i].partition;
        const auto& b = path.snapshots[j].partition;
        return metric == MetricKind::alpha ? dist_alpha_truncated(a, b, cutoff).value
                                           : dist_hausdorff_truncated(a, b, cutoff).value;
    };
    HolderFit fit;
    std::vector<double> lx, ly;
    for (std::size_t lag = 1; lag <= idx.size() / 4; lag *= 2) {
        double sum = 0, dy = 0;
        std::size_t n = 0;
        for (std::size_t k = 0; k + lag < idx.size(); k += lag) {
            sum += d(idx[k], idx[k + lag]);
            dy += path.levels[idx[k + lag]] - path.levels[idx[k]];
            ++n;
        }
        const double mean = sum / double(n);
        fit.lags.push_back(dy / double(n));
        fit.mean_incr.push_back(mean);
        if (mean > 0) {
            lx.push_back(std::log(dy / double(n)));
            ly.push_back(std::log(mean));
        }
    }
    if (lx.size() < 2) throw ValidationError("holder estimate: degenerate (constant) path");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
    mx /= double(lx.size()), my /= double(ly.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) sxy += (lx[i] - mx) * (ly[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
    fit.exponent = sxy / sxx;
    return fit;
}

void write_jsonl(std::ostream& os, const EvolutionPath& path) {
    nlohmann::json h{{"alpha", path.params.alpha}, {"q", path.params.q}, {"c", path.params.c},
                     {"cutoff", path.config.eps},  {"dt", path.config.dt}, {"n_grid", path.config.n_grid},
                     {"seed", path.seed},          {"levels", path.levels.size()}};
    os << h.dump() << '\n';
    for (const auto& s : path.snapshots)
        os << nlohmann::json{{"y", s.y}, {"partition", s.partition.to_json()}, {"block_ids", s.block_ids}}.dump()
           << '\n';
}

EvolutionPath read_evolution_jsonl(std::istream& is) {
    EvolutionPath path;
    std::string line;
    bool header = false;
    try {
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            auto j = nlohmann::json::parse(line);
            if (!header) {
                path.params = {j.at("alpha").get<double>(), j.at("q").get<double>(), j.at("c").get<double>()};
                path.config.eps = j.at("cutoff").get<double>();
                path.config.dt = j.at("dt").get<double>();
                path.config.n_grid = j.value("n_grid", std::size_t(128));
                path.seed = j.value("seed", std::uint64_t(0));
                header = true;
                continue;
            }
            SkewerSnapshot s;
            s.y = j.at("y").get<double>();
            s.partition = IntervalPartition::from_json(j.at("partition"));
            s.block_ids = j.at("block_ids").get<std::vector<double>>();
            path.levels.push_back(s.y);
            path.snapshots.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed evolution JSONL: ") + e.what());
    }
    if (!header) throw ValidationError("evolution JSONL: missing header");
    return path;
}

void write_summary_csv(std::ostream& os, const EvolutionPath& path) {
    os << "y,total_mass,total_diversity,block_count\n";
    os.precision(17);
    for (const auto& s : path.snapshots) {
        os << s.y << ',' << s.partition.total_mass() << ',';
        if (s.partition.total_diversity()) os << *s.partition.total_diversity();
        os << ',' << s.partition.size() << '\n';
    }
}

}  // namespace ipevo
