#include "ipevo/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

#include "ipevo/block_diffusion.hpp"
#include "ipevo/clades.hpp"
#include "ipevo/diversity.hpp"
#include "ipevo/errors.hpp"
#include "ipevo/evolution.hpp"
#include "ipevo/point_process.hpp"
#include "ipevo/random.hpp"
#include "ipevo/scaffolding.hpp"
#include "ipevo/skewer.hpp"
#include "ipevo/stats.hpp"
#include "ipevo/streaming.hpp"

namespace ipevo::verify {

namespace {

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::size_t scaled(std::size_t n, const Options& o) {
    return std::max<std::size_t>(60, std::size_t(std::llround(double(n) * o.scale)));
}

template <class... A>
std::string fmt(const char* f, A... args) {
    const int n = std::snprintf(nullptr, 0, f, args...);
    std::string out(std::size_t(n) + 1, '\0');
    std::snprintf(out.data(), out.size(), f, args...);
    out.pop_back();
    return out;
}

Cell mean_cell(std::string label, stats::MeanSE v, double ref, double k, double allowance) {
    Cell c;
    c.label = std::move(label);
    c.statistic = v.mean;
    c.reference = ref;
    c.se = v.se;
    c.allowance = allowance;
    c.tolerance = k * v.se + allowance;
    c.pass = std::abs(v.mean - ref) <= c.tolerance;
    return c;
}

Cell bound_cell(std::string label, double stat, double tol, double allowance = 0) {
    Cell c;
    c.label = std::move(label);
    c.statistic = stat;
    c.reference = 0;
    c.allowance = allowance;
    c.tolerance = tol + allowance;
    c.pass = std::abs(stat) <= c.tolerance;
    return c;
}

// p-value cells pass when p exceeds the level
Cell pvalue_cell(std::string label, double p, double level) {
    Cell c;
    c.label = std::move(label);
    c.statistic = p;
    c.reference = level;
    c.pass = p > level;
    return c;
}

void finish(TestReport& r, Clock::time_point t0) {
    r.runtime = since(t0);
    r.pass = !r.cells.empty();
    double worst = -1;
    for (const auto& c : r.cells) {
        r.pass = r.pass && c.pass;
        const double score = c.tolerance > 0 ? std::abs(c.statistic - c.reference) / c.tolerance
                                             : (c.pass ? 0.0 : std::numeric_limits<double>::infinity());
        if (score > worst) {
            worst = score;
            r.statistic = c.statistic;
            r.reference_value = c.reference;
            r.standard_error = c.se;
            r.allowance = c.allowance;
            r.tolerance = c.tolerance;
        }
    }
}

std::string stream_name(const std::string& test, const std::string& cell) { return test + "/" + cell; }

// Richardson in eps: bias ~ eps^p, so fine + (fine - coarse)/((eps_c/eps_f)^p - 1)
double extrapolate(double coarse, double fine, double ratio, double p) {
    return fine + (fine - coarse) / (std::pow(ratio, p) - 1);
}

constexpr double kRootTwoMinusOne = 0.41421356237309515;

}  // namespace

nlohmann::json to_json(const TestReport& r, bool with_runtime) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : r.cells)
        cells.push_back({{"label", c.label},
                         {"statistic", c.statistic},
                         {"reference", c.reference},
                         {"se", c.se},
                         {"allowance", c.allowance},
                         {"tolerance", c.tolerance},
                         {"pass", c.pass}});
    nlohmann::json j = {{"name", r.name},
                        {"n_samples", r.n_samples},
                        {"statistic", r.statistic},
                        {"reference_value", r.reference_value},
                        {"standard_error", r.standard_error},
                        {"k", r.k},
                        {"allowance", r.allowance},
                        {"tolerance", r.tolerance},
                        {"pass", r.pass},
                        {"blocking", r.blocking},
                        {"negative_control", r.negative_control},
                        {"seed", r.seed},
                        {"note", r.note},
                        {"cells", cells}};
    if (with_runtime) j["runtime"] = r.runtime;
    return j;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(threads, n); ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next++;
                if (i >= n || failed) return;
                try {
                    f(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

// ---------------------------------------------------------------- metric

namespace {

struct Items {
    double a, b, sup;
};

template <class Visit>
void enumerate(std::size_t nb, std::size_t ng, Correspondence& cur, std::size_t i0, std::size_t j0, Visit& visit) {
    visit(cur);
    for (std::size_t i = i0; i < nb; ++i)
        for (std::size_t j = j0; j < ng; ++j) {
            cur.push_back({i, j});
            enumerate(nb, ng, cur, i + 1, j + 1, visit);
            cur.pop_back();
        }
}

Items items(const IntervalPartition& beta, const IntervalPartition& gamma, const Correspondence& c) {
    const auto& B = beta.blocks();
    const auto& G = gamma.blocks();
    Items it{0, 0, 0};
    std::vector<char> ub(B.size(), 0), ug(G.size(), 0);
    for (auto [i, j] : c) {
        const double d = std::abs(B[i].mass - G[j].mass);
        it.a += d;
        it.b += d;
        ub[i] = ug[j] = 1;
        if (B[i].div && G[j].div) it.sup = std::max(it.sup, std::abs(*B[i].div - *G[j].div));
    }
    for (std::size_t i = 0; i < B.size(); ++i)
        if (!ub[i]) it.a += B[i].mass;
    for (std::size_t j = 0; j < G.size(); ++j)
        if (!ug[j]) it.b += G[j].mass;
    return it;
}

}  // namespace

double brute_force_hausdorff(const IntervalPartition& beta, const IntervalPartition& gamma) {
    double best = std::numeric_limits<double>::infinity();
    Correspondence cur;
    auto visit = [&](const Correspondence& c) {
        const auto it = items(beta, gamma, c);
        best = std::min(best, std::max(it.a, it.b));
    };
    enumerate(beta.size(), gamma.size(), cur, 0, 0, visit);
    return best;
}

double brute_force_alpha(const IntervalPartition& beta, const IntervalPartition& gamma) {
    if (!beta.has_diversity() || !gamma.has_diversity()) throw ValidationError("brute_force_alpha needs marks");
    const double d0 = std::abs(*beta.total_diversity() - *gamma.total_diversity());
    double best = std::numeric_limits<double>::infinity();
    Correspondence cur;
    auto visit = [&](const Correspondence& c) {
        const auto it = items(beta, gamma, c);
        best = std::min(best, std::max({it.a, it.b, it.sup, d0}));
    };
    enumerate(beta.size(), gamma.size(), cur, 0, 0, visit);
    return best;
}

namespace {

// random marked partition; discrete draws produce ties in masses and marks
IntervalPartition random_partition(std::size_t max_blocks, bool discrete, Rng& rng) {
    const auto n = std::size_t(rng() % (max_blocks + 1));
    std::vector<double> marks(n);
    for (auto& m : marks) m = discrete ? 0.5 * double(rng() % 5) : 3 * uniform_open(rng);
    std::sort(marks.begin(), marks.end());
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = discrete ? 0.25 * double(1 + rng() % 4) : 0.05 + uniform_open(rng);
        blocks.push_back({m, marks[i]});
    }
    const double top = marks.empty() ? 0.0 : marks.back();
    const double total = top + (discrete ? 0.5 * double(rng() % 3) : uniform_open(rng));
    return IntervalPartition(0.5, std::move(blocks), total);
}

double rel_err(double x, double ref) {
    if (x == ref) return 0;
    return std::abs(x - ref) / std::max(std::abs(ref), std::numeric_limits<double>::min());
}

}  // namespace

TestReport test_metric_exactness(std::size_t n_pairs, std::size_t max_blocks, const Options& o) {
    const auto t0 = Clock::now();
    TestReport r;
    r.name = "metric_exactness";
    r.seed = o.seed;
    r.n_samples = n_pairs;
    r.k = 0;
    std::vector<double> ea(n_pairs), eh(n_pairs);
    parallel_for(n_pairs, o.threads, [&](std::size_t i) {
        Rng rng = make_rng(o.seed, r.name, i);
        const bool discrete = i % 2 == 1;
        const auto b = random_partition(max_blocks, discrete, rng);
        const auto g = random_partition(max_blocks, discrete, rng);
        ea[i] = rel_err(dist_alpha(b, g), brute_force_alpha(b, g));
        const auto bh = b.without_marks(), gh = g.without_marks();
        eh[i] = rel_err(dist_hausdorff(bh, gh), brute_force_hausdorff(bh, gh));
    });
    r.cells.push_back(bound_cell("d_alpha max relative error", *std::max_element(ea.begin(), ea.end()), 1e-12));
    r.cells.push_back(bound_cell("d_H max relative error", *std::max_element(eh.begin(), eh.end()), 1e-12));
    r.note = "exhaustive enumeration of order-preserving correspondences, <= " + std::to_string(max_blocks) +
             " blocks per side, half the pairs with tied masses and marks";
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------- lifetime law

TestReport test_lifetime_law(const std::vector<double>& a_grid, double alpha, const std::vector<double>& y_grid,
                             std::size_t n, const Options& o) {
    const auto t0 = Clock::now();
    TestReport r;
    r.name = "lifetime_law";
    r.seed = o.seed;
    const std::size_t N = scaled(n, o);
    r.n_samples = N;
    if (a_grid.empty() || y_grid.empty()) throw ValidationError("lifetime_law needs a and y grids");
    const DiffusionParams p{alpha, 1, 1};
    DiffusionParams bp = p;
    bp.alpha += o.d_alpha;
    const double eps_c = 1e-2, eps_f = 1e-3, dt = 1e-3, p_eps = alpha;
    const double cap = *std::max_element(y_grid.begin(), y_grid.end());
    r.k = stats::bonferroni_k(a_grid.size() * y_grid.size());
    for (double a : a_grid) {
        std::vector<double> top_f(N), top_c(N), top_e(N);
        const auto name = stream_name(r.name, fmt("a=%g", a));
        parallel_for(N, o.threads, [&](std::size_t i) {
            Rng rng = make_rng(o.seed, name, i);
            const auto [tc, tf] = euler_lifetime_pair(bp, a, dt, rng);
            Rng r2 = rng, r3 = rng;
            top_f[i] = scaffold_top(p, tf, cap, eps_f, rng);
            top_c[i] = scaffold_top(p, tc, cap, eps_f, r2);
            top_e[i] = scaffold_top(p, tf, cap, eps_c, r3);
        });
        for (double y : y_grid) {
            std::vector<double> v(N), d(N);
            for (std::size_t i = 0; i < N; ++i) {
                const double f = top_f[i] >= y, e = top_e[i] >= y, c = top_c[i] >= y;
                v[i] = extrapolate(e, f, eps_c / eps_f, p_eps);
                d[i] = f - c;
            }
            const double allowance = std::abs(stats::mean(d)) / kRootTwoMinusOne;
            r.cells.push_back(mean_cell(fmt("a=%g y=%g", a, y), stats::batch_means(v), 1 - std::exp(-a / (2 * y)),
                                        r.k, allowance));
        }
    }
    r.note = fmt("survival of the clade supremum; eps-extrapolated over {1e-2,1e-3} with exponent %g; "
                 "dt allowance from coupled Euler steps (1e-3, 5e-4) assuming O(sqrt(dt)) bias; block alpha %g",
                 p_eps, bp.alpha);
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------- absorption time

TestReport test_absorption_time(double alpha, double z0, std::size_t n, double dt, const Options& o) {
    const auto t0 = Clock::now();
    TestReport r;
    r.name = fmt("absorption_time[alpha=%g]", alpha);
    r.seed = o.seed;
    const std::size_t N = scaled(n, o);
    r.n_samples = N;
    r.k = 0;
    DiffusionParams sp{alpha + o.d_alpha, 1, 1};
    std::vector<double> coarse(N), fine(N);
    parallel_for(N, o.threads, [&](std::size_t i) {
        Rng rng = make_rng(o.seed, r.name, i);
        std::tie(coarse[i], fine[i]) = euler_lifetime_pair(sp, z0, 2 * dt, rng);
    });
    // z0 / (2 Gamma(1+alpha)): P(T <= t) = Q(1+alpha, z0/(2t))
    const double D = stats::ks_statistic(fine, [&](double t) {
        return t <= 0 ? 0.0 : boost::math::gamma_q(1 + alpha, z0 / (2 * t));
    });
    const double allowance = stats::ks_two_sample(coarse, fine).d / kRootTwoMinusOne;
    r.cells.push_back(bound_cell(fmt("KS distance, z0=%g dt=%g", z0, dt), D, 0.02, allowance));
    r.note = fmt("Euler absorption times vs InverseGamma(1+alpha, z0/2); allowance = two-sample KS distance of "
                 "coupled dt and 2dt samples / (sqrt2-1); simulated alpha %g",
                 sp.alpha);
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------- subordinator

TestReport test_aggregate_mass_subordinator(double alpha, double q, const std::vector<double>& s_grid,
                                            const std::vector<double>& lambda_grid, std::size_t n,
                                            const Options& o) {
    const auto t0 = Clock::now();
    TestReport r;
    r.name = fmt("aggregate_mass_subordinator[q=%g]", q);
    r.seed = o.seed;
    const std::size_t N = scaled(n, o);
    r.n_samples = N;
    const DiffusionParams sp{alpha + o.d_alpha, q, 1};
    sp.validate();
    const double eps_c = 1e-2, eps_f = 1e-3, p_eps = alpha, anchor = 0.1;
    const double s_max = *std::max_element(s_grid.begin(), s_grid.end());
    const std::size_t S = s_grid.size(), L = lambda_grid.size();
    r.k = stats::bonferroni_k(S * L);
    auto phi = [&](double lam) { return std::pow(lam, alpha / q); };

    std::vector<std::vector<double>> vc(N), vf(N);
    parallel_for(N, o.threads, [&](std::size_t i) {
        Rng rng = make_rng(o.seed, r.name, i);
        vc[i] = subordinator_values(level0_run(sp, eps_c, s_max, anchor, rng), s_grid);
        vf[i] = subordinator_values(level0_run(sp, eps_f, s_max, anchor, rng), s_grid);
    });
    // local time moves in steps of 1/slope, so tau(s) sits at local time floor(s slope)/slope
    auto grid_s = [&](double s, double eps) {
        const double sl = compensation_slope(sp, eps);
        return std::floor(s * sl) / sl;
    };
    for (std::size_t si = 0; si < S; ++si)
        for (std::size_t li = 0; li < L; ++li) {
            const double s = s_grid[si], lam = lambda_grid[li];
            const double rc = std::exp(-grid_s(s, eps_c) * phi(lam)), rf = std::exp(-grid_s(s, eps_f) * phi(lam));
            const double ref = std::exp(-s * phi(lam));
            std::vector<double> v(N);
            for (std::size_t i = 0; i < N; ++i)
                v[i] = ref + extrapolate(std::exp(-lam * vc[i][si]) - rc, std::exp(-lam * vf[i][si]) - rf,
                                         eps_c / eps_f, p_eps);
            r.cells.push_back(mean_cell(fmt("s=%g lambda=%g", s, lam), stats::batch_means(v), ref, r.k, 0));
        }
    r.note = fmt("E exp(-lambda (M(tau(s)) - M(tau(0)))) at level 0 vs exp(-s lambda^(alpha/q)); eps-extrapolated "
                 "over {1e-2,1e-3} with exponent %g; simulated alpha %g",
                 p_eps, sp.alpha);
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------- exit probability

TestReport test_exit_probability(double alpha, const std::vector<std::pair<double, double>>& xy, std::size_t n,
                                 const Options& o) {
    const auto t0 = Clock::now();
    TestReport r;
    r.name = "exit_probability";
    r.seed = o.seed;
    const std::size_t N = scaled(n, o);
    r.n_samples = N;
    const DiffusionParams sp{alpha + o.d_alpha, 1, 1};
    const double eps_c = 1e-2, eps_f = 1e-3, p_eps = alpha;
    r.k = stats::bonferroni_k(xy.size());
    for (auto [x, y] : xy) {
        if (!(x >= 0 && x <= y && y > 0)) throw ValidationError("exit_probability needs 0 <= x <= y, y > 0");
        const auto name = stream_name(r.name, fmt("x=%g y=%g", x, y));
        std::vector<double> v(N);
        parallel_for(N, o.threads, [&](std::size_t i) {
            Rng rng = make_rng(o.seed, name, i);
            const double c = exits_at_zero(sp, x, y, eps_c, rng);
            const double f = exits_at_zero(sp, x, y, eps_f, rng);
            v[i] = extrapolate(c, f, eps_c / eps_f, p_eps);
        });
        r.cells.push_back(mean_cell(fmt("x=%g y=%g", x, y), stats::batch_means(v), std::pow(1 - x / y, alpha), r.k, 0));
    }
    r.note = fmt("x + X leaves [0,y] at 0; eps-extrapolated over {1e-2,1e-3} with exponent %g; simulated alpha %g",
                 p_eps, sp.alpha);
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------- diversity = local time

TestReport test_diversity_localtime(double alpha, double q, std::size_t n_runs, const Options& o,
                                    DiversityControl control) {
    const auto t0 = Clock::now();
    TestReport r;
    r.name = fmt("diversity_localtime[q=%g]", q);
    r.seed = o.seed;
    const std::size_t N = std::max<std::size_t>(10, std::size_t(std::llround(double(n_runs) * o.scale)));
    r.n_samples = N;
    r.k = 0;
    const DiffusionParams p{alpha, q, 1};
    p.validate();
    const double eps = 1e-4, T = 40, anchor = 0.1;
    const auto h_grid = log_grid(std::pow(1e-1, q), std::pow(1e-3, q), 12);
    const double a_est = p.alpha_div() + o.d_alpha;
    const std::vector<double> fractions{0.5, 1.0};
    std::vector<double> err(N * fractions.size());
    parallel_for(N, o.threads, [&](std::size_t i) {
        Rng rng = make_rng(o.seed, r.name, i);
        const auto run = level0_run(p, eps, T, anchor, rng);
        std::vector<Block> blocks;
        double total = 0;
        for (const auto& b : run.blocks) {
            blocks.push_back({b.mass, b.mark});
            total += b.mass;
        }
        const IntervalPartition ip(a_est, blocks, T);
        for (std::size_t k = 0; k < fractions.size(); ++k) {
            // right end of the block holding mass position fraction * total
            double right = 0, mark = 0;
            std::size_t j = 0;
            for (; j < blocks.size(); ++j) {
                right += blocks[j].mass;
                mark = *blocks[j].div;
                if (right >= fractions[k] * total * (1 - 1e-12)) break;
            }
            if (control == DiversityControl::shuffled_marks && !blocks.empty())
                mark = *blocks[std::size_t(rng() % blocks.size())].div;
            const double est = diversity_estimate(ip, right, h_grid).value;
            err[i * fractions.size() + k] = mark > 0 ? std::abs(est - mark) / mark : 1.0;
        }
    });
    std::sort(err.begin(), err.end());
    const double median = err[err.size() / 2];
    r.cells.push_back(bound_cell("median relative error", median, 0.05));
    r.note = fmt("level-0 runs to local time T=%g at eps=%g; estimator exponent %g", T, eps, a_est) +
             (control == DiversityControl::shuffled_marks ? "; reference marks shuffled" : "");
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------- BESQ(0) total mass

TestReport test_total_mass_besq0(double a, double alpha, const std::vector<double>& y_grid,
                                 const std::vector<double>& lambda_grid, std::size_t n, const Options& o) {
    const auto t0 = Clock::now();
    TestReport r;
    r.name = "total_mass_besq0";
    r.seed = o.seed;
    r.blocking = false;
    const std::size_t N = scaled(n, o);
    r.n_samples = N;
    const DiffusionParams p{alpha, 1, 1};
    EvolveConfig cfg;
    cfg.eps = 1e-3;
    cfg.dt = 1e-3;
    cfg.n_grid = 32;
    auto levels = y_grid;
    std::sort(levels.begin(), levels.end());
    const auto beta = IntervalPartition::from_masses(p.alpha_div(), {a});
    std::vector<std::vector<double>> mass(N);
    parallel_for(N, o.threads, [&](std::size_t i) {
        Rng rng = make_rng(o.seed, r.name, i);
        for (const auto& s : evolve(beta, p, levels, cfg, rng).snapshots) mass[i].push_back(s.partition.total_mass());
    });
    // BESQ(0) Euler oracle, absorbed at 0
    const std::size_t M = scaled(100000, o);
    const double odt = 1e-3;
    std::vector<std::vector<double>> omass(M);
    parallel_for(M, o.threads, [&](std::size_t i) {
        Rng rng = make_rng(o.seed, r.name + "/oracle", i);
        double z = a, t = 0;
        for (double y : levels) {
            const auto steps = std::size_t(std::llround((y - t) / odt));
            for (std::size_t k = 0; k < steps && z > 0; ++k) z = std::max(0.0, z + 2 * std::sqrt(z * odt) * normal(rng));
            t = y;
            omass[i].push_back(z);
        }
    });
    r.k = stats::bonferroni_k(levels.size() * lambda_grid.size());
    std::string oracle = "Euler BESQ(0) oracle:";
    for (std::size_t yi = 0; yi < levels.size(); ++yi)
        for (double lam : lambda_grid) {
            std::vector<double> v(N), w(M);
            for (std::size_t i = 0; i < N; ++i) v[i] = std::exp(-lam * mass[i][yi]);
            for (std::size_t i = 0; i < M; ++i) w[i] = std::exp(-lam * omass[i][yi]);
            const double ref = std::exp(-lam * a / (1 + 2 * lam * levels[yi]));
            const auto ow = stats::batch_means(w);
            r.cells.push_back(mean_cell(fmt("y=%g lambda=%g", levels[yi], lam), stats::batch_means(v), ref, r.k, 0));
            oracle += fmt(" %.5f(%.5f)", ow.mean, ref) + (std::abs(ow.mean - ref) <= r.k * ow.se ? "" : "!");
        }
    r.note = "cited-forward claim, non-blocking; evolve at eps=1e-3 dt=1e-3; " + oracle;
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------- amplitude scale function

TestReport test_amplitude_scale(double alpha, std::size_t n, const Options& o) {
    const auto t0 = Clock::now();
    TestReport r;
    r.name = "amplitude_scale";
    r.seed = o.seed;
    r.k = 0;
    const std::size_t N = scaled(n, o);
    r.n_samples = N;
    const DiffusionParams sp{alpha + o.d_alpha, 1, 1};
    const double a = 0.05, dt = 1e-4;
    const std::vector<double> m{0.1, 0.15, 0.2, 0.3, 0.45, 0.7, 1.0};
    std::vector<double> amp(N);
    parallel_for(N, o.threads, [&](std::size_t i) {
        Rng rng = make_rng(o.seed, r.name, i);
        amp[i] = euler_amplitude(sp, a, dt, m.back(), rng);
    });
    std::vector<double> lx, ly;
    for (double mi : m) {
        const auto hits = std::count_if(amp.begin(), amp.end(), [&](double x) { return x >= mi; });
        if (hits == 0) continue;
        lx.push_back(std::log(mi));
        ly.push_back(std::log(double(hits) / double(N)));
    }
    const double slope = lx.size() >= 2 ? stats::ols(lx, ly).slope : 0.0;
    Cell c = bound_cell("log P(max >= m) slope", slope + (1 + alpha), 0.05);
    c.statistic = slope;
    c.reference = -(1 + alpha);
    r.cells.push_back(c);
    r.note = fmt("BESQ(-2 alpha) from a=%g, dt=%g; P(reach m before 0) = (a/m)^(1+alpha); simulated alpha %g", a, dt,
                 sp.alpha);
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------- transition kernel

namespace {

IntervalPartition transition_initial() { return IntervalPartition::from_masses(0.5, {0.6, 1.0, 0.4}); }

EvolveConfig transition_config() {
    EvolveConfig cfg;
    cfg.eps = 1e-3;
    cfg.dt = 1e-3;
    cfg.n_grid = 32;
    return cfg;
}

void ks_cells(TestReport& r, double y, const std::vector<IntervalPartition>& A,
              const std::vector<IntervalPartition>& B) {
    std::vector<double> ma, mb, ca, cb;
    for (const auto& x : A) ma.push_back(x.total_mass()), ca.push_back(double(x.size()));
    for (const auto& x : B) mb.push_back(x.total_mass()), cb.push_back(double(x.size()));
    r.cells.push_back(pvalue_cell(fmt("y=%g total mass KS p", y), stats::ks_two_sample(ma, mb).p, 0.01));
    r.cells.push_back(pvalue_cell(fmt("y=%g block count KS p", y), stats::ks_two_sample(ca, cb).p, 0.01));
}

}  // namespace

TestReport test_transition_kernel(const std::vector<double>& y_grid, std::size_t n, const Options& o) {
    const auto t0 = Clock::now();
    TestReport r;
    r.name = "transition_kernel";
    r.seed = o.seed;
    r.k = 0;
    const std::size_t N = scaled(n, o);
    r.n_samples = N;
    const DiffusionParams p{0.5, 1, 1};
    const auto beta = transition_initial();
    const auto cfg = transition_config();
    for (double y : y_grid) {
        std::vector<IntervalPartition> A(N), B(N);
        const auto na = stream_name(r.name, fmt("evolve y=%g", y)), nb = stream_name(r.name, fmt("kernel y=%g", y));
        parallel_for(N, o.threads, [&](std::size_t i) {
            Rng ra = make_rng(o.seed, na, i), rb = make_rng(o.seed, nb, i);
            A[i] = evolve(beta, p, {y}, cfg, ra).snapshots.front().partition;
            B[i] = transition_sample(beta, y, p, cfg, rb);
        });
        ks_cells(r, y, A, B);
    }
    r.note = "initial state (0.6, 1, 0.4), eps=1e-3, dt=1e-3; cells pass when the two-sample KS p-value exceeds 0.01";
    finish(r, t0);
    return r;
}

TestReport test_markov_composition(const std::vector<double>& y_grid, std::size_t n, const Options& o) {
    const auto t0 = Clock::now();
    TestReport r;
    r.name = "markov_composition";
    r.seed = o.seed;
    r.k = 0;
    r.blocking = false;
    const std::size_t N = scaled(n, o);
    r.n_samples = N;
    const DiffusionParams p{0.5, 1, 1};
    const auto beta = transition_initial();
    const auto cfg = transition_config();
    for (double y : y_grid) {
        std::vector<IntervalPartition> A(N), B(N);
        const auto na = stream_name(r.name, fmt("direct y=%g", y)), nb = stream_name(r.name, fmt("two-step y=%g", y));
        parallel_for(N, o.threads, [&](std::size_t i) {
            Rng ra = make_rng(o.seed, na, i), rb = make_rng(o.seed, nb, i);
            A[i] = evolve(beta, p, {y}, cfg, ra).snapshots.front().partition;
            const auto mid = evolve(beta, p, {y / 2}, cfg, rb).snapshots.front().partition;
            B[i] = transition_sample(mid.without_marks(), y / 2, p, cfg, rb);
        });
        ks_cells(r, y, A, B);
    }
    r.note = "evolve to y vs evolve to y/2 then transition_sample over y/2; block diffusions restart from the "
             "level-y/2 masses, so Euler error enters the second route only";
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------- bi-clade exactness

TestReport test_biclade_exactness(std::size_t n_processes, const Options& o) {
    const auto t0 = Clock::now();
    TestReport r;
    r.name = "biclade_exactness";
    r.seed = o.seed;
    r.k = 0;
    const std::size_t N = std::max<std::size_t>(10, std::size_t(std::llround(double(n_processes) * o.scale)));
    r.n_samples = N;
    const DiffusionParams p{0.5, 1, 1};
    std::vector<double> mismatch(N), identity(N), partition(N);
    parallel_for(N, o.threads, [&](std::size_t i) {
        Rng rng = make_rng(o.seed, r.name, i);
        PrmConfig pc;
        pc.spindle.n_grid = 32;
        const auto Np = sample_prm(p, 1e-2, 1.0, rng, pc);
        const auto X = xi(Np);
        const double y = X.min_value() + uniform_open(rng) * (X.max_value() - X.min_value());
        auto parts = decompose_biclades(Np, y);
        std::size_t count = 0;
        double m0 = 0;
        bool ok = true;
        for (auto& b : parts) {
            count += b.process.size();
            m0 += b.m0;
            const auto split = split_biclade(b);
            auto joined = join_biclade(split);
            ok = ok && joined == b.process;
            b.process = std::move(joined);
        }
        ok = ok && reassemble(parts) == Np;
        mismatch[i] = ok ? 0 : 1;
        partition[i] = double(count) - double(Np.size());
        identity[i] = rel_err(m0, aggregate_mass(Np, X, y, Np.length()));
    });
    auto sum = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); };
    auto maxabs = [](const std::vector<double>& v) {
        double m = 0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    };
    r.cells.push_back(bound_cell("processes not reproduced bit-for-bit", sum(mismatch), 0));
    r.cells.push_back(bound_cell("spindles not in exactly one bi-clade", maxabs(partition), 0));
    r.cells.push_back(bound_cell("sum of m0 vs aggregate mass, max relative error", maxabs(identity), 1e-12));
    r.note = "decompose -> split -> join -> reassemble on PRMs (eps=1e-2, T=1) at a uniform level in the range of X";
    finish(r, t0);
    return r;
}

// ---------------------------------------------------------------- suites

std::vector<std::string> suite_names() {
    return {"all",    "core",      "metric",    "lifetime",   "absorption", "subordinator", "exit",
            "diversity", "besq0", "amplitude", "transition", "markov", "biclade", "negative"};
}

std::vector<TestReport> run_suite(const std::string& suite, const Options& o) {
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw ValidationError("unknown suite '" + suite + "'");
    std::vector<TestReport> out;
    auto want = [&](const char* s) { return suite == s || suite == "all" || (suite == "core" && std::string(s) != "besq0" && std::string(s) != "markov"); };
    Options plain = o;
    plain.d_alpha = 0;
    const std::vector<std::pair<double, double>> exit_pairs{{0.1, 1}, {0.25, 1}, {0.5, 1}, {0.75, 1}, {0.9, 1}, {1, 2}};
    if (suite == "negative") {
        Options neg = o;
        if (neg.d_alpha == 0) neg.d_alpha = 0.1;
        auto mark = [&](TestReport r) {
            r.negative_control = true;
            out.push_back(std::move(r));
        };
        mark(test_lifetime_law({0.5, 1, 2}, 0.5, {0.25, 0.5, 1, 2}, 10000, neg));
        for (double a : {0.3, 0.5, 0.7}) mark(test_absorption_time(a, 2, 10000, 1e-4, neg));
        for (double q : {1.0, 2.0}) mark(test_aggregate_mass_subordinator(0.5, q, {0.5, 1}, {0.2, 0.5, 1, 2}, 10000, neg));
        mark(test_exit_probability(0.5, exit_pairs, 10000, neg));
        mark(test_diversity_localtime(0.5, 1, 100, neg));
        auto shuffled = test_diversity_localtime(0.5, 1, 100, plain, DiversityControl::shuffled_marks);
        shuffled.name = "diversity_localtime[q=1,shuffled marks]";
        mark(std::move(shuffled));
        mark(test_amplitude_scale(0.5, 100000, neg));
        return out;
    }
    if (want("metric")) out.push_back(test_metric_exactness(1000, 6, plain));
    if (want("lifetime")) out.push_back(test_lifetime_law({0.5, 1, 2}, 0.5, {0.25, 0.5, 1, 2}, 10000, plain));
    if (want("absorption"))
        for (double a : {0.3, 0.5, 0.7}) out.push_back(test_absorption_time(a, 2, 10000, 1e-4, plain));
    if (want("subordinator"))
        for (double q : {1.0, 2.0})
            out.push_back(test_aggregate_mass_subordinator(0.5, q, {0.5, 1}, {0.2, 0.5, 1, 2}, 10000, plain));
    if (want("exit")) out.push_back(test_exit_probability(0.5, exit_pairs, 10000, plain));
    if (want("diversity"))
        for (double q : {1.0, 2.0}) out.push_back(test_diversity_localtime(0.5, q, 100, plain));
    if (want("besq0")) out.push_back(test_total_mass_besq0(1, 0.5, {0.25, 0.5, 1}, {0.5, 1, 2}, 10000, plain));
    if (want("amplitude")) out.push_back(test_amplitude_scale(0.5, 100000, plain));
    if (want("transition")) out.push_back(test_transition_kernel({0.5, 1}, 10000, plain));
    if (want("markov")) out.push_back(test_markov_composition({0.5, 1}, 5000, plain));
    if (want("biclade")) out.push_back(test_biclade_exactness(100, plain));
    return out;
}

}  // namespace ipevo::verify
