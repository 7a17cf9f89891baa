// ipevo: simulate | evolve | metric | verify | render
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ipevo/errors.hpp"
#include "ipevo/evolution.hpp"
#include "ipevo/metric.hpp"
#include "ipevo/point_process.hpp"
#include "ipevo/render.hpp"
#include "ipevo/scaffolding.hpp"
#include "ipevo/verify.hpp"

using namespace ipevo;

namespace {

constexpr int kValidation = 2, kBudget = 3, kStatistical = 4;

struct Global {
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string out;
    CLI::Option* seed_opt = nullptr;
};

void require_seed(const Global& g) {
    if (g.seed_opt->count() == 0) throw ValidationError("--seed is required for stochastic commands");
}

// stdout when no path is given
struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + path + " for writing");
        os = &file;
    }
};

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    return in;
}

std::vector<double> parse_masses(const std::string& s) {
    std::vector<double> m;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t used = 0;
        double x;
        try {
            x = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw ValidationError("bad mass '" + tok + "' in --init");
        }
        if (tok.find_first_not_of(" \t", used) != std::string::npos) throw ValidationError("bad mass '" + tok + "' in --init");
        m.push_back(x);
    }
    return m;
}

// "a:b:step" -> a, a+step, ..., up to b
std::vector<double> parse_levels(const std::string& s) {
    double a, b, h;
    char c1, c2;
    std::stringstream ss(s);
    if (!(ss >> a >> c1 >> b >> c2 >> h) || c1 != ':' || c2 != ':' || !ss.eof())
        throw ValidationError("--levels must look like a:b:step");
    if (!(h > 0) || !(b >= a) || !(a >= 0)) throw ValidationError("--levels needs 0 <= a <= b and step > 0");
    std::vector<double> lv;
    const auto n = std::size_t(std::floor((b - a) / h * (1 + 1e-12)));
    if (n > 10'000'000) throw ValidationError("--levels grid too large");
    for (std::size_t k = 0; k <= n; ++k) lv.push_back(a + double(k) * h);
    return lv;
}

IntervalPartition read_partition(const std::string& path) {
    auto in = open_in(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("malformed partition file " + path + ": " + e.what());
    }
    return IntervalPartition::from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interval-partition evolutions: simulate, evolve, measure, verify and render"};
    app.set_config("--config", "", "TOML file with option values (sections per subcommand)");
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    g.seed_opt = app.add_option("--seed", g.seed, "master seed");
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--out", g.out, "output file (stdout if absent)");

    DiffusionParams p;
    double cutoff = 1e-3, dt = 1e-3, horizon = 1;
    std::size_t n_grid = 128;

    auto* sim = app.add_subcommand("simulate", "sample a spindle point process and its scaffolding");
    std::string csv, method = "bridge";
    sim->add_option("--alpha", p.alpha, "stability index in (0,1)");
    sim->add_option("--q", p.q, "mass exponent, q > alpha");
    sim->add_option("--c", p.c, "mass scale");
    sim->add_option("--cutoff", cutoff, "spindle lifetime cutoff eps > 0");
    sim->add_option("--horizon", horizon, "time horizon");
    sim->add_option("--n-grid", n_grid, "samples per spindle");
    sim->add_option("--method", method, "spindle sampler: bridge|reference");
    sim->add_option("--csv", csv, "scaffolding CSV (default: --out with .csv)");

    auto* evo = app.add_subcommand("evolve", "evolve an interval partition across levels");
    std::string init, init_file, levels = "0:1:0.01", summary;
    bool have_init = false;
    evo->add_option("--alpha", p.alpha, "stability index in (0,1)");
    evo->add_option("--q", p.q, "mass exponent, q > alpha");
    evo->add_option("--c", p.c, "mass scale");
    evo->add_option("--cutoff", cutoff, "clade jump cutoff eps > 0");
    evo->add_option("--dt", dt, "Euler step of the block diffusions");
    evo->add_option("--n-grid", n_grid, "samples per spindle");
    evo->add_option("--init", init, "comma-separated initial block masses")->each([&](const std::string&) { have_init = true; });
    evo->add_option("--init-file", init_file, "initial partition JSON");
    evo->add_option("--levels", levels, "level grid a:b:step");
    evo->add_option("--summary", summary, "per-level summary CSV");

    auto* met = app.add_subcommand("metric", "distance between two partitions");
    std::string fa, fb, metric = "alpha";
    double mcut = 0;
    bool have_mcut = false;
    met->add_option("--a", fa, "partition JSON")->required();
    met->add_option("--b", fb, "partition JSON")->required();
    met->add_option("--metric", metric, "alpha|hausdorff");
    met->add_option("--cutoff", mcut, "drop blocks of mass <= cutoff")->each([&](const std::string&) { have_mcut = true; });

    auto* ver = app.add_subcommand("verify", "run the Monte Carlo verification suite");
    std::string suite = "all";
    double scale = 1;
    ver->add_option("--suite", suite, "suite name")->check(CLI::IsMember(verify::suite_names()));
    ver->add_option("--scale", scale, "sample-size multiplier")->check(CLI::PositiveNumber);

    auto* ren = app.add_subcommand("render", "SVG figure from simulate or evolve output");
    std::string rin, mode = "scaffolding";
    ren->add_option("--in", rin, "input JSONL")->required();
    ren->add_option("--mode", mode, "scaffolding|skewer|massflow");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kValidation;
    }

    try {
        if (*sim) {
            require_seed(g);
            p.validate();
            if (!(cutoff > 0)) throw ValidationError("--cutoff must be positive");
            if (!(horizon >= 0)) throw ValidationError("--horizon must be nonnegative");
            PrmConfig cfg;
            cfg.spindle.n_grid = n_grid;
            if (method == "bridge")
                cfg.spindle.method = SpindleMethod::bridge;
            else if (method == "reference")
                cfg.spindle.method = SpindleMethod::reference;
            else
                throw ValidationError("--method must be bridge or reference");
            Rng rng = make_rng(g.seed, "simulate", 0);
            auto N = sample_prm(p, cutoff, horizon, rng, cfg);
            N.seed = g.seed;
            const Scaffolding X = xi(N);
            {
                Output out(g.out);
                write_jsonl(*out.os, N);
            }
            std::string cpath = csv;
            if (cpath.empty() && !g.out.empty() && g.out != "-") {
                const auto dot = g.out.find_last_of('.');
                const auto slash = g.out.find_last_of('/');
                cpath = (dot != std::string::npos && (slash == std::string::npos || dot > slash) ? g.out.substr(0, dot) : g.out) + ".csv";
            }
            if (!cpath.empty()) {
                Output c(cpath);
                X.write_csv(*c.os);
            }
            std::cerr << "points=" << N.size() << " horizon=" << horizon << " X_end=" << X.end_value()
                      << " X_min=" << X.min_value() << " X_max=" << X.max_value() << '\n';
        } else if (*evo) {
            require_seed(g);
            p.validate();
            IntervalPartition beta(p.alpha_div());
            if (!init_file.empty() && have_init) throw ValidationError("use either --init or --init-file");
            if (!init_file.empty())
                beta = read_partition(init_file);
            else
                beta = IntervalPartition::from_masses(p.alpha_div(), parse_masses(init));
            EvolveConfig cfg;
            cfg.eps = cutoff;
            cfg.dt = dt;
            cfg.n_grid = n_grid;
            Rng rng = make_rng(g.seed, "evolve", 0);
            auto path = evolve(beta, p, parse_levels(levels), cfg, rng);
            path.seed = g.seed;
            Output out(g.out);
            write_jsonl(*out.os, path);
            if (!summary.empty()) {
                Output s(summary);
                write_summary_csv(*s.os, path);
            }
        } else if (*met) {
            const auto a = read_partition(fa), b = read_partition(fb);
            const auto kind = parse_metric_kind(metric);
            if (kind == MetricKind::alpha && (!a.has_diversity() || !b.has_diversity()))
                throw ValidationError("d_alpha undefined on I_H (a partition has no diversity marks); use --metric hausdorff (d_H')");
            double v;
            if (have_mcut) {
                const auto r = kind == MetricKind::alpha ? dist_alpha_truncated(a, b, mcut) : dist_hausdorff_truncated(a, b, mcut);
                v = r.value;
                std::cerr << "tail_bound=" << r.tail_bound << '\n';
            } else {
                v = kind == MetricKind::alpha ? dist_alpha(a, b) : dist_hausdorff(a, b);
            }
            Output out(g.out);
            *out.os << std::setprecision(17) << v << '\n';
        } else if (*ver) {
            require_seed(g);
            verify::Options o;
            o.seed = g.seed;
            o.threads = g.threads;
            o.scale = scale;
            const auto reports = verify::run_suite(suite, o);
            nlohmann::json arr = nlohmann::json::array();
            bool ok = true;
            for (const auto& r : reports) {
                arr.push_back(verify::to_json(r));
                if (r.blocking && !r.pass) ok = false;
                std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << (r.blocking ? "" : " (non-blocking)") << '\n';
            }
            Output out(g.out);
            *out.os << arr.dump(2) << '\n';
            return ok ? 0 : kStatistical;
        } else if (*ren) {
            const auto m = parse_render_mode(mode);
            auto in = open_in(rin);
            Output out(g.out);
            if (m == RenderMode::scaffolding)
                render_scaffolding_svg(*out.os, read_jsonl(in));
            else
                render_levels_svg(*out.os, read_evolution_jsonl(in), m);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
