#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ipevo/interval_partition.hpp"
#include "ipevo/metric.hpp"

// Monte Carlo checks of the closed-form laws. Each replicate draws from its own stream
// make_rng(seed, test name, replicate), so results do not depend on the thread count.
namespace ipevo::verify {

struct Cell {
    std::string label;
    double statistic = 0;
    double reference = 0;
    double se = 0;
    double allowance = 0;  // discretisation term, added to the tolerance
    double tolerance = 0;
    bool pass = false;
};

struct TestReport {
    std::string name;
    std::size_t n_samples = 0;
    // worst cell (largest |statistic - reference| / tolerance)
    double statistic = 0;
    double reference_value = 0;
    double standard_error = 0;
    double k = 3;
    double allowance = 0;
    double tolerance = 0;  // pass iff |statistic - reference| <= tolerance in every cell
    bool pass = false;
    bool blocking = true;
    bool negative_control = false;
    std::uint64_t seed = 0;
    double runtime = 0;
    std::string note;
    std::vector<Cell> cells;
};

nlohmann::json to_json(const TestReport& r, bool with_runtime = true);

struct Options {
    std::uint64_t seed = 1;
    double scale = 1;      // multiplies every sample size
    unsigned threads = 1;
    double d_alpha = 0;    // negative control: alpha shift inside the simulation
};

// f(i) for i in [0,n) on `threads` workers; f must only touch slot i of its outputs
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f);

// exhaustive minimum over order-preserving correspondences (small partitions only)
double brute_force_hausdorff(const IntervalPartition& beta, const IntervalPartition& gamma);
double brute_force_alpha(const IntervalPartition& beta, const IntervalPartition& gamma);

TestReport test_metric_exactness(std::size_t n_pairs, std::size_t max_blocks, const Options& o);

TestReport test_lifetime_law(const std::vector<double>& a_grid, double alpha, const std::vector<double>& y_grid,
                             std::size_t n, const Options& o);

TestReport test_absorption_time(double alpha, double z0, std::size_t n, double dt, const Options& o);

TestReport test_aggregate_mass_subordinator(double alpha, double q, const std::vector<double>& s_grid,
                                            const std::vector<double>& lambda_grid, std::size_t n,
                                            const Options& o);

TestReport test_exit_probability(double alpha, const std::vector<std::pair<double, double>>& xy, std::size_t n,
                                 const Options& o);

enum class DiversityControl { none, shuffled_marks };
TestReport test_diversity_localtime(double alpha, double q, std::size_t n_runs, const Options& o,
                                    DiversityControl control = DiversityControl::none);

TestReport test_total_mass_besq0(double a, double alpha, const std::vector<double>& y_grid,
                                 const std::vector<double>& lambda_grid, std::size_t n, const Options& o);

TestReport test_amplitude_scale(double alpha, std::size_t n, const Options& o);

// evolve vs transition_sample at the same level
TestReport test_transition_kernel(const std::vector<double>& y_grid, std::size_t n, const Options& o);
// evolve to y vs evolve to y/2 followed by transition_sample over y/2 (non-blocking)
TestReport test_markov_composition(const std::vector<double>& y_grid, std::size_t n, const Options& o);

TestReport test_biclade_exactness(std::size_t n_processes, const Options& o);

// Suites: all, core, metric, lifetime, absorption, subordinator, exit, diversity, besq0,
// amplitude, transition, biclade, negative (alpha-shifted controls of the statistical tests).
std::vector<std::string> suite_names();
std::vector<TestReport> run_suite(const std::string& suite, const Options& o);

}  // namespace ipevo::verify
