#pragma once
#include <optional>
#include <vector>

#include <json.hpp>

namespace ipevo {

struct Block {
    double mass = 0;
    std::optional<double> div;  // diversity of the blocks to the left
};

// Ordered blocks. Endpoints are prefix sums of masses and are never stored.
// Partitions without any diversity marks live in the Hausdorff space.
class IntervalPartition {
public:
    IntervalPartition() = default;
    explicit IntervalPartition(double alpha_div) : alpha_div_(alpha_div) {}
    IntervalPartition(double alpha_div, std::vector<Block> blocks,
                      std::optional<double> total_diversity);

    // masses only, no marks
    static IntervalPartition from_masses(double alpha_div, const std::vector<double>& masses);

    double alpha_div() const { return alpha_div_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t size() const { return blocks_.size(); }
    bool empty() const { return blocks_.empty(); }
    std::optional<double> total_diversity() const { return total_div_; }

    // marks on every block and a total
    bool has_diversity() const;
    double total_mass() const;
    std::vector<double> masses() const;
    std::vector<double> ranked_masses() const;  // decreasing
    // left endpoints, i.e. exclusive prefix sums
    std::vector<double> left_endpoints() const;

    IntervalPartition without_marks() const;
    // drop blocks of mass <= cutoff; returns the dropped mass via *dropped
    IntervalPartition truncated(double cutoff, double* dropped = nullptr) const;

    nlohmann::json to_json() const;
    static IntervalPartition from_json(const nlohmann::json& j);

    bool operator==(const IntervalPartition& o) const;

private:
    void check() const;
    double alpha_div_ = 0.5;
    std::vector<Block> blocks_;
    std::optional<double> total_div_;
};

IntervalPartition concat(const std::vector<IntervalPartition>& parts);
IntervalPartition scale(double c, const IntervalPartition& beta);

}  // namespace ipevo
