#include "ipevo/interval_partition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ipevo/errors.hpp"

namespace ipevo {

IntervalPartition::IntervalPartition(double alpha_div, std::vector<Block> blocks,
                                     std::optional<double> total_diversity)
    : alpha_div_(alpha_div), blocks_(std::move(blocks)), total_div_(total_diversity) {
    check();
}

IntervalPartition IntervalPartition::from_masses(double alpha_div, const std::vector<double>& masses) {
    std::vector<Block> b;
    b.reserve(masses.size());
    for (double m : masses) b.push_back({m, std::nullopt});
    return IntervalPartition(alpha_div, std::move(b), std::nullopt);
}

void IntervalPartition::check() const {
    if (!(alpha_div_ > 0 && alpha_div_ < 1))
        throw ValidationError("alpha_div must lie in (0,1)");
    double prev = 0;
    for (const auto& b : blocks_) {
        if (!(b.mass > 0) || !std::isfinite(b.mass))
            throw ValidationError("block masses must be positive and finite");
        if (b.div) {
            if (*b.div < 0) throw ValidationError("negative diversity mark");
            // float slack for marks built from sums of local-time increments
            if (*b.div < prev - 1e-12) throw ValidationError("diversity marks must be nondecreasing");
            prev = std::max(prev, *b.div);
        }
    }
    if (total_div_) {
        if (*total_div_ < 0) throw ValidationError("negative total diversity");
        if (*total_div_ < prev - 1e-12) throw ValidationError("total diversity below a block mark");
    }
}

bool IntervalPartition::has_diversity() const {
    if (!total_div_) return false;
    return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.div.has_value(); });
}

double IntervalPartition::total_mass() const {
    double s = 0;
    for (const auto& b : blocks_) s += b.mass;
    return s;
}

std::vector<double> IntervalPartition::masses() const {
    std::vector<double> m;
    m.reserve(blocks_.size());
    for (const auto& b : blocks_) m.push_back(b.mass);
    return m;
}

std::vector<double> IntervalPartition::ranked_masses() const {
    auto m = masses();
    std::sort(m.begin(), m.end(), std::greater<>());
    return m;
}

std::vector<double> IntervalPartition::left_endpoints() const {
    std::vector<double> a;
    a.reserve(blocks_.size());
    double s = 0;
    for (const auto& b : blocks_) {
        a.push_back(s);
        s += b.mass;
    }
    return a;
}

IntervalPartition IntervalPartition::without_marks() const {
    IntervalPartition r(alpha_div_);
    r.blocks_ = blocks_;
    for (auto& b : r.blocks_) b.div.reset();
    return r;
}

IntervalPartition IntervalPartition::truncated(double cutoff, double* dropped) const {
    IntervalPartition r(alpha_div_);
    r.total_div_ = total_div_;
    double d = 0;
    for (const auto& b : blocks_) {
        if (b.mass > cutoff)
            r.blocks_.push_back(b);
        else
            d += b.mass;
    }
    if (dropped) *dropped = d;
    return r;
}

nlohmann::json IntervalPartition::to_json() const {
    nlohmann::json j;
    j["alpha_div"] = alpha_div_;
    j["total_diversity"] = total_div_ ? nlohmann::json(*total_div_) : nlohmann::json(nullptr);
    auto arr = nlohmann::json::array();
    for (const auto& b : blocks_)
        arr.push_back({{"mass", b.mass}, {"div", b.div ? nlohmann::json(*b.div) : nlohmann::json(nullptr)}});
    j["blocks"] = std::move(arr);
    return j;
}

IntervalPartition IntervalPartition::from_json(const nlohmann::json& j) {
    try {
        double a = j.at("alpha_div").get<double>();
        std::optional<double> tot;
        if (j.contains("total_diversity") && !j["total_diversity"].is_null())
            tot = j["total_diversity"].get<double>();
        std::vector<Block> blocks;
        for (const auto& b : j.at("blocks")) {
            Block blk{b.at("mass").get<double>(), std::nullopt};
            if (b.contains("div") && !b["div"].is_null()) blk.div = b["div"].get<double>();
            blocks.push_back(blk);
        }
        return IntervalPartition(a, std::move(blocks), tot);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed partition JSON: ") + e.what());
    }
}

bool IntervalPartition::operator==(const IntervalPartition& o) const {
    if (alpha_div_ != o.alpha_div_ || total_div_ != o.total_div_ || blocks_.size() != o.blocks_.size())
        return false;
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        if (blocks_[i].mass != o.blocks_[i].mass || blocks_[i].div != o.blocks_[i].div) return false;
    return true;
}

IntervalPartition concat(const std::vector<IntervalPartition>& parts) {
    if (parts.empty()) return IntervalPartition();
    const double a = parts.front().alpha_div();
    bool marks = false, all_marks = true;
    for (const auto& p : parts) {
        if (p.alpha_div() != a) throw ValidationError("concat: mixed alpha_div");
        if (p.total_diversity()) marks = true;
        // an empty part without a total has diversity 0 and does not spoil marks
        if (!p.has_diversity() && !(p.empty() && !p.total_diversity())) all_marks = false;
    }
    const bool keep = marks && all_marks;
    std::vector<Block> out;
    double shift = 0;
    for (const auto& p : parts) {
        for (const auto& b : p.blocks())
            out.push_back({b.mass, keep ? std::optional<double>(*b.div + shift) : std::nullopt});
        if (keep && p.total_diversity()) shift += *p.total_diversity();
    }
    return IntervalPartition(a, std::move(out), keep ? std::optional<double>(shift) : std::nullopt);
}

IntervalPartition scale(double c, const IntervalPartition& beta) {
    if (!(c > 0)) throw ValidationError("scale factor must be positive");
    const double cd = std::pow(c, beta.alpha_div());
    std::vector<Block> out;
    out.reserve(beta.size());
    for (const auto& b : beta.blocks())
        out.push_back({b.mass * c, b.div ? std::optional<double>(*b.div * cd) : std::nullopt});
    auto tot = beta.total_diversity();
    if (tot) *tot *= cd;
    return IntervalPartition(beta.alpha_div(), std::move(out), tot);
}

}  // namespace ipevo
