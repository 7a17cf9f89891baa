#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ipevo/errors.hpp"
#include "ipevo/interval_partition.hpp"
#include "ipevo/metric.hpp"
#include "ipevo/random.hpp"

using namespace ipevo;

namespace {

IntervalPartition marked(std::vector<std::pair<double, double>> b, double total) {
    std::vector<Block> blocks;
    for (auto [m, d] : b) blocks.push_back({m, d});
    return IntervalPartition(0.5, blocks, total);
}

IntervalPartition random_marked(Rng& rng, int max_blocks) {
    const int n = int(rng() % unsigned(max_blocks + 1));
    std::vector<double> marks(n);
    for (auto& m : marks) m = 2 * uniform_open(rng);
    std::sort(marks.begin(), marks.end());
    std::vector<Block> blocks;
    for (int i = 0; i < n; ++i) blocks.push_back({0.1 + uniform_open(rng), marks[i]});
    return IntervalPartition(0.5, blocks, (marks.empty() ? 0.0 : marks.back()) + uniform_open(rng));
}

}  // namespace

TEST_SUITE("interval_partition") {

TEST_CASE("construction checks") {
    CHECK_THROWS_AS(IntervalPartition::from_masses(0.5, {1, 0}), ValidationError);
    CHECK_THROWS_AS(IntervalPartition::from_masses(0.5, {1, -2}), ValidationError);
    CHECK_THROWS_AS(marked({{1, 0.5}, {1, 0.2}}, 1), ValidationError);  // marks decrease
    CHECK_THROWS_AS(marked({{1, 0.5}}, 0.1), ValidationError);          // total below a mark
    const auto b = marked({{1, 0}, {2, 0.5}}, 1);
    CHECK(b.has_diversity());
    CHECK(b.total_mass() == 3);
    CHECK_FALSE(b.without_marks().has_diversity());
    CHECK(b.left_endpoints() == std::vector<double>{0, 1});
    CHECK(b.ranked_masses() == std::vector<double>{2, 1});
}

TEST_CASE("concat") {
    const auto e = IntervalPartition(0.5, {}, 0.0);
    const auto b = marked({{1, 0.2}, {0.5, 0.7}}, 1);
    CHECK(concat({e, b}) == b);
    const auto two = concat({IntervalPartition::from_masses(0.5, {1}), IntervalPartition::from_masses(0.5, {2})});
    CHECK(two.size() == 2);
    CHECK(two.total_mass() == 3);
    // marks shift by the diversity to the left
    const auto c = concat({b, b});
    CHECK(*c.blocks()[2].div == doctest::Approx(1.2));
    CHECK(*c.total_diversity() == doctest::Approx(2));
    CHECK_THROWS_AS(concat({IntervalPartition(0.5), IntervalPartition(0.25)}), ValidationError);
}

TEST_CASE("scale") {
    const auto b = marked({{1, 0}}, 1);
    CHECK(scale(1, b) == b);
    const auto s = scale(4, b);
    CHECK(s.blocks()[0].mass == 4);
    CHECK(*s.total_diversity() == doctest::Approx(2));  // 4^0.5
}

TEST_CASE("truncation reports the dropped mass") {
    double dropped = 0;
    const auto t = IntervalPartition::from_masses(0.5, {0.1, 1, 0.05}).truncated(0.1, &dropped);
    CHECK(t.size() == 1);
    CHECK(dropped == doctest::Approx(0.15));
}

TEST_CASE("json round trip is exact") {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const auto b = random_marked(rng, 8);
        std::stringstream ss;
        ss << b.to_json().dump();
        CHECK(IntervalPartition::from_json(nlohmann::json::parse(ss.str())) == b);
    }
    CHECK_THROWS_AS(IntervalPartition::from_json(nlohmann::json{{"blocks", 3}}), ValidationError);
}

TEST_CASE("concatenation is a contraction") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto b1 = random_marked(rng, 4), b2 = random_marked(rng, 4);
        const auto g1 = random_marked(rng, 4), g2 = random_marked(rng, 4);
        const double lhs = dist_alpha(concat({b1, b2}), concat({g1, g2}));
        CHECK(lhs <= dist_alpha(b1, g1) + dist_alpha(b2, g2) + 1e-12);
        const double lh = dist_hausdorff(concat({b1, b2}).without_marks(), concat({g1, g2}).without_marks());
        CHECK(lh <= dist_hausdorff(b1.without_marks(), g1.without_marks()) +
                        dist_hausdorff(b2.without_marks(), g2.without_marks()) + 1e-12);
    }
}

TEST_CASE("d_H' scales linearly") {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto b = random_marked(rng, 5).without_marks(), g = random_marked(rng, 5).without_marks();
        const double c = 0.1 + 3 * uniform_open(rng);
        CHECK(dist_hausdorff(scale(c, b), scale(c, g)) == doctest::Approx(c * dist_hausdorff(b, g)).epsilon(1e-12));
    }
}

}

TEST_SUITE("interval_partition") {

TEST_CASE("scale inverse and concat associativity") {
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const auto a = random_marked(rng, 4), b = random_marked(rng, 4), c = random_marked(rng, 4);
        const double k = 0.2 + 3 * uniform_open(rng);
        const auto back = scale(1 / k, scale(k, a));
        REQUIRE(back.size() == a.size());
        for (std::size_t j = 0; j < a.size(); ++j) {
            CHECK(back.blocks()[j].mass == doctest::Approx(a.blocks()[j].mass).epsilon(1e-14));
            CHECK(*back.blocks()[j].div == doctest::Approx(*a.blocks()[j].div).epsilon(1e-14));
        }
        const auto l = concat({concat({a, b}), c}), r = concat({a, concat({b, c})});
        CHECK(l.masses() == r.masses());
        CHECK(dist_alpha(l, r) <= 1e-12);
    }
}

TEST_CASE("scaling bounds hold samplewise") {
    Rng rng(19);
    for (int i = 0; i < 500; ++i) {
        const auto b = random_marked(rng, 4), g = random_marked(rng, 4);
        const double c = 0.1 + 4 * uniform_open(rng), ca = std::sqrt(c);
        const double d = dist_alpha(b, g), dc = dist_alpha(scale(c, b), scale(c, g));
        CHECK(dc >= std::min(c, ca) * d - 1e-12);
        CHECK(dc <= std::max(c, ca) * d + 1e-12);
        const double self = dist_alpha(b, scale(c, b));
        CHECK(self <= std::max(std::abs(ca - 1) * *b.total_diversity(), std::abs(c - 1) * b.total_mass()) + 1e-12);
    }
}

}
