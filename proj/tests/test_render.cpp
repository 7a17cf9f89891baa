#include <doctest.h>

#include <sstream>

#include "ipevo/errors.hpp"
#include "ipevo/render.hpp"

using namespace ipevo;

namespace {
std::size_t count(const std::string& s, const std::string& pat) {
    std::size_t n = 0;
    for (auto p = s.find(pat); p != std::string::npos; p = s.find(pat, p + 1)) ++n;
    return n;
}
}  // namespace

TEST_SUITE("render") {

TEST_CASE("empty process draws axes only") {
    std::ostringstream os;
    render_scaffolding_svg(os, SpindlePointProcess{});
    CHECK(count(os.str(), "<line") == 2);
    CHECK(count(os.str(), "<polygon") == 0);
    CHECK(os.str().rfind("</svg>") != std::string::npos);
}

TEST_CASE("one spindle, one polygon") {
    SpindlePointProcess N;
    N.cutoff = 1;
    N.points.push_back({0.5, Spindle::from_uniform(1, {0, 1, 0})});
    N.end = 1;
    std::ostringstream os;
    render_scaffolding_svg(os, N);
    CHECK(count(os.str(), "<polygon") == 1);
}

TEST_CASE("one strip per level") {
    EvolutionPath path;
    for (int i = 0; i < 200; ++i) {
        SkewerSnapshot s;
        s.y = 0.01 * i;
        s.partition = IntervalPartition::from_masses(0.5, {0.5, 0.25});
        s.block_ids = {1.0, 2.0};
        path.levels.push_back(s.y);
        path.snapshots.push_back(s);
    }
    for (auto mode : {RenderMode::skewer, RenderMode::massflow}) {
        std::ostringstream os;
        render_levels_svg(os, path, mode);
        CHECK(count(os.str(), "<g>") == 200);
        CHECK(count(os.str(), "<rect x") == 400);
    }
    CHECK(block_color(1.0) == block_color(1.0));
    CHECK_THROWS_AS(parse_render_mode("bars"), ValidationError);
    std::ostringstream os;
    render_levels_svg(os, EvolutionPath{}, RenderMode::skewer);
    CHECK(count(os.str(), "<rect x") == 0);
}

}
