#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path p = fs::temp_directory_path() / ("ipevo_cli_" + std::to_string(::getpid()));
    TempDir() { fs::create_directories(p); }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(p, ec);
    }
};

const fs::path& dir() {
    static const TempDir d;
    return d.p;
}

int run(const std::string& args) {
    const std::string cmd = std::string(IPEVO_CLI) + " " + args + " 2>" + (dir() / "stderr.txt").string();
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string f(const char* name) { return (dir() / name).string(); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("simulate is deterministic under a seed") {
    REQUIRE(run("--seed 7 --out " + f("a.jsonl") + " simulate --cutoff 0.01 --horizon 1 --n-grid 8") == 0);
    REQUIRE(run("--seed 7 --out " + f("b.jsonl") + " simulate --cutoff 0.01 --horizon 1 --n-grid 8") == 0);
    CHECK(slurp(f("a.jsonl")) == slurp(f("b.jsonl")));
    CHECK(slurp(f("a.csv")) == slurp(f("b.csv")));
    REQUIRE(run("--seed 8 --out " + f("c.jsonl") + " simulate --cutoff 0.01 --horizon 1 --n-grid 8") == 0);
    CHECK(slurp(f("a.jsonl")) != slurp(f("c.jsonl")));
    REQUIRE(run("--out " + f("a.svg") + " render --in " + f("a.jsonl") + " --mode scaffolding") == 0);
    CHECK(slurp(f("a.svg")).find("<polygon") != std::string::npos);
}

TEST_CASE("validation errors exit with 2") {
    CHECK(run("--seed 1 simulate --cutoff 0") == 2);
    CHECK(run("--seed 1 simulate --alpha 0.5 --q 0.4") == 2);
    CHECK(run("simulate --cutoff 0.1") == 2);  // no seed
    CHECK(run("--seed 1 evolve --init 1,x") == 2);
    CHECK(run("--seed 1 evolve --levels 1:0:0.1") == 2);
    CHECK(run("--seed 1 verify --suite nonsense") == 2);
    CHECK(run("nonsense") == 2);
}

TEST_CASE("evolve and metric") {
    REQUIRE(run("--seed 3 --out " + f("e.jsonl") + " evolve --init 0.5,1 --levels 0:0.2:0.05 --cutoff 0.01 --n-grid 8 --summary " +
                f("e.csv")) == 0);
    REQUIRE(run("--seed 3 --out " + f("e2.jsonl") + " evolve --init 0.5,1 --levels 0:0.2:0.05 --cutoff 0.01 --n-grid 8") == 0);
    CHECK(slurp(f("e.jsonl")) == slurp(f("e2.jsonl")));
    CHECK_FALSE(slurp(f("e.csv")).empty());
    REQUIRE(run("--out " + f("m.svg") + " render --in " + f("e.jsonl") + " --mode massflow") == 0);
    // empty and single-block initial states
    CHECK(run("--seed 3 --out " + f("empty.jsonl") + " evolve --init \"\" --levels 0:0.1:0.05") == 0);
    CHECK(run("--seed 3 --out " + f("one.jsonl") + " evolve --init 1 --levels 0:0.1:0.05 --cutoff 0.01") == 0);

    std::ofstream(f("p.json")) << R"({"alpha_div":0.5,"blocks":[{"mass":1,"div":0},{"mass":2,"div":0.5}],"total_diversity":1})";
    std::ofstream(f("h.json")) << R"({"alpha_div":0.5,"blocks":[{"mass":1},{"mass":2}]})";
    REQUIRE(run("--out " + f("d.txt") + " metric --a " + f("p.json") + " --b " + f("p.json")) == 0);
    CHECK(std::stod(slurp(f("d.txt"))) == 0);
    CHECK(run("metric --a " + f("p.json") + " --b " + f("h.json")) == 2);
    CHECK(slurp(f("stderr.txt")).find("hausdorff") != std::string::npos);
    REQUIRE(run("--out " + f("d2.txt") + " metric --metric hausdorff --a " + f("p.json") + " --b " + f("h.json")) == 0);
    CHECK(std::stod(slurp(f("d2.txt"))) == 0);
}

TEST_CASE("verify writes a report") {
    REQUIRE(run("--seed 1 --out " + f("v.json") + " verify --suite metric --scale 0.1") == 0);
    CHECK(slurp(f("v.json")).find("\"pass\": true") != std::string::npos);
}

}
