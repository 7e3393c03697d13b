#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fixedpt/cli.hpp"
#include "fixedpt/io.hpp"

using namespace fixedpt;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string golden_path(const std::string& name)
{
    return std::string(FIXEDPT_GOLDEN_DIR) + "/" + name;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Scratch directory removed at scope exit.
struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() /
               ("fixedpt_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    [[nodiscard]] std::string file(const std::string& name) const
    {
        return (path / name).string();
    }
    [[nodiscard]] std::string write(const std::string& name,
                                    const std::string& text) const
    {
        std::ofstream(file(name)) << text;
        return file(name);
    }
};

}  // namespace

TEST_CASE("check")
{
    auto ok = run({"check", golden_path("cp2_12.json")});
    CHECK(ok.code == 0);
    CHECK(ok.out == slurp(golden_path("check_cp2_12.golden.json")));

    auto bad = run({"check", golden_path("unpaired.json")});
    CHECK(bad.code == 1);
    CHECK(bad.out == slurp(golden_path("check_unpaired.golden.json")));

    TempDir tmp;
    auto zero = tmp.write("zero.json",
                          R"({"dim":2,"points":[{"label":"p","weights":[0]}]})");
    auto r = run({"check", zero});
    CHECK(r.code == 2);
    CHECK(r.err.find("zero weight at p") != std::string::npos);

    CHECK(run({"check", tmp.file("missing.json")}).code == 2);

    // effectivity only counts when asked for
    auto doubled = tmp.write(
        "doubled.json",
        R"({"dim":4,"points":[{"label":"p","weights":[2,6]},)"
        R"({"label":"q","weights":[-2,4]},{"label":"r","weights":[-4,-6]}]})");
    CHECK(run({"check", doubled}).code == 0);
    CHECK(run({"check", doubled, "--require-effective"}).code == 1);
}

TEST_CASE("graph")
{
    TempDir tmp;
    auto r = run({"graph", golden_path("cp2_12.json"), "--dot", tmp.file("g.dot")});
    CHECK(r.code == 0);
    CHECK(r.out == slurp(golden_path("graph_cp2_12.golden.json")));
    CHECK(slurp(tmp.file("g.dot")) == slurp(golden_path("cp2_12.golden.dot")));

    CHECK(run({"graph", golden_path("unpaired.json")}).code == 2);
}

TEST_CASE("enumerate")
{
    TempDir tmp;
    auto r = run({"enumerate", "--n", "4", "--points", "3", "--bound", "6",
                  "--out", tmp.file("r.json")});
    CHECK(r.code == 0);
    auto doc = Json::parse(slurp(tmp.file("r.json")));
    CHECK(doc["survivors"].empty());

    auto dim4 = run({"enumerate", "--n", "2", "--points", "3", "--bound", "4"});
    CHECK(dim4.code == 0);
    CHECK(Json::parse(dim4.out)["survivor_count"] == 3);

    auto oracle = run({"enumerate", "--n", "2", "--points", "3", "--bound", "4",
                       "--oracle"});
    CHECK(oracle.code == 0);
    CHECK(Json::parse(oracle.out)["survivors"] ==
          Json::parse(dim4.out)["survivors"]);

    auto loose = run({"enumerate", "--n", "2", "--points", "3", "--bound", "4",
                      "--allow-ineffective"});
    CHECK(Json::parse(loose.out)["survivor_count"] == 4);
}

TEST_CASE("enumerate output does not depend on the worker count")
{
    TempDir tmp;
    for (const char* threads : {"1", "2", "4"}) {
        auto r = run({"enumerate", "--n", "2", "--points", "3", "--bound", "6",
                      "--allow-ineffective", "--threads", threads, "--out",
                      tmp.file(std::string("t") + threads + ".json")});
        CHECK(r.code == 0);
    }
    const auto one = slurp(tmp.file("t1.json"));
    CHECK(slurp(tmp.file("t2.json")) == one);
    CHECK(slurp(tmp.file("t4.json")) == one);
}

TEST_CASE("replay")
{
    auto r = run({"replay", "--lemma", "l33", "--n", "2", "--bound", "6"});
    CHECK(r.code == 0);
    auto doc = Json::parse(r.out);
    CHECK(doc["result"] == "pass");
    CHECK(doc["failed"] == 0);

    CHECK(run({"replay", "--lemma", "l99", "--n", "2", "--bound", "6"}).code == 2);
    CHECK(run({"replay", "--lemma", "l32", "--n", "2", "--bound", "4",
               "--points", "2"}).code == 2);
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    auto unknown = run({"check", golden_path("cp2_12.json"), "--bogus"});
    CHECK(unknown.code == 2);
    CHECK(!unknown.err.empty());
    CHECK(run({"enumerate", "--n", "2"}).code == 2);
    CHECK(run({"enumerate", "--n", "x", "--bound", "4"}).code == 2);
    CHECK(run({"enumerate", "--n", "2", "--bound", "4", "--points", "5"}).code == 2);
    CHECK(run({"enumerate", "--n", "2", "--bound", "4", "--lambda-profile", "0",
               "1"}).code == 2);

    auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("enumerate") != std::string::npos);
}
