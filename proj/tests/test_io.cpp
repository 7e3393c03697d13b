#include "doctest.h"

#include <fstream>
#include <random>
#include <sstream>

#include "fixedpt/io.hpp"
#include "support.hpp"

using namespace fixedpt;
using fixedpt::testing::sys;

namespace {

std::string golden(const std::string& name)
{
    std::ifstream in(std::string(FIXEDPT_GOLDEN_DIR) + "/" + name);
    REQUIRE(in);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string parse_error(const std::string& text)
{
    try {
        parse_system(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

bool contains(const std::string& haystack, const std::string& needle)
{
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("parse_system reads the (1,2) family")
{
    auto s = parse_system(
        R"({"dim":4,"points":[{"label":"p","weights":[1,3]},)"
        R"({"label":"q","weights":[-1,2]},{"label":"r","weights":[-2,-3]}]})");
    CHECK(s == sys({{1, 3}, {-1, 2}, {-2, -3}}));
    CHECK(read_system_file(std::string(FIXEDPT_GOLDEN_DIR) + "/cp2_12.json") == s);
}

TEST_CASE("parse_system diagnostics name the field")
{
    CHECK(parse_error(R"({"dim":2,"points":[{"label":"p","weights":[0]}]})") ==
          "zero weight at p");
    CHECK(contains(parse_error(R"({"dim":3,"points":[{"label":"p","weights":[1]}]})"),
                   "field dim must be a positive even integer"));
    CHECK(contains(parse_error(R"({"dim":-2,"points":[{"label":"p","weights":[1]}]})"),
                   "field dim"));
    CHECK(contains(parse_error(R"({"dim":"4","points":[]})"), "field dim"));
    CHECK(contains(parse_error(R"({"dim":4,"points":[{"label":"p","weights":[1]}]})"),
                   "point p has 1 weights"));
    CHECK(parse_error(R"({"dim":2,"points":[{"label":"p","weights":[1]},)"
                      R"({"label":"p","weights":[-1]}]})") == "duplicate label p");
    CHECK(parse_error(R"({"dim":2,"points":[{"label":"p","weights":[1.5]}]})") ==
          "non-integer weight at p");
    CHECK(contains(parse_error(R"({"points":[]})"), "missing field dim"));
    CHECK(contains(parse_error(R"({"dim":2})"), "missing field points"));
    CHECK(contains(parse_error(R"({"dim":2,"points":[]})"), "field points"));
    CHECK(contains(parse_error(R"({"dim":2,"points":[{"weights":[1]}]})"),
                   "missing field label in points[0]"));
    CHECK(contains(parse_error(R"({"dim":2,"points":[{"label":"p"}]})"),
                   "missing field weights"));
    CHECK(contains(parse_error(R"({"dim":2,"extra":1,"points":[]})"),
                   "unknown field extra"));
    CHECK(contains(parse_error(R"({"dim":2,"points":[{"label":"p","weights":[1],"x":0}]})"),
                   "unknown field x in points[0]"));
    CHECK(contains(parse_error("{not json"), "invalid document"));
    CHECK(contains(parse_error("[1,2]"), "document must be an object"));
    CHECK(contains(parse_error(R"({"dim":2,"points":[{"label":"p","weights":[9999999999]}]})"),
                   "weight out of range at p"));
    CHECK_THROWS_AS(read_system_file("/nonexistent/file.json"), ParseError);
}

TEST_CASE("emit_system round-trips")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        auto s = testing::random_system(rng, 1 + trial % 4, 1 + trial % 3, 50);
        CHECK(parse_system(emit_system(s)) == s);
    }
    auto custom = FixedPointSystem(1, {{"north \"pole\"", {2}}, {"south", {-2}}});
    CHECK(parse_system(emit_system(custom)) == custom);
}

TEST_CASE("report documents")
{
    auto pass = report_to_json(check_system(sys({{1, 3}, {-1, 2}, {-2, -3}})));
    CHECK(pass["overall"] == "pass");
    CHECK(pass["checks"].size() == kCheckCount);
    for (const auto& entry : pass["checks"]) {
        CHECK(entry["verdict"] != "fail");
        CHECK(!entry.contains("witness"));
    }
    CHECK(pass["checks"][4]["id"] == "chern1_vanishing");
    CHECK(pass["checks"][4]["verdict"] == "not-applicable");

    auto all_pass = report_to_json(check_system(sys({{1, 2}, {-1, 1}, {-1, -2}})));
    CHECK(all_pass["overall"] == "pass");

    auto fail = report_to_json(check_system(sys({{1}, {-1}, {-3}})));
    CHECK(fail["overall"] == "fail");
    CHECK(fail["checks"][0]["id"] == "pairing");
    CHECK(fail["checks"][0]["witness"] ==
          Json::parse(R"({"l": 3, "count_pos": 0, "count_neg": 1})"));
}

TEST_CASE("report goldens")
{
    auto cp2 = read_system_file(std::string(FIXEDPT_GOLDEN_DIR) + "/cp2_12.json");
    CHECK(emit_report(check_system(cp2)) == golden("check_cp2_12.golden.json"));
    auto bad = read_system_file(std::string(FIXEDPT_GOLDEN_DIR) + "/unpaired.json");
    CHECK(emit_report(check_system(bad)) == golden("check_unpaired.golden.json"));
}

TEST_CASE("emit_graph")
{
    auto g = emit_graph(sys({{1, 3}, {-1, 2}, {-2, -3}}));
    CHECK(g.vertices == std::vector<GraphVertex>{{"p", 0}, {"q", 1}, {"r", 2}});
    CHECK(g.edges == std::vector<GraphEdge>{{"p", "r", 3}, {"q", "r", 2}});
    CHECK(to_dot(g) == golden("cp2_12.golden.dot"));
    CHECK(graph_to_json(g).dump(2) + "\n" == golden("graph_cp2_12.golden.json"));

    auto g11 = emit_graph(sys({{1, 2}, {-1, 1}, {-1, -2}}));
    CHECK(g11.edges == std::vector<GraphEdge>{{"p", "r", 2}});

    CHECK(emit_graph(sys({{1}, {-1}})).edges.empty());
    CHECK_THROWS_AS(emit_graph(sys({{1}, {1}})), Error);

    // a triple component joins all three points
    auto g22 = emit_graph(sys({{2, 4}, {-2, 2}, {-4, -2}}));
    CHECK(g22.edges.size() == 3);
    for (const auto& e : g22.edges) {
        CHECK(e.k >= 2);
        CHECK(e.from != e.to);
    }
}

TEST_CASE("graph is invariant under point order up to labels")
{
    std::mt19937 rng(17);
    for (Weight a = 1; a <= 5; ++a) {
        for (Weight b = 1; b <= 5; ++b) {
            auto s = sys({{a, a + b}, {-a, b}, {-b, -a - b}});
            auto reference = emit_graph(s);
            auto t = testing::shuffled(s, rng);
            auto g = emit_graph(t);
            // rename each vertex of g to the label in s with the same weights
            auto rename = [&](const std::string& label) {
                const auto& w = t.at_label(label).weights;
                for (const auto& p : s.points()) {
                    if (p.weights == w) {
                        return p.label;
                    }
                }
                return std::string("?");
            };
            std::vector<GraphEdge> renamed;
            for (const auto& e : g.edges) {
                renamed.push_back({rename(e.from), rename(e.to), e.k});
            }
            // the family's points all have distinct lambda, so order is fixed
            CHECK(renamed == reference.edges);
            CHECK(to_dot(emit_graph(s)) == to_dot(reference));
        }
    }
}

TEST_CASE("outcome documents")
{
    SearchConfig c;
    c.n = 2;
    c.point_count = 3;
    c.weight_bound = 3;
    auto out = enumerate_systems(c);
    auto doc = outcome_to_json(c, out);
    CHECK(doc["survivor_count"] == 2);
    CHECK(doc["survivors"].size() == 2);
    CHECK(doc["config"]["bound"] == 3);
    CHECK(!doc.contains("elapsed"));
    CHECK(!doc["config"].contains("threads"));
    for (const auto& s : doc["survivors"]) {
        CHECK(parse_system_json(s).half_dim() == 2);
    }
}

TEST_CASE("replay documents")
{
    SearchConfig c;
    c.n = 2;
    c.weight_bound = 4;
    auto doc = replay_to_json(run_replay(LemmaId::l33, c));
    CHECK(doc["lemma"] == "l33");
    CHECK(doc["result"] == "pass");
    CHECK(doc["failed"] == 0);
    CHECK(!doc.contains("counterexample"));
}
