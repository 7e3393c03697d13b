// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "fixedpt/cli.hpp"
#include "fixedpt/io.hpp"
#include "fixedpt/isotropy.hpp"
#include "fixedpt/search.hpp"

using namespace fixedpt;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

SearchConfig config(int n, int points, Weight bound, bool effective = true)
{
    SearchConfig c;
    c.n = n;
    c.point_count = points;
    c.weight_bound = bound;
    c.require_effective = effective;
    return c;
}

FixedPointSystem from(int n, const std::vector<WeightMultiset>& pts)
{
    return FixedPointSystem::from_weights(n, pts);
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Outcome dim4_classification()
{
    Outcome o;
    const auto start = Clock::now();
    const std::vector<Dim4Family> w4{{1, 1}, {1, 2}, {1, 3}};
    const std::vector<Dim4Family> w6{{1, 1}, {1, 2}, {1, 3},
                                     {1, 4}, {1, 5}, {2, 3}};
    o.require(classify_dim4(4, true) == w4, "W=4 families differ");
    o.require(classify_dim4(6, true) == w6, "W=6 families differ");
    o.require(naive_oracle(config(2, 3, 4)).survivors ==
                  enumerate_systems(config(2, 3, 4)).survivors,
              "W=4 oracle disagrees");
    const double t = seconds_since(start);
    o.require(t < 5.0, "took longer than 5 s");
    std::ostringstream d;
    d << "W=4 -> 3 families, W=6 -> 6 families (" << std::fixed
      << std::setprecision(2) << t << " s)";
    if (o.ok) {
        o.detail = d.str();
    }
    return o;
}

Outcome bounded_nonexistence()
{
    Outcome o;
    const auto start = Clock::now();
    for (auto [n, w] : {std::pair{4, Weight{6}}, std::pair{6, Weight{4}}}) {
        try {
            auto out = verify_nonexistence(n, w);
            o.require(out.survivors.empty(), "survivors");
        } catch (const NonexistenceViolation& e) {
            o.require(false, e.what());
        }
    }
    // n = 4, W = 4 against the oracle on the profile the argument forces
    auto c = config(4, 3, 4);
    c.lambda_profile = std::vector<int>{1, 2, 3};
    auto fast = enumerate_systems(c);
    auto slow = naive_oracle(c);
    o.require(fast.survivors == slow.survivors && fast.survivors.empty(),
              "n=4 W=4 oracle cross-check");
    const double t = seconds_since(start);
    o.require(t < 600.0, "took longer than 10 minutes");
    if (o.ok) {
        std::ostringstream d;
        d << "n=4 W=6 and n=6 W=4 empty; n=4 W=4 profile (1,2,3) matches oracle ("
          << slow.statistics.candidates << " assignments, " << std::fixed
          << std::setprecision(1) << t << " s)";
        o.detail = d.str();
    }
    return o;
}

Outcome localization_identities()
{
    Outcome o;
    const auto start = Clock::now();
    for (Weight a = 1; a <= 20; ++a) {
        for (Weight b = 1; b <= 20; ++b) {
            o.require(localization_sum(from(2, dim4_family(a, b))) == 0,
                      "dim-4 family a=" + std::to_string(a) +
                          " b=" + std::to_string(b));
            o.require(localization_sum(from(3, dim6_pair_family(a, b))) == 0,
                      "dim-6 pair a=" + std::to_string(a) +
                          " b=" + std::to_string(b));
        }
    }
    const double t = seconds_since(start);
    o.require(t < 1.0, "took longer than 1 s");
    if (o.ok) {
        o.detail = "800 exact zero sums for a, b in [1..20]";
    }
    return o;
}

Outcome oracle_equivalence()
{
    Outcome o;
    int configs = 0;
    for (int n = 1; n <= 2; ++n) {
        for (Weight w = 1; w <= 4; ++w) {
            for (int points = 2; points <= 3; ++points) {
                for (bool effective : {true, false}) {
                    auto c = config(n, points, w, effective);
                    ++configs;
                    o.require(enumerate_systems(c).survivors ==
                                  naive_oracle(c).survivors,
                              "n=" + std::to_string(n) + " W=" +
                                  std::to_string(w) + " P=" +
                                  std::to_string(points));
                }
            }
        }
    }
    if (o.ok) {
        o.detail = std::to_string(configs) + " configurations agree";
    }
    return o;
}

// r35 on the two families: residue-matched pairs sharing a component of
// M^{Z_d} for d the largest weight.
bool r35_on_family(const FixedPointSystem& s)
{
    const Weight d = largest_weight(s);
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            auto zv = sub_multiset_mod_k(s[i].weights, d);
            auto zw = sub_multiset_mod_k(s[j].weights, d);
            if (zv.empty() || zw.empty()) {
                continue;
            }
            if (component_lambda_relation(s[i], s[j], d, zv, zw).failed()) {
                return false;
            }
        }
    }
    return true;
}

Outcome lemma_replays()
{
    Outcome o;
    std::uint64_t instances = 0;
    for (auto id : all_lemmas()) {
        for (int n = 2; n <= 4; ++n) {
            auto report = run_replay(id, config(n, 3, 6));
            instances += report.instances;
            o.require(report.ok(), std::string(lemma_name(id)) + " n=" +
                                       std::to_string(n) + ": " +
                                       report.counterexample_reason);
        }
    }
    for (Weight a = 1; a <= 12; ++a) {
        for (Weight b = 1; b <= 12; ++b) {
            o.require(r35_on_family(from(2, dim4_family(a, b))),
                      "r35 on dim-4 family");
            o.require(r35_on_family(from(3, dim6_pair_family(a, b))),
                      "r35 on dim-6 pair");
        }
    }
    if (o.ok) {
        o.detail = std::to_string(all_lemmas().size()) +
                   " lemmas x n in {2,3,4}, W=6: " + std::to_string(instances) +
                   " instances, 0 counterexamples";
    }
    return o;
}

Outcome invariance()
{
    Outcome o;
    std::mt19937 rng(2024);

    // verdicts under permutation and reversal, on the survivors and on
    // the candidates the search rejected
    auto c = config(2, 3, 6, false);
    auto out = search_systems(c, CheckMask::all(), ReportMode::detailed);
    std::vector<FixedPointSystem> sample;
    for (const auto& k : out.survivors) {
        sample.push_back(k.to_system());
    }
    for (std::size_t i = 0; i < out.eliminations.size(); i += 7) {
        sample.push_back(out.eliminations[i].key.to_system());
    }
    const auto options = check_options(c);
    for (const auto& s : sample) {
        const bool verdict = check_system(s, options).overall();
        std::vector<WeightMultiset> pts;
        for (const auto& p : s.points()) {
            pts.push_back(p.weights);
        }
        std::shuffle(pts.begin(), pts.end(), rng);
        o.require(check_system(from(s.half_dim(), pts), options).overall() == verdict,
                  "permutation changed a verdict");
        o.require(check_system(reverse_action(s), options).overall() == verdict,
                  "reversal changed a verdict");
    }

    // prune toggles
    for (const auto& base : {config(2, 3, 5), config(4, 3, 4)}) {
        auto reference = base;
        reference.prune = PruneFlags::none();
        const auto expected = enumerate_systems(reference).survivors;
        for (unsigned bits = 1; bits < (1u << kPruneKindCount); ++bits) {
            auto cfg = base;
            for (std::size_t i = 0; i < kPruneKindCount; ++i) {
                cfg.prune.set(static_cast<PruneKind>(i), (bits >> i) & 1u);
            }
            o.require(enumerate_systems(cfg).survivors == expected,
                      "prune flags changed survivors");
        }
    }

    // worker counts, compared on the emitted documents
    std::string first;
    for (int threads : {1, 2, 4, 8}) {
        auto cfg = config(2, 3, 7, false);
        cfg.threads = threads;
        auto text = emit_outcome(cfg, enumerate_systems(cfg));
        if (first.empty()) {
            first = text;
        }
        o.require(text == first, "output differs at " + std::to_string(threads) +
                                     " workers");
    }
    if (o.ok) {
        o.detail = std::to_string(sample.size()) +
                   " systems permuted and reversed; 31 prune settings x 2 "
                   "configs; 1/2/4/8 workers byte-identical";
    }
    return o;
}

Outcome bounded_scope_note(bool prerequisites)
{
    Outcome o;
    o.require(prerequisites, "bounded criteria 2-6 did not all pass");
    if (o.ok) {
        o.detail = "unbounded weights are out of reach; n >= 4 rests on "
                   "criteria 2-6 only";
    }
    return o;
}

Outcome cli_contract()
{
    Outcome o;
    const std::string dir = FIXEDPT_GOLDEN_DIR;
    auto run = [](std::vector<std::string> args, std::string* out = nullptr) {
        std::ostringstream sout;
        std::ostringstream serr;
        int code = run_cli(args, sout, serr);
        if (out) {
            *out = sout.str();
        }
        return code;
    };
    std::string text;
    o.require(run({"check", dir + "/cp2_12.json"}, &text) == 0, "check exit 0");
    o.require(text == slurp(dir + "/check_cp2_12.golden.json"), "check golden");
    o.require(run({"check", dir + "/unpaired.json"}, &text) == 1, "check exit 1");
    o.require(text == slurp(dir + "/check_unpaired.golden.json"),
              "failing check golden");

    const std::string dot = "acceptance_graph.dot";
    o.require(run({"graph", dir + "/cp2_12.json", "--dot", dot}) == 0,
              "graph exit 0");
    o.require(slurp(dot) == slurp(dir + "/cp2_12.golden.dot"), "dot golden");
    std::remove(dot.c_str());
    auto g = emit_graph(read_system_file(dir + "/cp2_12.json"));
    o.require(g.edges == std::vector<GraphEdge>{{"p", "r", 3}, {"q", "r", 2}},
              "two edges labelled 3 and 2");

    o.require(run({"check", dir + "/cp2_12.json", "--bogus"}) == 2,
              "unknown flag exit 2");
    o.require(run({"check", dir + "/missing.json"}) == 2, "missing file exit 2");
    o.require(run({"replay", "--lemma", "l33", "--n", "2", "--bound", "6"}) == 0,
              "replay exit 0");
    if (o.ok) {
        o.detail = "check/graph goldens match; exit codes 0/1/2";
    }
    return o;
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    bool bounded_ok = true;
    std::vector<Criterion> criteria = {
        {1, "dimension-4 classification", dim4_classification},
        {2, "bounded nonexistence for n >= 4", bounded_nonexistence},
        {3, "localization identities", localization_identities},
        {4, "oracle equivalence", oracle_equivalence},
        {5, "lemma replays", lemma_replays},
        {6, "invariance suite", invariance},
        {7, "scope of the nonexistence result",
         [&] { return bounded_scope_note(bounded_ok); }},
        {8, "command-line contract", cli_contract},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.ok) {
            ++failures;
            if (c.id >= 2 && c.id <= 6) {
                bounded_ok = false;
            }
        }
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << " ("
                  << c.title << "): " << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
