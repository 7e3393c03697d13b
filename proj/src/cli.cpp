#include "fixedpt/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"

#include "fixedpt/io.hpp"
#include "fixedpt/search.hpp"

namespace fixedpt {

namespace {

struct Options {
    std::string file;
    bool require_effective = false;
    bool allow_ineffective = false;
    bool oracle = false;
    std::string out_path;
    std::string dot_path;
    std::string lemma;
    int n = 2;
    int points = 3;
    Weight bound = 4;
    int threads = 0;
    std::vector<int> profile;
};

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream f(path);
    if (!f || !(f << text)) {
        throw Error("cannot write " + path);
    }
}

SearchConfig search_config(const Options& o)
{
    SearchConfig config;
    config.n = o.n;
    config.point_count = o.points;
    config.weight_bound = o.bound;
    config.require_effective = !o.allow_ineffective;
    config.threads = o.threads;
    if (!o.profile.empty()) {
        auto prof = o.profile;
        std::sort(prof.begin(), prof.end());
        config.lambda_profile = prof;
    }
    config.validate();
    return config;
}

int run_check(const Options& o, std::ostream& out)
{
    auto system = read_system_file(o.file);
    CheckOptions options;
    options.require_effective = o.require_effective;
    auto report = check_system(system, options);
    out << emit_report(report);
    return report.overall() ? kExitOk : kExitFailure;
}

int run_enumerate(const Options& o, std::ostream& out, std::ostream& err)
{
    auto config = search_config(o);
    auto outcome = o.oracle ? naive_oracle(config)
                            : search_systems(config, CheckMask::all());
    const auto text = emit_outcome(config, outcome);
    if (o.out_path.empty()) {
        out << text;
    } else {
        write_text(o.out_path, text);
    }

    // Survivors that contradict the known classification are failures.
    if (config.point_count == 3 && config.require_effective && config.n >= 4 &&
        !outcome.survivors.empty()) {
        err << "error: " << outcome.survivors.size()
            << " three-point system(s) with n >= 4, first: "
            << to_string(outcome.survivors.front().to_system()) << "\n";
        return kExitFailure;
    }
    if (config.point_count == 3 && config.n == 2) {
        for (const auto& key : outcome.survivors) {
            if (!match_dim4_family(key)) {
                err << "error: survivor outside the known family: "
                    << to_string(key.to_system()) << "\n";
                return kExitFailure;
            }
        }
    }
    return kExitOk;
}

int run_replay_command(const Options& o, std::ostream& out, std::ostream& err)
{
    auto id = lemma_from_name(o.lemma);
    if (!id) {
        throw CLI::ValidationError("--lemma", "unknown lemma " + o.lemma);
    }
    auto report = run_replay(*id, search_config(o));
    out << replay_to_json(report).dump(2) << "\n";
    if (!report.ok()) {
        err << "error: counterexample " << report.counterexample_reason << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

int run_graph(const Options& o, std::ostream& out)
{
    auto graph = emit_graph(read_system_file(o.file));
    out << graph_to_json(graph).dump(2) << "\n";
    if (!o.dot_path.empty()) {
        write_text(o.dot_path, to_dot(graph));
    }
    return kExitOk;
}

void add_search_scope(CLI::App* cmd, Options& o)
{
    cmd->add_option("--n", o.n, "Half the manifold dimension")
        ->required()
        ->check(CLI::Range(1, 64));
    cmd->add_option("--bound", o.bound, "Largest weight magnitude")
        ->required()
        ->check(CLI::Range(Weight{1}, Weight{1000}));
    cmd->add_flag("--allow-ineffective", o.allow_ineffective,
                  "Keep systems whose weights share a common factor");
    cmd->add_option("--threads", o.threads, "Worker count (0: runtime default)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--lambda-profile", o.profile,
                    "Only this multiset of negative-weight counts");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err)
{
    Options o;
    CLI::App app{"Fixed point data of circle actions with few fixed points",
                 "fixedpt"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "Run every constraint check");
    check->add_option("file", o.file, "System document (JSON)")->required();
    check->add_flag("--require-effective", o.require_effective,
                    "Also require the weights to have gcd 1");

    auto* enumerate =
        app.add_subcommand("enumerate", "List systems passing every check");
    add_search_scope(enumerate, o);
    enumerate->add_option("--points", o.points, "Number of fixed points")
        ->check(CLI::Range(1, 8));
    enumerate->add_flag("--oracle", o.oracle,
                        "Use the serial brute-force reference");
    enumerate->add_option("--out", o.out_path, "Write the result here");

    auto* replay =
        app.add_subcommand("replay", "Check a lemma over a bounded search");
    replay->add_option("--lemma", o.lemma, "l22 l24 l32 l33 l34 l36 r35 r37 l46")
        ->required();
    add_search_scope(replay, o);
    replay->add_option("--points", o.points, "Number of fixed points")
        ->check(CLI::Range(1, 8));

    auto* graph = app.add_subcommand("graph", "Isotropy graph of a system");
    graph->add_option("file", o.file, "System document (JSON)")->required();
    graph->add_option("--dot", o.dot_path, "Also write Graphviz output here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (check->parsed()) {
            return run_check(o, out);
        }
        if (enumerate->parsed()) {
            return run_enumerate(o, out, err);
        }
        if (replay->parsed()) {
            return run_replay_command(o, out, err);
        }
        return run_graph(o, out);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace fixedpt
