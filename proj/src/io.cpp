#include "fixedpt/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "fixedpt/isotropy.hpp"

namespace fixedpt {

namespace {

const Json& require_field(const Json& obj, const char* field,
                          const std::string& where)
{
    auto it = obj.find(field);
    if (it == obj.end()) {
        throw ParseError("missing field " + std::string(field) + where);
    }
    return *it;
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> known,
                    const std::string& where)
{
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::none_of(known.begin(), known.end(),
                         [&](const char* k) { return key == k; })) {
            throw ParseError("unknown field " + key + where);
        }
    }
}

Json witness_to_json(const Witness& w)
{
    Json out = Json::object();
    for (const auto& [key, value] : w.fields) {
        std::visit([&](const auto& v) { out[key] = v; }, value);
    }
    return out;
}

std::string quoted(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

FixedPointSystem parse_system_json(const Json& doc)
{
    if (!doc.is_object()) {
        throw ParseError("document must be an object");
    }
    reject_unknown(doc, {"dim", "points"}, "");
    const auto& dim = require_field(doc, "dim", "");
    if (!dim.is_number_integer()) {
        throw ParseError("field dim must be an integer");
    }
    const auto dim_value = dim.get<std::int64_t>();
    if (dim_value <= 0 || dim_value % 2 != 0 || dim_value > 1'000'000) {
        throw ParseError("field dim must be a positive even integer, got " +
                         std::to_string(dim_value));
    }
    const int half = static_cast<int>(dim_value / 2);

    const auto& points = require_field(doc, "points", "");
    if (!points.is_array() || points.empty()) {
        throw ParseError("field points must be a nonempty array");
    }
    std::vector<FixedPoint> parsed;
    std::set<std::string> labels;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        const std::string where = " in points[" + std::to_string(i) + "]";
        if (!pt.is_object()) {
            throw ParseError("points[" + std::to_string(i) +
                             "] must be an object");
        }
        reject_unknown(pt, {"label", "weights"}, where);
        const auto& label = require_field(pt, "label", where);
        if (!label.is_string() || label.get<std::string>().empty()) {
            throw ParseError("field label must be a nonempty string" + where);
        }
        const auto name = label.get<std::string>();
        if (!labels.insert(name).second) {
            throw ParseError("duplicate label " + name);
        }
        const auto& weights = require_field(pt, "weights", where);
        if (!weights.is_array()) {
            throw ParseError("field weights must be an array at " + name);
        }
        std::vector<Weight> ws;
        for (const auto& w : weights) {
            if (!w.is_number_integer()) {
                throw ParseError("non-integer weight at " + name);
            }
            const auto v = w.get<std::int64_t>();
            if (v == 0) {
                throw ParseError("zero weight at " + name);
            }
            if (v > kMaxWeightMagnitude || v < -kMaxWeightMagnitude) {
                throw ParseError("weight out of range at " + name);
            }
            ws.push_back(v);
        }
        if (ws.size() != static_cast<std::size_t>(half)) {
            throw ParseError("point " + name + " has " +
                             std::to_string(ws.size()) +
                             " weights, expected dim/2 = " +
                             std::to_string(half));
        }
        parsed.push_back({name, WeightMultiset(std::move(ws))});
    }
    return FixedPointSystem(half, std::move(parsed));
}

FixedPointSystem parse_system(std::string_view text)
{
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid document: ") + e.what());
    }
    return parse_system_json(doc);
}

FixedPointSystem read_system_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot read " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_system(buf.str());
}

Json system_to_json(const FixedPointSystem& system)
{
    Json points = Json::array();
    for (const auto& pt : system.points()) {
        Json weights = Json::array();
        for (Weight w : pt.weights) {
            weights.push_back(w);
        }
        points.push_back(Json{{"label", pt.label}, {"weights", weights}});
    }
    return Json{{"dim", system.dim()}, {"points", points}};
}

std::string emit_system(const FixedPointSystem& system)
{
    return system_to_json(system).dump(2) + "\n";
}

Json report_to_json(const ConstraintReport& report)
{
    Json checks = Json::array();
    for (const auto& e : report.checks) {
        Json entry{{"id", check_name(e.id)},
                   {"verdict", to_string(e.verdict)},
                   {"anchor", e.anchor}};
        if (e.witness) {
            entry["witness"] = witness_to_json(*e.witness);
        }
        checks.push_back(std::move(entry));
    }
    return Json{{"overall", report.overall() ? "pass" : "fail"},
                {"checks", checks}};
}

std::string emit_report(const ConstraintReport& report)
{
    return report_to_json(report).dump(2) + "\n";
}

GraphDocument emit_graph(const FixedPointSystem& system)
{
    if (!pairing_check(system).passed()) {
        throw Error("graph needs a system whose weights pair up");
    }
    GraphDocument graph;
    for (const auto& pt : system.points()) {
        graph.vertices.push_back({pt.label, lambda_count(pt.weights)});
    }
    std::sort(graph.vertices.begin(), graph.vertices.end(),
              [](const GraphVertex& a, const GraphVertex& b) {
                  return std::tie(a.lambda, a.label) <
                         std::tie(b.lambda, b.label);
              });
    auto rank = [&](const std::string& label) {
        return std::find_if(graph.vertices.begin(), graph.vertices.end(),
                            [&](const auto& v) { return v.label == label; }) -
               graph.vertices.begin();
    };

    Weight top = 0;
    for (const auto& pt : system.points()) {
        for (Weight w : pt.weights) {
            top = std::max(top, w < 0 ? -w : w);
        }
    }
    // largest k per unordered pair, keyed by vertex ranks
    std::map<std::pair<std::ptrdiff_t, std::ptrdiff_t>, Weight> best;
    for (Weight k = 2; k <= top; ++k) {
        auto result = classify_isotropy(system, k);
        if (!result.consistent()) {
            continue;
        }
        for (const auto& comp : result.decomposition->components) {
            if (comp.type == ComponentType::isolated) {
                continue;
            }
            for (std::size_t i = 0; i < comp.labels.size(); ++i) {
                for (std::size_t j = i + 1; j < comp.labels.size(); ++j) {
                    auto a = rank(comp.labels[i]);
                    auto b = rank(comp.labels[j]);
                    best[{std::min(a, b), std::max(a, b)}] = k;
                }
            }
        }
    }
    for (const auto& [ends, k] : best) {
        graph.edges.push_back(
            {graph.vertices[static_cast<std::size_t>(ends.first)].label,
             graph.vertices[static_cast<std::size_t>(ends.second)].label, k});
    }
    return graph;
}

Json graph_to_json(const GraphDocument& graph)
{
    Json vertices = Json::array();
    for (const auto& v : graph.vertices) {
        vertices.push_back(Json{{"label", v.label}, {"lambda", v.lambda}});
    }
    Json edges = Json::array();
    for (const auto& e : graph.edges) {
        edges.push_back(Json{{"from", e.from}, {"to", e.to}, {"k", e.k}});
    }
    return Json{{"vertices", vertices}, {"edges", edges}};
}

std::string to_dot(const GraphDocument& graph)
{
    std::ostringstream out;
    out << "graph fixed_points {\n";
    for (const auto& v : graph.vertices) {
        out << "  " << quoted(v.label) << " [lambda=" << v.lambda << "];\n";
    }
    for (const auto& e : graph.edges) {
        out << "  " << quoted(e.from) << " -- " << quoted(e.to)
            << " [k=" << e.k << "];\n";
    }
    out << "}\n";
    return out.str();
}

Json outcome_to_json(const SearchConfig& config, const SearchOutcome& outcome)
{
    Json cfg{{"n", config.n},
             {"points", config.point_count},
             {"bound", config.weight_bound},
             {"effective", config.require_effective}};
    if (config.lambda_profile) {
        cfg["lambda_profile"] = *config.lambda_profile;
    }
    Json survivors = Json::array();
    for (const auto& key : outcome.survivors) {
        survivors.push_back(system_to_json(key.to_system()));
    }
    const auto& st = outcome.statistics;
    Json pruned = Json::object();
    for (std::size_t i = 0; i < kPruneKindCount; ++i) {
        pruned[std::string(prune_name(static_cast<PruneKind>(i)))] =
            st.pruned[i];
    }
    Json eliminated = Json::object();
    for (auto id : kReportOrder) {
        const auto& e = st.eliminated[static_cast<std::size_t>(id)];
        eliminated[std::string(check_name(id))] =
            Json{{"even_largest", e[0]}, {"odd_largest", e[1]}};
    }
    return Json{{"config", cfg},
                {"survivor_count", outcome.survivors.size()},
                {"survivors", survivors},
                {"statistics",
                 Json{{"partial_nodes", st.partial_nodes},
                      {"candidates", st.candidates},
                      {"pruned", pruned},
                      {"eliminated", eliminated}}}};
}

std::string emit_outcome(const SearchConfig& config,
                         const SearchOutcome& outcome)
{
    return outcome_to_json(config, outcome).dump(2) + "\n";
}

Json replay_to_json(const ReplayReport& report)
{
    Json out{{"lemma", lemma_name(report.lemma)},
             {"n", report.scope.n},
             {"points", report.scope.point_count},
             {"bound", report.scope.weight_bound},
             {"candidates", report.candidates},
             {"instances", report.instances},
             {"passed", report.passed},
             {"failed", report.failed},
             {"result", report.ok() ? "pass" : "fail"}};
    if (report.counterexample) {
        out["counterexample"] = system_to_json(report.counterexample->to_system());
        out["reason"] = report.counterexample_reason;
    }
    return out;
}

}  // namespace fixedpt
