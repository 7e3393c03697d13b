#ifndef FIXEDPT_IO_HPP_
#define FIXEDPT_IO_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fixedpt/constraints.hpp"
#include "fixedpt/core.hpp"
#include "fixedpt/search.hpp"

namespace fixedpt {

using Json = nlohmann::ordered_json;

/// Malformed input document; the message names the offending field.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Reads {"dim": 2n, "points": [{"label": ..., "weights": [...]}, ...]}.
FixedPointSystem parse_system(std::string_view text);
FixedPointSystem parse_system_json(const Json& doc);
FixedPointSystem read_system_file(const std::string& path);

Json system_to_json(const FixedPointSystem& system);
std::string emit_system(const FixedPointSystem& system);

Json report_to_json(const ConstraintReport& report);
std::string emit_report(const ConstraintReport& report);

struct GraphVertex {
    std::string label;
    std::size_t lambda = 0;

    friend bool operator==(const GraphVertex&, const GraphVertex&) = default;
};

struct GraphEdge {
    std::string from;
    std::string to;
    Weight k = 0;

    friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Vertices sorted by (lambda, label); an edge joins two points sharing a
/// non-isolated component of M^{Z_k}, labelled by the largest such k.
struct GraphDocument {
    std::vector<GraphVertex> vertices;
    std::vector<GraphEdge> edges;

    friend bool operator==(const GraphDocument&, const GraphDocument&) = default;
};

/// Throws Error if the system fails the pairing check.
GraphDocument emit_graph(const FixedPointSystem& system);
Json graph_to_json(const GraphDocument& graph);
std::string to_dot(const GraphDocument& graph);

Json outcome_to_json(const SearchConfig& config, const SearchOutcome& outcome);
std::string emit_outcome(const SearchConfig& config,
                         const SearchOutcome& outcome);

Json replay_to_json(const ReplayReport& report);

}  // namespace fixedpt

#endif  // FIXEDPT_IO_HPP_
