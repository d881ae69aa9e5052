#pragma once

#include <optional>
#include <string>
#include <variant>

#include "adtcap/network.hpp"
#include "adtcap/solver.hpp"

namespace adtcap {

struct ParseError {
    std::string message;
};

/// Canonical JSON network document:
///   { "field": p,
///     "layers": [ [ {"id": "...", "inputs": n, "outputs": n}, ... ], ... ],
///     "edges":  [ {"from": id, "x": i, "to": id, "y": j, "coeff": c}, ... ] }
/// coeff defaults to 1; indices are 0-based. Parsing succeeds on any
/// structurally well-formed document; semantic checks stay in validate().
std::variant<LayeredNetwork, ParseError> parse_network(const std::string& text);

/// Fixed key order and indentation; parse(serialize(net)) == net.
std::string serialize_network(const LayeredNetwork& net);

/// Result document: capacity plus optional path list, counters, and
/// minimizing cut (oracle runs).
struct ResultDoc {
    size_t capacity = 0;
    std::optional<PathSet> paths;
    std::optional<std::map<std::string, uint64_t>> counters;
    std::optional<std::vector<std::string>> argmin_cut;  // node ids
    std::optional<uint64_t> cuts_examined;
};

std::string serialize_result(const LayeredNetwork& net, const ResultDoc& doc);

/// Parses a result document against the network it belongs to (node ids are
/// resolved, edge coefficients restored from the network).
std::variant<ResultDoc, ParseError> parse_result(const LayeredNetwork& net,
                                                 const std::string& text);

/// One-line machine readable error for stderr.
std::string error_json(const std::string& kind, const std::string& message);

/// Layered left-to-right DOT rendering; with a path set, each path's edges
/// share a distinct color.
std::string to_dot(const LayeredNetwork& net, const PathSet* paths = nullptr);

}  // namespace adtcap
