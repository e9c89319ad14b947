#ifndef ATN_GRAPH_IO_HPP
#define ATN_GRAPH_IO_HPP

#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

#include "atn/graph.hpp"

namespace atn {

// Edge-list text: "n <count>" header, then "u v [sum]" per edge. Blank lines
// and lines starting with '#' are ignored. An edge written as "v u" with v > u
// is stored canonically; that can flip the global sign of the polynomial.
std::string to_edge_list(const SignedMultigraph& g);
SignedMultigraph parse_edge_list(std::string_view text);

// {"n": int, "edges": [[u, v, "diff"|"sum"], ...]}
nlohmann::json to_json(const SignedMultigraph& g);
SignedMultigraph graph_from_json(const nlohmann::json& j);

// Undirected DOT; parallel edges repeated, sum edges dashed.
std::string to_dot(const SignedMultigraph& g);

/// Reads either format, sniffing a leading '{' for JSON.
SignedMultigraph parse_graph(std::string_view text);
SignedMultigraph read_graph_file(const std::string& path);

/// FNV-1a 64 over the canonical edge-list text, as 16 hex digits.
std::string graph_digest(const SignedMultigraph& g);

nlohmann::json to_json(const ExponentVector& xi);
ExponentVector exponent_from_json(const nlohmann::json& j);

}  // namespace atn

#endif  // ATN_GRAPH_IO_HPP
