#pragma once

#include <iosfwd>
#include <string>

#include "bps/decomposition.hpp"

// Decomposition-graph file format (JSON, UTF-8). Top-level keys: genus,
// components, curves. Unknown keys are rejected. This format is the lingua
// franca of surgery scripts, the CLI and test fixtures.

namespace bps {

struct graph_parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

DecompositionGraph read_graph_json(std::istream& in);
DecompositionGraph read_graph_json_file(const std::string& path);
DecompositionGraph parse_graph_json(const std::string& text);

std::string write_graph_json(const DecompositionGraph& g);
void write_graph_json_file(const DecompositionGraph& g, const std::string& path);

}  // namespace bps
