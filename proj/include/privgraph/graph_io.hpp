#pragma once

#include <string>

#include "privgraph/graph.hpp"

namespace privgraph {

// Plain-text edge list:
//
//   # optional comments
//   # signed-weights        <- only in files that carry negative weights
//   n 5
//   0 1 2.5
//   1 4 0
//
// The header line fixes the vertex count; each edge line names a distinct
// pair and its weight. Weight 0 is a valid explicit slot. Negative weights
// are rejected unless the "# signed-weights" marker appears before the
// header (save_graph writes the marker automatically when needed). Weights
// are written with 17 significant digits, so a save/load round trip
// reproduces every weight bit for bit.
//
// load_graph throws parse_error (with the 1-based line number) on malformed
// input: missing or duplicate header, unknown tokens, self-loops, vertices
// out of range, duplicate pairs, non-finite weights, or negative weights
// without the marker.
graph load_graph(const std::string& path);
void save_graph(const graph& g, const std::string& path);

}  // namespace privgraph
