#ifndef CAUSAL_SSD_GRAPH_IO_HPP
#define CAUSAL_SSD_GRAPH_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "causal_ssd/graph.hpp"

namespace causal_ssd {

// Edge-list text format, one item per line:
//   u -- v    undirected edge
//   u -> v    directed edge
//   u         isolated node
// Anything after '#' is a comment. Labels are non-whitespace tokens.
PartiallyDirectedGraph parse_edge_list(std::string_view text);

PartiallyDirectedGraph read_edge_list(const std::filesystem::path& path);

std::string format_edge_list(const PartiallyDirectedGraph& g);

} // namespace causal_ssd

#endif // CAUSAL_SSD_GRAPH_IO_HPP
