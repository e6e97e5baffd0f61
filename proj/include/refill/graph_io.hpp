#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "refill/elimination.hpp"
#include "refill/graph.hpp"

namespace refill {

enum class GraphFormat { Auto, EdgeList, MatrixPattern };

// A parsed instance: the graph plus the mapping from internal ids back to
// the labels used in the input file (internal id = first-appearance order).
struct LoadedGraph {
    Graph graph;
    std::vector<std::string> labels;
    std::int64_t dropped_duplicates = 0;
    std::int64_t dropped_self_loops = 0;
    std::string name;
};

// Auto-detection: a first non-blank line starting with '%' means
// matrix-pattern, anything else is an edge list.
LoadedGraph load_graph(const std::string& path, GraphFormat format = GraphFormat::Auto);
LoadedGraph parse_graph(std::istream& in, GraphFormat format = GraphFormat::Auto,
                        const std::string& name = "<stream>");

// one "u v" line per edge, labels when provided, ids otherwise
void save_edge_list(const Graph& g, const std::string& path,
                    std::span<const std::string> labels = {},
                    std::span<const std::string> header_comments = {});

// header comments, then "# fill=<k>", then one vertex label per line
void write_ordering_file(const std::string& path, const Ordering& ordering,
                         std::span<const std::string> labels,
                         std::span<const std::string> header_comments = {});

// "id label" lines, one per vertex
void write_label_mapping(const std::string& path, std::span<const std::string> labels);

std::vector<std::string> default_labels(int n);

// rows x cols grid, vertex (r, c) has id r*cols + c
Graph gen_grid(int rows, int cols);

// Erdos-Renyi G(n, p), each pair sampled independently under `seed`
Graph gen_gnp(int n, double p, std::uint64_t seed);

}  // namespace refill
