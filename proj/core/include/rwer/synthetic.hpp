#pragma once

#include <cstdint>
#include <vector>

#include "rwer/graph.hpp"

namespace rwer {
namespace synthetic {

// Directed cycle 0 -> 1 -> ... -> n-1 -> 0 plus `extra_edges` random arcs
// with weights in [0.5, 1.5]. The cycle keeps the graph strongly connected
// and aperiodicity follows from the random chords (and self-loops allowed).
SparseGraph random_strongly_connected(NodeId n, std::size_t extra_edges,
                                      std::uint64_t seed);

// Uniform random directed graph; may contain dangling nodes.
SparseGraph random_graph(NodeId n, std::size_t edges, std::uint64_t seed);

// Two equally sized communities with dense undirected in-community edges
// (probability p_in, plus a ring so each community is connected) and
// `cross_edges` undirected bridges between them.
SparseGraph two_community(NodeId community_size, double p_in,
                          std::size_t cross_edges, std::uint64_t seed);

// Two cliques of size k joined by a single undirected edge (0 <-> k).
SparseGraph joined_cliques(NodeId k);

// Star with `leaves` leaf nodes, edges in both directions.
SparseGraph star(NodeId leaves);

// Two-node cycle 0 <-> 1.
SparseGraph two_cycle();

// Directed path 0 -> 1 -> ... -> n-1; the last node is dangling.
SparseGraph path(NodeId n);

}  // namespace synthetic
}  // namespace rwer
