#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rwer/errors.hpp"

namespace rwer {

using NodeId = std::uint32_t;

enum class EdgeListFormat {
  // Whitespace-separated "src dst [weight]" lines, '#' starts a comment line.
  kPlain,
};

// Directed weighted graph in CSR form. Node ids are dense 0-based integers
// assigned by first appearance in the input; the original labels are kept in
// `labels`. Immutable after construction.
struct SparseGraph {
  NodeId n = 0;
  std::size_t m = 0;
  std::vector<std::size_t> row_ptr;  // n + 1
  std::vector<NodeId> col;           // m, strictly increasing within a row
  std::vector<double> weight;        // m, all >= 0
  std::vector<double> out_weight;    // n, exact row sums
  std::vector<std::string> labels;   // id -> external label
  std::unordered_map<std::string, NodeId> label_ids;

  NodeId id_of(const std::string& label) const;
  const std::string& label_of(NodeId id) const;
};

// Row-normalized transition structure of a SparseGraph. Rows of nodes with
// zero weighted out-degree stay empty; their ids are listed in `dangling`.
struct TransitionMatrix {
  NodeId n = 0;
  std::vector<std::size_t> row_ptr;  // n + 1
  std::vector<NodeId> col;
  std::vector<double> value;         // each non-dangling row sums to 1
  std::vector<NodeId> dangling;      // ascending
  std::vector<std::uint8_t> node_is_dangling;  // n flags

  bool is_dangling(NodeId u) const { return node_is_dangling[u] != 0; }
  std::size_t entries() const { return col.size(); }
};

// Builds a SparseGraph from an edge-list stream. Duplicate (src,dst) pairs
// are merged by weight summation; self-loops are kept. Throws ParseError on
// malformed or negative-weight lines and UsageError on an empty graph.
SparseGraph load_edge_list(std::istream& source,
                           EdgeListFormat format = EdgeListFormat::kPlain);

// File variant with gzip transparency: both plain and gzip-compressed files
// are accepted.
SparseGraph load_edge_list_file(const std::string& path,
                                EdgeListFormat format = EdgeListFormat::kPlain);

// Direct construction from (src, dst, weight) triples with preassigned dense
// ids; labels default to the decimal ids. Used by generators and tests.
struct EdgeTriple {
  NodeId src;
  NodeId dst;
  double weight;
};
SparseGraph build_graph(NodeId n, std::vector<EdgeTriple> edges);

TransitionMatrix row_normalize(const SparseGraph& g);

// out = A~^T x, O(m). Preserves total mass of inputs supported on
// non-dangling nodes.
void apply_transposed(const TransitionMatrix& t, std::span<const double> x,
                      std::span<double> out);

// out = A~ x, O(m). Dangling rows yield 0.
void apply_forward(const TransitionMatrix& t, std::span<const double> x,
                   std::span<double> out);

std::vector<double> apply_transposed(const TransitionMatrix& t,
                                     const std::vector<double>& x);
std::vector<double> apply_forward(const TransitionMatrix& t,
                                  const std::vector<double>& x);

// Two-column TSV (internal id, external label), one node per line.
void write_label_map(const SparseGraph& g, std::ostream& out);

}  // namespace rwer
