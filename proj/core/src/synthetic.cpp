#include "rwer/synthetic.hpp"

#include <random>

namespace rwer {
namespace synthetic {

namespace {

void add_undirected(std::vector<EdgeTriple>& edges, NodeId a, NodeId b, double w = 1.0) {
  edges.push_back({a, b, w});
  edges.push_back({b, a, w});
}

}  // namespace

SparseGraph random_strongly_connected(NodeId n, std::size_t extra_edges,
                                      std::uint64_t seed) {
  if (n < 2) throw UsageError("need at least 2 nodes");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> node(0, n - 1);
  std::uniform_real_distribution<double> weight(0.5, 1.5);

  std::vector<EdgeTriple> edges;
  edges.reserve(n + extra_edges);
  for (NodeId u = 0; u < n; ++u) {
    edges.push_back({u, static_cast<NodeId>((u + 1) % n), weight(rng)});
  }
  for (std::size_t i = 0; i < extra_edges; ++i) {
    edges.push_back({node(rng), node(rng), weight(rng)});
  }
  return build_graph(n, std::move(edges));
}

SparseGraph random_graph(NodeId n, std::size_t edges, std::uint64_t seed) {
  if (n < 1) throw UsageError("need at least 1 node");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> node(0, n - 1);
  std::uniform_real_distribution<double> weight(0.5, 1.5);

  std::vector<EdgeTriple> list;
  list.reserve(edges);
  for (std::size_t i = 0; i < edges; ++i) {
    list.push_back({node(rng), node(rng), weight(rng)});
  }
  return build_graph(n, std::move(list));
}

SparseGraph two_community(NodeId community_size, double p_in,
                          std::size_t cross_edges, std::uint64_t seed) {
  if (community_size < 3) throw UsageError("communities need at least 3 nodes");
  const NodeId k = community_size;
  const NodeId n = 2 * k;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<NodeId> pick(0, k - 1);

  std::vector<EdgeTriple> edges;
  for (NodeId base : {NodeId{0}, k}) {
    for (NodeId i = 0; i < k; ++i) {
      add_undirected(edges, base + i, base + (i + 1) % k);  // connectivity ring
    }
    for (NodeId i = 0; i < k; ++i) {
      for (NodeId j = i + 1; j < k; ++j) {
        if (coin(rng) < p_in) add_undirected(edges, base + i, base + j);
      }
    }
  }
  for (std::size_t e = 0; e < cross_edges; ++e) {
    add_undirected(edges, pick(rng), static_cast<NodeId>(k + pick(rng)));
  }
  return build_graph(n, std::move(edges));
}

SparseGraph joined_cliques(NodeId k) {
  if (k < 2) throw UsageError("cliques need at least 2 nodes");
  std::vector<EdgeTriple> edges;
  for (NodeId base : {NodeId{0}, k}) {
    for (NodeId i = 0; i < k; ++i) {
      for (NodeId j = i + 1; j < k; ++j) {
        add_undirected(edges, base + i, base + j);
      }
    }
  }
  add_undirected(edges, 0, k);
  return build_graph(2 * k, std::move(edges));
}

SparseGraph star(NodeId leaves) {
  if (leaves < 1) throw UsageError("star needs at least 1 leaf");
  std::vector<EdgeTriple> edges;
  for (NodeId i = 1; i <= leaves; ++i) add_undirected(edges, 0, i);
  return build_graph(leaves + 1, std::move(edges));
}

SparseGraph two_cycle() {
  return build_graph(2, {{0, 1, 1.0}, {1, 0, 1.0}});
}

SparseGraph path(NodeId n) {
  if (n < 2) throw UsageError("path needs at least 2 nodes");
  std::vector<EdgeTriple> edges;
  for (NodeId u = 0; u + 1 < n; ++u) edges.push_back({u, static_cast<NodeId>(u + 1), 1.0});
  return build_graph(n, std::move(edges));
}

}  // namespace synthetic
}  // namespace rwer
