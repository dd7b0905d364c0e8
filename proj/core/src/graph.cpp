#include "rwer/graph.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

namespace rwer {

namespace {

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char ch) { return std::isspace(ch); });
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(std::move(tok));
  return tokens;
}

}  // namespace

NodeId SparseGraph::id_of(const std::string& label) const {
  auto it = label_ids.find(label);
  if (it == label_ids.end()) {
    throw UsageError("unknown node label '" + label + "'");
  }
  return it->second;
}

const std::string& SparseGraph::label_of(NodeId id) const {
  if (id >= n) throw UsageError("node id out of range");
  return labels[id];
}

SparseGraph build_graph(NodeId n, std::vector<EdgeTriple> edges) {
  for (const auto& e : edges) {
    if (e.src >= n || e.dst >= n) throw UsageError("edge endpoint out of range");
    if (e.weight < 0.0) throw UsageError("negative edge weight");
  }
  std::sort(edges.begin(), edges.end(), [](const EdgeTriple& a, const EdgeTriple& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });

  SparseGraph g;
  g.n = n;
  g.row_ptr.assign(n + 1, 0);
  g.col.reserve(edges.size());
  g.weight.reserve(edges.size());
  g.out_weight.assign(n, 0.0);

  std::size_t i = 0;
  for (NodeId u = 0; u < n; ++u) {
    g.row_ptr[u] = g.col.size();
    while (i < edges.size() && edges[i].src == u) {
      NodeId dst = edges[i].dst;
      double w = 0.0;
      while (i < edges.size() && edges[i].src == u && edges[i].dst == dst) {
        w += edges[i].weight;  // duplicates merge by summation
        ++i;
      }
      g.col.push_back(dst);
      g.weight.push_back(w);
      g.out_weight[u] += w;
    }
  }
  g.row_ptr[n] = g.col.size();
  g.m = g.col.size();

  g.labels.resize(n);
  for (NodeId u = 0; u < n; ++u) {
    g.labels[u] = std::to_string(u);
    g.label_ids.emplace(g.labels[u], u);
  }
  return g;
}

SparseGraph load_edge_list(std::istream& source, EdgeListFormat format) {
  (void)format;  // single format for now

  struct RawEdge {
    NodeId src;
    NodeId dst;
    double weight;
  };
  std::vector<RawEdge> edges;
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> ids;

  auto intern = [&](const std::string& label) -> NodeId {
    auto [it, inserted] = ids.emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(source, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || is_blank(line)) continue;

    auto tokens = split_ws(line);
    if (tokens.size() < 2 || tokens.size() > 3) {
      throw ParseError("expected 'src dst [weight]'", lineno);
    }
    double w = 1.0;
    if (tokens.size() == 3) {
      const std::string& ws = tokens[2];
      auto [ptr, ec] = std::from_chars(ws.data(), ws.data() + ws.size(), w);
      if (ec != std::errc() || ptr != ws.data() + ws.size()) {
        throw ParseError("malformed weight '" + ws + "'", lineno);
      }
    }
    if (w < 0.0) throw ParseError("negative weight", lineno);
    NodeId src = intern(tokens[0]);
    NodeId dst = intern(tokens[1]);
    edges.push_back({src, dst, w});
  }
  if (labels.empty()) throw UsageError("empty graph: no edges in input");

  NodeId n = static_cast<NodeId>(labels.size());
  std::vector<EdgeTriple> triples;
  triples.reserve(edges.size());
  for (const auto& e : edges) triples.push_back({e.src, e.dst, e.weight});

  SparseGraph g = build_graph(n, std::move(triples));
  g.labels = std::move(labels);
  g.label_ids = std::move(ids);
  return g;
}

SparseGraph load_edge_list_file(const std::string& path, EdgeListFormat format) {
  // gzFile reads both gzip-compressed and plain files.
  gzFile f = gzopen(path.c_str(), "rb");
  if (f == nullptr) throw IoError("cannot open '" + path + "'");

  std::string content;
  char buf[1 << 16];
  int got = 0;
  while ((got = gzread(f, buf, sizeof(buf))) > 0) {
    content.append(buf, static_cast<std::size_t>(got));
  }
  bool read_error = got < 0;
  gzclose(f);
  if (read_error) throw IoError("read error in '" + path + "'");

  std::istringstream in(content);
  return load_edge_list(in, format);
}

TransitionMatrix row_normalize(const SparseGraph& g) {
  TransitionMatrix t;
  t.n = g.n;
  t.row_ptr.assign(g.n + 1, 0);
  t.node_is_dangling.assign(g.n, 0);
  t.col.reserve(g.m);
  t.value.reserve(g.m);

  for (NodeId u = 0; u < g.n; ++u) {
    t.row_ptr[u] = t.col.size();
    double d = g.out_weight[u];
    if (d <= 0.0) {
      t.node_is_dangling[u] = 1;
      t.dangling.push_back(u);
      continue;
    }
    for (std::size_t k = g.row_ptr[u]; k < g.row_ptr[u + 1]; ++k) {
      if (g.weight[k] == 0.0) continue;  // zero-weight edges carry no mass
      t.col.push_back(g.col[k]);
      t.value.push_back(g.weight[k] / d);
    }
  }
  t.row_ptr[g.n] = t.col.size();
  return t;
}

void apply_transposed(const TransitionMatrix& t, std::span<const double> x,
                      std::span<double> out) {
  if (x.size() != t.n || out.size() != t.n) {
    throw DimensionError("apply_transposed: vector length does not match node count");
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (NodeId u = 0; u < t.n; ++u) {
    double xu = x[u];
    if (xu == 0.0) continue;
    for (std::size_t k = t.row_ptr[u]; k < t.row_ptr[u + 1]; ++k) {
      out[t.col[k]] += t.value[k] * xu;
    }
  }
}

void apply_forward(const TransitionMatrix& t, std::span<const double> x,
                   std::span<double> out) {
  if (x.size() != t.n || out.size() != t.n) {
    throw DimensionError("apply_forward: vector length does not match node count");
  }
  for (NodeId u = 0; u < t.n; ++u) {
    double acc = 0.0;
    for (std::size_t k = t.row_ptr[u]; k < t.row_ptr[u + 1]; ++k) {
      acc += t.value[k] * x[t.col[k]];
    }
    out[u] = acc;
  }
}

std::vector<double> apply_transposed(const TransitionMatrix& t,
                                     const std::vector<double>& x) {
  std::vector<double> out(t.n);
  apply_transposed(t, std::span<const double>(x), std::span<double>(out));
  return out;
}

std::vector<double> apply_forward(const TransitionMatrix& t,
                                  const std::vector<double>& x) {
  std::vector<double> out(t.n);
  apply_forward(t, std::span<const double>(x), std::span<double>(out));
  return out;
}

void write_label_map(const SparseGraph& g, std::ostream& out) {
  for (NodeId u = 0; u < g.n; ++u) {
    out << u << '\t' << g.labels[u] << '\n';
  }
}

}  // namespace rwer
