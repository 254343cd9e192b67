#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lfe {

using VertexId = int;
using EdgeId = int;
using DartId = int;

inline constexpr VertexId kNoVertex = -1;

/// Raised when an input violates a structural precondition (bad rotation,
/// non-simple cycle, wrong connectivity, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by brute-force searches whose input exceeds the configured bound.
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Darts are encoded as 2*edge + polarity. Polarity 0 runs from the first
// endpoint to the second, so the reverse dart is a single xor.
inline constexpr DartId make_dart(EdgeId e, int polarity) { return 2 * e + polarity; }
inline constexpr EdgeId dart_edge(DartId d) { return d >> 1; }
inline constexpr int dart_polarity(DartId d) { return d & 1; }
inline constexpr DartId reverse(DartId d) { return d ^ 1; }

struct Edge {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
};

/// Finite undirected multigraph. Loops and parallel edges are allowed;
/// vertex labels are the external ids used by the file formats.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int num_vertices);

  VertexId add_vertex(std::string label = {});
  EdgeId add_edge(VertexId u, VertexId v);

  int num_vertices() const { return static_cast<int>(labels_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_darts() const { return 2 * num_edges(); }

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }

  VertexId source(DartId d) const {
    const Edge& e = edges_[dart_edge(d)];
    return dart_polarity(d) == 0 ? e.u : e.v;
  }
  VertexId target(DartId d) const { return source(reverse(d)); }

  /// Outgoing darts at v in insertion order (a loop contributes both darts).
  const std::vector<DartId>& darts_at(VertexId v) const { return incident_.at(v); }
  int degree(VertexId v) const { return static_cast<int>(incident_.at(v).size()); }

  std::vector<VertexId> neighbors(VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const;
  int edge_multiplicity(VertexId u, VertexId v) const;
  bool is_simple() const;

  const std::string& label(VertexId v) const { return labels_.at(v); }
  void set_label(VertexId v, std::string label) { labels_.at(v) = std::move(label); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Index of the vertex with this label, or kNoVertex.
  VertexId find_label(const std::string& label) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<DartId>> incident_;
  std::vector<std::string> labels_;
};

bool is_connected(const Graph& g);

/// Component index per vertex, ignoring vertices flagged in `removed`.
/// Removed vertices get -1. Returns the number of components.
int components(const Graph& g, const std::vector<bool>& removed, std::vector<int>& comp);

/// Subgraph induced on `keep` (in the given order). `vertex_map[i]` is the
/// original id of new vertex i; edges keep their relative order.
struct InducedSubgraph {
  Graph graph;
  std::vector<VertexId> vertex_map;
  std::vector<EdgeId> edge_map;
};
InducedSubgraph induced_subgraph(const Graph& g, const std::vector<VertexId>& keep);

/// Graph with vertex i renamed to perm[i]; edge order is preserved.
Graph relabel(const Graph& g, const std::vector<VertexId>& perm);

/// Exact isomorphism test for small multigraphs (backtracking with
/// degree refinement). Edge multiplicities and loops must match.
bool isomorphic(const Graph& a, const Graph& b);

/// Standard named graphs.
Graph complete_graph(int n);
Graph complete_bipartite(int a, int b);
Graph cycle_graph(int n);
Graph path_graph(int n);

}  // namespace lfe
