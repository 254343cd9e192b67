#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "lfe/graph.hpp"
#include "lfe/rotation.hpp"

namespace lfe {

/// Blocks (maximal 2-connected subgraphs, bridges and loops included) and
/// cut vertices. Blocks are ordered by their least edge id.
struct BlockCutTree {
  std::vector<std::vector<EdgeId>> block_edges;
  std::vector<std::vector<VertexId>> block_vertices;  // sorted
  std::vector<VertexId> cut_vertices;                 // sorted
  std::vector<std::vector<int>> blocks_at;            // vertex -> blocks containing it
  std::vector<std::pair<int, VertexId>> tree_edges;   // (block, cut vertex)

  int num_blocks() const { return static_cast<int>(block_edges.size()); }
  bool is_cut(VertexId v) const { return blocks_at[v].size() > 1; }
};

BlockCutTree block_cut_tree(const Graph& g);

/// Subgraph of g spanned by one block, with maps back into g.
InducedSubgraph block_subgraph(const Graph& g, const BlockCutTree& bct, int block);

enum class TutteTag { Cycle, ThreeLink, Bond, ThreeConnected };
std::string to_string(TutteTag t);

/// One node of a Tutte decomposition. Vertex labels of `graph` are the
/// labels of the decomposed graph; `edge_origin` is -1 on virtual edges.
struct TutteNode {
  TutteTag tag = TutteTag::Cycle;
  Graph graph;
  std::vector<VertexId> vertex_origin;
  std::vector<EdgeId> edge_origin;

  bool is_virtual(EdgeId e) const { return edge_origin[e] < 0; }
  /// Local id of an original vertex, or kNoVertex.
  VertexId local_vertex(VertexId origin) const;
};

/// Gluing data between two nodes: the paired virtual edges and the
/// endpoint bijection (local vertex of a, local vertex of b).
struct TutteTreeEdge {
  int a = -1;
  int b = -1;
  EdgeId edge_a = -1;
  EdgeId edge_b = -1;
  std::array<std::pair<VertexId, VertexId>, 2> endpoints{};
};

struct TutteTree {
  std::vector<TutteNode> nodes;
  std::vector<TutteTreeEdge> edges;
  /// Set for the two-vertex, two-edge input, reported as a single bond.
  bool degenerate_digon = false;

  /// Tree edge index attached to virtual edge e of node n, or -1.
  int tree_edge_of(int node, EdgeId e) const;
  std::vector<int> neighbours(int node) const;
};

/// Tutte decomposition of a 2-connected loopless multigraph with at least
/// two edges. Throws ValidationError otherwise. Adjacent bonds and adjacent
/// cycles are merged, so the result is the unique decomposition.
TutteTree tutte_decomposition(const Graph& g);

/// Glues the nodes along the tree edges using the endpoint bijections only.
/// Throws ValidationError on inconsistent gluing data.
Graph amalgamate(const TutteTree& t);

/// The rotation systems a node admits: the mirror pair for three-connected
/// nodes and three-links, (k-1)! for a bond with k edges, one for a cycle.
std::vector<RotationSystem> component_embeddings(const TutteNode& node);

/// Embedding of the graph obtained by gluing a connected set of nodes.
/// Virtual edges that lead out of the set stay as ordinary edges.
struct ComposedEmbedding {
  Graph graph;
  std::vector<VertexId> vertex_origin;
  std::vector<EdgeId> edge_origin;     // -1 for a frontier virtual edge
  std::vector<int> frontier_tree_edge; // tree edge index, or -1 for real edges
  RotationSystem rot;
};

/// Splices per-node rotations along the virtual edges of `subset` (all
/// nodes when empty). `per_node` is indexed by node.
ComposedEmbedding compose_embeddings(const TutteTree& t, const std::vector<RotationSystem>& per_node,
                                     std::vector<int> subset = {});

/// Full composition expressed on the decomposed graph itself.
RotationSystem compose_on(const Graph& g, const TutteTree& t, const std::vector<RotationSystem>& per_node);

/// Order-independent description used to compare decompositions of
/// isomorphic inputs: one sorted entry per node in terms of vertex labels.
std::vector<std::string> tutte_signature(const Graph& g, const TutteTree& t);

}  // namespace lfe
