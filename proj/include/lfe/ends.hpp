#pragma once

#include <string>
#include <vector>

#include "lfe/decomposition.hpp"
#include "lfe/graph.hpp"

namespace lfe {

/// A finite piece of an infinite graph. `boundary` lists the vertices that
/// are joined to infinite components of the complement; it is empty when
/// the represented graph is finite.
struct TruncatedGraph {
  Graph graph;
  std::vector<VertexId> boundary;  // sorted
  int level = 0;

  bool is_boundary(VertexId v) const;
  std::vector<bool> boundary_mask() const;
};

/// Nested truncations. inclusions[i][v] is the vertex of level i+1 that
/// vertex v of level i maps to.
struct Exhaustion {
  std::vector<TruncatedGraph> levels;
  std::vector<std::vector<VertexId>> inclusions;

  const TruncatedGraph& deepest() const { return levels.back(); }
  /// Map from level i into the deepest level.
  std::vector<VertexId> to_deepest(int level) const;
  /// Edge of level+1 that each edge of `level` maps to.
  std::vector<EdgeId> edge_inclusion(int level) const;
};

/// Normalises user levels inside a deepest truncation. Each level is the
/// induced subgraph on a vertex set, enlarged by the components of its
/// complement that do not reach the deepest boundary and by the previous
/// level's neighbourhood; its boundary becomes the vertices with neighbours
/// outside it. Levels that would contain deepest-boundary vertices are
/// dropped, and the deepest truncation itself is always the last level.
Exhaustion refine(const TruncatedGraph& deepest, const std::vector<std::vector<VertexId>>& level_vertices);

/// Single-level exhaustion.
Exhaustion single_level(const TruncatedGraph& t);

/// Checks the nesting invariants; returns an empty string or a description
/// of the first violation.
std::string check_exhaustion(const Exhaustion& ex);

/// Truncation with an extra vertex p joined to every boundary vertex.
struct WiredGraph {
  Graph graph;
  VertexId apex = kNoVertex;
};
inline constexpr const char* kApexLabel = "p*";

/// Throws ValidationError on an empty boundary.
WiredGraph wire(const TruncatedGraph& t);

/// For every block, its cut vertices whose side away from the block reaches
/// the boundary (component of v in G minus the block's edges).
std::vector<std::vector<VertexId>> cut_infinity(const Graph& g, const BlockCutTree& bct,
                                                const std::vector<VertexId>& boundary);

struct CoreMarking {
  std::vector<int> v_infinity;  // nodes meeting the boundary or a special vertex
  std::vector<int> core_nodes;  // convex hull of v_infinity in the tree
  std::vector<VertexId> special;
};

/// Core of a Tutte tree. Vertex sets are given in the tree's origin ids.
/// Throws std::logic_error if the hull and the leaf-deletion description
/// disagree.
CoreMarking core(const TutteTree& tt, const std::vector<VertexId>& special, const std::vector<VertexId>& boundary);

/// Core by repeatedly deleting leaves outside v_infinity.
std::vector<int> core_by_deletion(const TutteTree& tt, const std::vector<int>& v_infinity);

}  // namespace lfe
