#pragma once

#include <vector>

#include "lfe/graph.hpp"

namespace lfe {

/// Per-vertex cyclic order of outgoing darts (a combinatorial embedding).
/// Stored both as explicit orders and as a successor table over darts.
class RotationSystem {
 public:
  RotationSystem() = default;
  /// Builds from per-vertex orders. Throws ValidationError unless every
  /// vertex lists exactly its own outgoing darts, each once.
  RotationSystem(const Graph& g, std::vector<std::vector<DartId>> orders);
  /// Builds from a successor table (succ[d] = next dart after d at s(d)).
  static RotationSystem from_successors(const Graph& g, const std::vector<DartId>& succ);

  DartId succ(DartId d) const { return succ_[d]; }
  DartId pred(DartId d) const { return pred_[d]; }
  const std::vector<DartId>& order(VertexId v) const { return orders_[v]; }
  const std::vector<std::vector<DartId>>& orders() const { return orders_; }
  int num_vertices() const { return static_cast<int>(orders_.size()); }

  /// Every permutation inverted (the mirror embedding).
  RotationSystem reversed(const Graph& g) const;

  /// Orders normalised so each starts at its least dart; equal iff the
  /// two rotation systems are the same cyclic permutations.
  std::vector<std::vector<DartId>> canonical_orders() const;
  bool operator==(const RotationSystem& other) const;
  bool operator<(const RotationSystem& other) const;

 private:
  std::vector<std::vector<DartId>> orders_;
  std::vector<DartId> succ_;
  std::vector<DartId> pred_;
};

/// Darts appearing in insertion order; useful as a starting embedding.
RotationSystem default_rotation(const Graph& g);

struct FaceWalk {
  std::vector<DartId> darts;
  int length() const { return static_cast<int>(darts.size()); }
  bool operator==(const FaceWalk&) const = default;
  auto operator<=>(const FaceWalk&) const = default;
};

/// All combinatorial faces. Each walk starts at its least dart and the list
/// is sorted by that dart.
std::vector<FaceWalk> trace_faces(const Graph& g, const RotationSystem& rot);

/// face_of[d] = index into `faces` of the walk containing dart d.
std::vector<int> face_index_of_darts(const std::vector<FaceWalk>& faces, int num_darts);

/// Orientable genus g from V - E + F = 2 - 2g. Requires a connected graph.
int euler_genus(const Graph& g, const RotationSystem& rot);

/// The vertex sequence of a face walk (source of each dart).
std::vector<VertexId> face_vertices(const Graph& g, const FaceWalk& f);

struct CycleSides {
  std::vector<DartId> cycle;
  std::vector<VertexId> inside;
  std::vector<VertexId> outside;
  std::vector<DartId> inside_darts;   // non-cycle darts at cycle vertices
  std::vector<DartId> outside_darts;
  std::vector<DartId> chords;         // darts joining two cycle vertices
};

/// Inside/outside of an oriented simple cycle under a planar rotation.
/// A dart leaving the cycle at v_i is inside when it lies strictly between
/// reverse(e_{i-1}) and e_i in the rotation at v_i; a component of G - C is
/// inside when its attaching darts are.
CycleSides cycle_sides(const Graph& g, const RotationSystem& rot, const std::vector<DartId>& cycle);

/// A subgraph together with the rotation inherited from the ambient one.
struct SubEmbedding {
  Graph graph;
  RotationSystem rot;
  std::vector<VertexId> vertex_map;       // sub -> ambient
  std::vector<EdgeId> edge_map;           // sub -> ambient
  std::vector<VertexId> ambient_vertex;   // ambient -> sub (or kNoVertex)
  std::vector<EdgeId> ambient_edge;       // ambient -> sub (or -1)

  DartId to_sub(DartId ambient) const {
    const EdgeId e = ambient_edge[dart_edge(ambient)];
    return e < 0 ? -1 : make_dart(e, dart_polarity(ambient));
  }
  DartId to_ambient(DartId sub) const { return make_dart(edge_map[dart_edge(sub)], dart_polarity(sub)); }
};

/// Restriction to the subgraph induced on `keep`.
SubEmbedding restrict_to_vertices(const Graph& g, const RotationSystem& rot, const std::vector<VertexId>& keep);
/// Restriction to the given edges (and their endpoints).
SubEmbedding restrict_to_edges(const Graph& g, const RotationSystem& rot, const std::vector<EdgeId>& keep);

/// Index of the face of `sub` whose corner at s(d) contains the ambient dart
/// d, where s(d) is in the subgraph but d is not. `sub_face_of` comes from
/// face_index_of_darts on the subgraph trace. Returns 0 when the vertex has
/// no subgraph darts (single face).
int corner_face(const SubEmbedding& sub, const std::vector<int>& sub_face_of, const RotationSystem& ambient_rot,
                DartId d);

}  // namespace lfe
