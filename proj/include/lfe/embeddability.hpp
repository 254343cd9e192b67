#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lfe/ends.hpp"
#include "lfe/planarity.hpp"
#include "lfe/rotation.hpp"

namespace lfe {

/// K5 or K3,3 found with one pattern vertex at infinity. Vertex ids refer to
/// the deepest level of the exhaustion.
struct StarMinorWitness {
  KuratowskiPattern pattern = KuratowskiPattern::K5;
  int level = 0;
  int apex_vertex = -1;
  /// One set per pattern vertex; the entry at apex_vertex is empty.
  std::vector<std::vector<VertexId>> finite_branch_sets;
  std::vector<VertexId> infinity_part;                  // sorted
  std::vector<std::vector<VertexId>> infinity_components;
  /// Per pattern edge (in pattern_graph order) an edge x-y of the deepest
  /// level. y == kNoVertex means x is a deepest-boundary vertex whose edge
  /// leaves the truncation towards the apex.
  std::vector<std::pair<VertexId, VertexId>> edge_realizers;
};

/// Independent re-check of every witness invariant against the deepest
/// truncation. Returns an empty string or the first violation.
std::string verify_star_minor(const TruncatedGraph& deepest, const StarMinorWitness& w);

/// K5 when a bounded exact minor search finds one on the wired level,
/// otherwise the pattern of its Kuratowski subdivision. Throws
/// ValidationError when the wired level is planar.
StarMinorWitness star_minor_witness(const Exhaustion& ex, int level);

enum class LevelVerdict { EmbeddableSoFar, Obstructed };
std::string to_string(LevelVerdict v);

enum class ChainStatus { Ok, ExhaustionTooSmall, Obstructed, BudgetExceeded };
std::string to_string(ChainStatus s);

/// One rotation per level, each restricting to the previous one, with all
/// boundary vertices on face infinite_face[i] of trace_faces(level i) and
/// every vertex of level i+1 outside level i placed inside that face.
struct CoherentChain {
  ChainStatus status = ChainStatus::Ok;
  std::vector<RotationSystem> rotations;
  std::vector<int> infinite_face;  // -1 for an edgeless level
  std::int64_t embeddings_tried = 0;
};

/// Depth-first search over wired embeddings level by level, backtracking
/// when a level admits no extension. Enumeration order is deterministic.
CoherentChain coherent_embedding(const Exhaustion& ex, std::int64_t node_budget = 50'000'000);

struct EmbeddabilityOptions {
  bool build_chain = true;
  bool build_witness = true;
  std::int64_t node_budget = 50'000'000;
};

struct EmbeddabilityReport {
  std::vector<LevelVerdict> verdicts;
  int first_obstructed = -1;
  std::optional<StarMinorWitness> witness;
  std::optional<CoherentChain> chain;

  bool embeddable_so_far() const { return first_obstructed < 0; }
};

/// Wired planarity at every level; a witness for the first obstructed level
/// or a coherent chain when none is obstructed.
EmbeddabilityReport locally_finite_embeddable(const Exhaustion& ex, const EmbeddabilityOptions& opts = {});

/// Maps a dart of level i to the corresponding dart of level i+1.
DartId map_dart(const Exhaustion& ex, int level, const std::vector<EdgeId>& edge_inc, DartId d);

}  // namespace lfe
