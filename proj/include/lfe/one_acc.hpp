#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lfe/decomposition.hpp"
#include "lfe/ends.hpp"
#include "lfe/rotation.hpp"

namespace lfe {

/// Face counts per level of an exhaustion. A level H is measured inside the
/// deepest truncation D: every component of D - H that reaches the boundary
/// of D or holds a special vertex forces the face of H around it, and the
/// special (and, on D itself, boundary) vertices of H need the fewest extra
/// faces that cover them.
struct AccReport {
  std::vector<int> per_level;
  int acc = 0;
};

/// Rotation of the deepest level; levels inherit it by restriction. Throws
/// ValidationError when the rotation is not planar on a connected D.
AccReport acc(const Exhaustion& ex, const RotationSystem& rot, const std::vector<VertexId>& special = {});
AccReport acc(const TruncatedGraph& t, const RotationSystem& rot, const std::vector<VertexId>& special = {});

/// Fewest faces of (g, rot) covering every demand vertex, with the faces in
/// `preset` already paid for. Exact branching; SizeGuardError past the budget.
int face_cover_count(const Graph& g, const RotationSystem& rot, const std::vector<VertexId>& demands,
                     const std::vector<int>& preset = {}, std::int64_t node_budget = 10'000'000);

/// Faces of (g, rot) that cover all demand vertices at once.
std::vector<int> covering_faces(const Graph& g, const RotationSystem& rot, const std::vector<VertexId>& demands);

/// The pair (reverse of an arriving dart, its successor) at a vertex along
/// the infinite face, with the traced walk that certifies it.
struct InfiniteRegion {
  VertexId vertex = kNoVertex;
  DartId in_dart = -1;   // leaves x; reverse of the walk dart arriving at x
  DartId out_dart = -1;  // succ(in_dart)
  FaceWalk walk;
  std::vector<VertexId> escapes;  // boundary and special vertices on the walk
  int occurrences = 1;            // visits of the walk to x
};

struct InfiniteFace {
  int face = -1;                // index into trace_faces
  std::vector<int> candidates;  // every covering face; more than one is ambiguous
  std::vector<InfiniteRegion> regions;  // sorted by vertex
};

/// The face carrying every boundary and special vertex, defined when the
/// cover count is exactly one. Among several candidates the first is used.
InfiniteFace infinite_face(const TruncatedGraph& t, const RotationSystem& rot,
                           const std::vector<VertexId>& special = {});
std::vector<InfiniteRegion> infinite_face_vertices(const TruncatedGraph& t, const RotationSystem& rot,
                                                   const std::vector<VertexId>& special = {});

/// Rotation of one Tutte node read off a rotation of the decomposed graph:
/// darts owned by other nodes collapse onto the virtual edge leading to
/// them. Throws ValidationError when the groups are not contiguous.
RotationSystem node_restriction(const Graph& g, const TutteTree& tt, int node, const RotationSystem& rot);

enum class BlockKind { Finite, Infinite };

struct BlockChoice {
  int block = -1;
  BlockKind kind = BlockKind::Finite;
  std::vector<VertexId> cut_infinity;   // deepest-level ids
  std::vector<VertexId> demands;        // vertices required on the distinguished face
  RotationSystem rotation;              // on block_subgraph(D, bct, block)
  int distinguished_face = -1;          // trace_faces index on the block, -1 when none
  int wired_embeddings = 0;             // finite blocks: size of the sampled pool
  int wired_choice = -1;
  int core_sign = 0;                    // +1 or -1, 0 without a Tutte core
  std::vector<int> core_nodes;
  std::vector<int> node_choice;         // index into component_embeddings per node
  int core_survivors = 0;               // acc-1 compositions seen by the filter
  bool core_enumerated = false;         // false when derived from a wired embedding
};

struct CutVertexChoice {
  VertexId vertex = kNoVertex;
  std::vector<int> block_order;   // cyclic order of the blocks at the vertex
  std::vector<DartId> gap_after;  // per block in block_order, a block dart (deepest ids)
  std::vector<DartId> order;      // the glued rotation at the vertex
};

struct BlockEmbeddingPlan {
  std::uint64_t seed = 0;
  std::vector<BlockChoice> blocks;
  std::vector<CutVertexChoice> cuts;
};

struct OneAccOptions {
  std::optional<int> core_sign;  // force +1 or -1 instead of a coin flip
  std::size_t max_core_combinations = 4096;
  std::int64_t node_budget = 50'000'000;
  std::size_t max_wired_embeddings = 200'000;
};

struct OneAccEmbedding {
  RotationSystem rotation;  // on the deepest level
  BlockEmbeddingPlan plan;
  AccReport report;
};

/// Random rotation of the deepest level with a single accumulation point:
/// finite blocks from a uniform wired embedding, infinite blocks from the
/// acc-1 core pair and free choices elsewhere, glued at cut vertices inside
/// the distinguished faces. Draws: blocks in order, then cut vertices in
/// increasing order, all from one mt19937_64 seeded with `seed`.
OneAccEmbedding random_one_acc_embedding(const Exhaustion& ex, std::uint64_t seed, const OneAccOptions& opts = {});

}  // namespace lfe
