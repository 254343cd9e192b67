#pragma once

#include <string>

#include "json.hpp"
#include "lfe/decomposition.hpp"
#include "lfe/embeddability.hpp"
#include "lfe/ends.hpp"
#include "lfe/geometry.hpp"
#include "lfe/one_acc.hpp"
#include "lfe/planarity.hpp"
#include "lfe/rotation.hpp"

namespace lfe {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// {"format_version", "vertices": [labels], "edges": [[u, v], ...]}. Edge
/// endpoints are positions in "vertices"; on input they may also be labels.
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

/// Graph JSON plus "boundary" and, for exhaustions, "levels": vertex lists of
/// every level below the deepest one, in deepest ids.
Json truncation_to_json(const TruncatedGraph& t);
Json exhaustion_to_json(const Exhaustion& ex);
/// Accepts a plain graph (empty boundary), a truncation, or an exhaustion.
Exhaustion exhaustion_from_json(const Json& j);

/// graph6 for simple graphs; labels become "0".."n-1" on input.
std::string to_graph6(const Graph& g);
Graph from_graph6(const std::string& s);

/// "darts": per-vertex dart ids, "neighbors": the matching targets.
Json rotation_to_json(const Graph& g, const RotationSystem& rot);
RotationSystem rotation_from_json(const Graph& g, const Json& j);

Json planarity_to_json(const Graph& g, const PlanarityResult& r);
Json block_cut_tree_to_json(const BlockCutTree& bct);
Json tutte_tree_to_json(const TutteTree& tt);
Json witness_to_json(const Graph& deepest, const StarMinorWitness& w);
Json embeddability_to_json(const Exhaustion& ex, const EmbeddabilityReport& r);
Json acc_to_json(const AccReport& r);
Json plan_to_json(const BlockEmbeddingPlan& plan);
Json triangulation_to_json(const Triangulation& tri);
Json coords_to_json(const Triangulation& tri, const Packing& p);
Json allocations_to_json(const AllocationReport& r);

/// Reads JSON or graph6 (by content) from a file.
Exhaustion read_input(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace lfe
