#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lfe/graph.hpp"
#include "lfe/rotation.hpp"

namespace lfe {

enum class KuratowskiPattern { K5, K33 };

/// Subdivision of K5 or K3,3 inside a graph. For K3,3 the first three
/// branch vertices form one side. paths[k] joins pattern_edges[k].
struct KuratowskiWitness {
  KuratowskiPattern pattern = KuratowskiPattern::K5;
  std::vector<VertexId> branch;
  std::vector<std::pair<int, int>> pattern_edges;
  std::vector<std::vector<DartId>> paths;
};

struct PlanarityResult {
  bool planar = false;
  std::optional<RotationSystem> embedding;
  std::optional<KuratowskiWitness> witness;
};

/// Model of a pattern H as a minor: one connected branch set per pattern
/// vertex, and an edge of g realising each pattern edge (in h's edge order).
struct MinorModel {
  std::vector<std::vector<VertexId>> branch_sets;
  std::vector<EdgeId> edge_realizers;
};

Graph pattern_graph(KuratowskiPattern p);

/// Planarity with certificates: a genus-0 rotation when planar, otherwise a
/// Kuratowski subdivision. Multigraphs are reduced to their simple core for
/// the test and parallel edges/loops are re-inserted into the embedding.
PlanarityResult is_planar(const Graph& g);

/// Checks that the witness is a subdivision of its pattern inside g:
/// branch vertices distinct, paths internally disjoint and avoiding them.
bool verify_subdivision(const Graph& g, const KuratowskiWitness& w);

/// Converts a subdivision into a minor model; interior path vertices are
/// absorbed into the branch set of the path's first endpoint.
MinorModel to_minor_model(const Graph& g, const KuratowskiWitness& w);

bool verify_minor_model(const Graph& g, const Graph& h, const MinorModel& m);

struct MinorSearchOptions {
  int max_pattern_vertices = 8;
  std::int64_t node_budget = 200'000'000;
};

/// Exact minor containment by exhaustive branch-set assignment with twin
/// symmetry breaking. Throws SizeGuardError for |V(h)| above the guard or
/// when the search budget runs out.
std::optional<MinorModel> find_minor(const Graph& g, const Graph& h, const MinorSearchOptions& opts = {});

/// All cyclic orders of `darts` (the first dart fixed in front).
std::vector<std::vector<DartId>> cyclic_orders(const std::vector<DartId>& darts);

struct EmbeddingSearchOptions {
  /// Report both mirror images instead of one per reflection class.
  bool both_chiralities = false;
  std::int64_t node_budget = 50'000'000;
  std::size_t max_results = 1'000'000;
};

/// Allowed cyclic orders per vertex; nullopt leaves the vertex unrestricted.
using OrderChoices = std::vector<std::optional<std::vector<std::vector<DartId>>>>;

/// Depth-first search over rotation systems of a connected graph. Orders are
/// built one successor at a time and a branch is cut as soon as the faces
/// already closed plus the most that the open darts can still form fall
/// short of Euler's count. `visit` receives every genus-0 rotation and
/// returns false to stop. Throws SizeGuardError when the budget runs out.
void search_planar_rotations(const Graph& g, const OrderChoices& choices,
                             const std::function<bool(const RotationSystem&)>& visit, std::int64_t node_budget);

/// Every planar rotation system of g, sorted; one per reflection pair
/// unless both_chiralities is set.
std::vector<RotationSystem> enumerate_planar_embeddings(const Graph& g, const EmbeddingSearchOptions& opts = {});

}  // namespace lfe
