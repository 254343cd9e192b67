#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lfe/ends.hpp"
#include "lfe/geometry.hpp"
#include "lfe/rotation.hpp"

namespace lfe {

/// Optional marks carried along with a rooted graph.
struct Decoration {
  std::optional<RotationSystem> rotation;
  std::optional<std::vector<bool>> subset;
};

struct RootedSample {
  Graph graph;
  VertexId root = kNoVertex;
  Decoration decoration;
};

/// Ball of radius r around a set of centres with the decoration restricted
/// to it. `vertex_map[i]` is the ambient id of local vertex i.
struct DecoratedBall {
  Graph graph;
  Decoration decoration;
  std::vector<VertexId> vertex_map;
  std::vector<VertexId> local;  // ambient -> local, kNoVertex outside
};
DecoratedBall decorated_ball(const Graph& g, const Decoration& d, const std::vector<VertexId>& centres, int radius);

/// Nonnegative payment f(g, o, u). `radius` < 0 means the rule may look at
/// the whole graph (it must still ignore vertex names).
struct PaymentFunction {
  std::string name;
  int radius = 1;
  bool needs_rotation = false;
  bool needs_subset = false;
  std::function<double(const Graph&, const Decoration&, VertexId, VertexId)> rule;
};

/// The shipped battery: adjacency multiplicity, block minimum, share of
/// degree, distance weight, corner triangles, subset boundary.
const std::vector<PaymentFunction>& payment_corpus();
const PaymentFunction& payment(const std::string& name);

struct MtpResult {
  double lhs = 0;  // (1/|V|) sum_o sum_u f(o, u)
  double rhs = 0;  // (1/|V|) sum_o sum_u f(u, o)
  double difference() const { return lhs - rhs; }
};

/// Both double sums for the uniform root on a finite connected graph.
/// Throws ValidationError when a decoration the rule needs is missing.
MtpResult mtp_check(const Graph& g, const PaymentFunction& f, const Decoration& d = {});

/// Evaluates f on a random relabelling (vertex and edge order shuffled) and,
/// for bounded radius, on the decorated ball around the pair. Returns the
/// first disagreement, or an empty string.
std::string locality_check(const Graph& g, const PaymentFunction& f, const Decoration& d, std::uint64_t seed,
                           int pairs = 200);

/// Mean of both sides over decorations drawn by random_one_acc_embedding
/// on the deepest level, with the standard error of the per-seed difference.
struct SeededMtp {
  double lhs_mean = 0;
  double rhs_mean = 0;
  double diff_stderr = 0;
  double max_abs_diff = 0;
  int seeds = 0;
};
SeededMtp mtp_over_embeddings(const Exhaustion& ex, const PaymentFunction& f, int seeds, std::uint64_t master_seed);

/// Isomorphism-invariant hash of the ball of radius r around o with u
/// marked, by colour refinement started from (distance to o, distance to
/// u, degree). The rotation, when given, enters through face lengths.
std::uint64_t pair_type(const Graph& g, VertexId o, VertexId u, int radius, const RotationSystem* rot = nullptr);

struct InvolutionResult {
  int samples = 0;
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> pair_counts;  // (type(o,u), type(u,o))
  std::vector<int> dart_counts;
  double chi2 = 0;  // swap symmetry of the ordered-type histogram
  int dof = 0;
  double p_value = 1;
  double dart_chi2 = 0;  // uniformity of darts
  double dart_p_value = 1;
};

/// Degree-biased root, then a uniform neighbour: a uniform dart. The
/// ordered-type histogram is compared with its swap by a McNemar-Bowker
/// statistic over the asymmetric type pairs.
InvolutionResult involution_check(const Graph& g, int samples, std::uint64_t seed, int radius = 2);

/// Exact law of (type(o,u), type(u,o)) under a uniform dart.
std::map<std::pair<std::uint64_t, std::uint64_t>, double> exact_pair_law(const Graph& g, int radius = 2);

/// Upper tail of the chi-square distribution.
double chi_square_p_value(double statistic, int dof);

/// Per-stream seed from a master seed (splitmix64 of master + stream).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// embed, triangulate, pack, with every downstream invariant measured.
struct EndToEndReport {
  int acc = -1;
  std::string triangulation_error;
  int vertices = 0;
  bool converged = false;
  double angle_residual = 0;
  double tangency_residual = 0;
  bool layout_ok = false;
  bool ok(double angle_tol = 1e-8, double tangency_tol = 1e-6) const;
};
EndToEndReport end_to_end(const Exhaustion& ex, std::uint64_t seed, Geometry geo, double tol = 1e-10);

}  // namespace lfe
