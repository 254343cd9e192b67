// One line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>

#include "lfe/decomposition.hpp"
#include "lfe/embeddability.hpp"
#include "lfe/generators.hpp"
#include "lfe/geometry.hpp"
#include "lfe/harness.hpp"
#include "lfe/one_acc.hpp"
#include "lfe/planarity.hpp"
#include "test_support.hpp"

using namespace lfe;

namespace {

constexpr double kPi = std::numbers::pi;
const std::vector<std::string> kEmbeddable = {"path_Z", "ladder", "tree_d", "halfplane_triangulation"};

int failures = 0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

void run(int id, const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > limit_seconds) {
    o.pass = false;
    o.detail += "; over the time limit";
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %-28s %s (%.1f s, limit %.0f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.c_str(), secs, limit_seconds);
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// ---- graphs on at most seven vertices, one per isomorphism class ----

using Adj = std::vector<unsigned>;  // bit rows

std::uint64_t code_under(const Adj& a, const std::vector<int>& p) {
  const int n = static_cast<int>(a.size());
  std::uint64_t c = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c = (c << 1) | ((a[p[i]] >> p[j]) & 1u);
  return c;
}

std::uint64_t canonical(const Adj& a) {
  std::vector<int> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t best = ~0ULL;
  do best = std::min(best, code_under(a, p));
  while (std::next_permutation(p.begin(), p.end()));
  return best;
}

std::vector<std::vector<Adj>> graphs_up_to(int max_n) {
  std::vector<std::vector<Adj>> by_n(max_n + 1);
  by_n[1] = {Adj{0}};
  for (int n = 2; n <= max_n; ++n) {
    std::unordered_set<std::uint64_t> seen;
    for (const Adj& a : by_n[n - 1])
      for (unsigned nb = 0; nb < (1u << (n - 1)); ++nb) {
        Adj b = a;
        b.push_back(nb);
        for (int i = 0; i < n - 1; ++i)
          if ((nb >> i) & 1u) b[i] |= 1u << (n - 1);
        if (seen.insert(canonical(b)).second) by_n[n].push_back(b);
      }
  }
  return by_n;
}

Graph to_graph(const Adj& a) {
  Graph g(static_cast<int>(a.size()));
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(a.size()); ++j)
      if ((a[i] >> j) & 1u) g.add_edge(i, j);
  return g;
}

// ---- shared helpers ----

/// Uniform planar rotation from the full list when it is small enough.
std::optional<std::vector<RotationSystem>> all_planar_rotations(const Graph& g) {
  if (!is_planar(g).planar) return std::nullopt;
  EmbeddingSearchOptions o;
  o.both_chiralities = true;
  o.max_results = 200'000;
  try {
    auto list = enumerate_planar_embeddings(g, o);
    if (list.size() >= o.max_results) return std::nullopt;
    return list;
  } catch (const SizeGuardError&) {
    return std::nullopt;
  }
}

bool one_face_proxy(const Triangulation& tri, int original_vertices, int samples, std::mt19937_64& rng,
                    int& sampled) {
  TruncatedGraph tt;
  tt.graph = tri.graph;
  tt.boundary = tri.collar;
  std::sort(tt.boundary.begin(), tt.boundary.end());
  const std::vector<bool> collar = tt.boundary_mask();
  for (int trial = 0; trial < 4 * samples && sampled < samples; ++trial) {
    std::vector<VertexId> f = {static_cast<VertexId>(rng() % original_vertices)};
    std::set<VertexId> in(f.begin(), f.end());
    const int want = 1 + static_cast<int>(rng() % 14);
    for (int k = 0; k < 300 && static_cast<int>(f.size()) < want; ++k) {
      const VertexId x = f[rng() % f.size()];
      const auto nb = tri.graph.neighbors(x);
      const VertexId y = nb[rng() % nb.size()];
      if (!collar[y] && !in.count(y)) {
        in.insert(y);
        f.push_back(y);
      }
    }
    const Exhaustion ex = refine(tt, {f});
    if (ex.levels.size() < 2) continue;
    ++sampled;
    if (acc(ex, tri.rot).per_level.front() > 1) return false;
  }
  return true;
}

double klein_area(Point a, Point b, Point c) {
  const Point k0 = poincare_to_klein(a), k1 = poincare_to_klein(b), k2 = poincare_to_klein(c);
  const Point e1 = k1 - k0, e2 = k2 - k1;
  const double jac = std::abs(e1.real() * e2.imag() - e1.imag() * e2.real());
  using Q = boost::math::quadrature::gauss<double, 40>;
  return Q::integrate(
      [&](double u) {
        return Q::integrate(
            [&](double v) {
              const Point p = k0 + u * e1 + u * v * e2;
              return jac * u / std::pow(1 - std::norm(p), 1.5);
            },
            0.0, 1.0);
      },
      0.0, 1.0);
}

BoundaryCondition boundary_for(Geometry geo) {
  BoundaryCondition bc;
  bc.value = geo == Geometry::Hyperbolic ? 0.8 : 1.0;
  return bc;
}

/// Triangulations of the embeddable generators, at every depth that stays
/// within the vertex cap.
std::vector<std::pair<std::string, Triangulation>> corpus_triangulations(int cap) {
  std::vector<std::pair<std::string, Triangulation>> out;
  for (const std::string& name : kEmbeddable)
    for (int depth = 1; depth <= 6; ++depth) {
      const Exhaustion ex = generate(name, depth);
      Triangulation tri = triangulate_one_ended(ex.deepest(), random_one_acc_embedding(ex, depth).rotation);
      if (tri.graph.num_vertices() > cap) break;
      out.emplace_back(name + "/" + std::to_string(depth), std::move(tri));
    }
  return out;
}

}  // namespace

int main() {
  std::printf("acceptance: tolerances and sizes as pre-registered; times are wall clock\n");

  run(1, "kuratowski-wagner", 600, [] {
    const auto by_n = graphs_up_to(7);
    const Graph k5 = complete_graph(5), k33 = complete_bipartite(3, 3);
    const std::vector<int> expected = {0, 1, 1, 2, 6, 21, 112, 853};  // connected graphs per order
    int checked = 0, disagree = 0, bad_cert = 0;
    std::ostringstream counts;
    for (int n = 1; n <= 7; ++n) {
      int connected = 0;
      for (const Adj& a : by_n[n]) {
        const Graph g = to_graph(a);
        if (!is_connected(g)) continue;
        ++connected;
        const PlanarityResult r = is_planar(g);
        const bool minor_free = !find_minor(g, k5) && !find_minor(g, k33);
        if (r.planar != minor_free) ++disagree;
        if (r.planar && (!r.embedding || euler_genus(g, *r.embedding) != 0)) ++bad_cert;
        if (!r.planar && (!r.witness || !verify_subdivision(g, *r.witness))) ++bad_cert;
      }
      if (connected != expected[n]) ++disagree;
      counts << (n > 1 ? "," : "") << connected;
      checked += connected;
    }
    return Outcome{disagree == 0 && bad_cert == 0,
                   std::to_string(checked) + " connected graphs (per order " + counts.str() + "), " +
                       std::to_string(disagree) + " disagreements, " + std::to_string(bad_cert) +
                       " bad certificates"};
  });

  run(2, "tutte-round-trip", 300, [] {
    std::mt19937_64 rng(2024);
    int bad_iso = 0, bad_canon = 0, done = 0;
    while (done < 500) {
      const Graph g = testing::random_two_connected(12, 3 + static_cast<int>(rng() % 9), rng, true);
      if (g.num_vertices() > 12 || !is_planar(g).planar) continue;
      const TutteTree t = tutte_decomposition(g);
      if (!isomorphic(amalgamate(t), g)) ++bad_iso;
      std::vector<VertexId> perm(g.num_vertices());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const Graph h = relabel(g, perm);
      if (tutte_signature(h, tutte_decomposition(h)) != tutte_signature(g, t)) ++bad_canon;
      ++done;
    }
    return Outcome{bad_iso == 0 && bad_canon == 0, std::to_string(done) + " graphs, " + std::to_string(bad_iso) +
                                                       " round-trip failures, " + std::to_string(bad_canon) +
                                                       " relabelling mismatches"};
  });

  run(3, "named-examples", 300, [] {
    std::vector<std::string> bad;
    {
      const Exhaustion z = generate("path_Z", 4);
      if (!locally_finite_embeddable(z).embeddable_so_far()) bad.push_back("Z obstructed");
      if (random_one_acc_embedding(z, 1).report.acc != 1) bad.push_back("Z acc");
    }
    if (!locally_finite_embeddable(generate("tree_d", 3)).embeddable_so_far()) bad.push_back("T3 obstructed");
    for (const auto& [name, pattern] : {std::pair{"K2xT3", std::optional<KuratowskiPattern>{}},
                                        std::pair{"K3xZ", std::optional{KuratowskiPattern::K5}}}) {
      const Exhaustion ex = generate(name, 2);
      const EmbeddabilityReport r = locally_finite_embeddable(ex);
      if (r.embeddable_so_far() || !r.witness) {
        bad.push_back(std::string(name) + " not obstructed");
        continue;
      }
      if (!verify_star_minor(ex.deepest(), *r.witness).empty()) bad.push_back(std::string(name) + " witness");
      if (pattern && r.witness->pattern != *pattern) bad.push_back(std::string(name) + " pattern");
    }
    int acc_one = 0, mirror_ok = 0;
    {
      const Exhaustion ex = generate("ladder", 3);
      if (!locally_finite_embeddable(ex).embeddable_so_far()) bad.push_back("ladder obstructed");
      const auto all = all_planar_rotations(ex.deepest().graph);
      std::vector<RotationSystem> ones;
      for (const auto& rot : *all)
        if (acc(ex, rot).acc == 1) ones.push_back(rot);
      acc_one = static_cast<int>(ones.size());
      if (acc_one == 2 && ones[0].reversed(ex.deepest().graph) == ones[1]) mirror_ok = 1;
      if (acc_one != 2 || !mirror_ok) bad.push_back("ladder acc-1 rotations");
    }
    std::string d = "Z, T3 embeddable; K2xT3, K3xZ witnesses verified; ladder acc-1 rotations " +
                    std::to_string(acc_one) + (mirror_ok ? " (one mirror pair)" : "");
    for (const auto& b : bad) d += "; " + b;
    return Outcome{bad.empty(), d};
  });

  run(4, "acc-monotonicity", 600, [] {
    std::mt19937_64 rng(404);
    int exhaustions = 0, rotations = 0, violations = 0, skipped = 0;
    for (const std::string& name : generator_names())
      for (int depth = 2; depth <= 3; ++depth) {
        const Exhaustion ex = generate(name, depth);
        const auto all = all_planar_rotations(ex.deepest().graph);
        const bool embeddable = std::find(kEmbeddable.begin(), kEmbeddable.end(), name) != kEmbeddable.end();
        if (!all && !embeddable) {
          ++skipped;  // deepest level not planar: no rotation to measure
          continue;
        }
        ++exhaustions;
        for (int k = 0; k < 50; ++k) {
          const RotationSystem rot =
              all ? (*all)[rng() % all->size()] : random_one_acc_embedding(ex, rng()).rotation;
          const AccReport r = acc(ex, rot);
          ++rotations;
          if (!std::is_sorted(r.per_level.begin(), r.per_level.end())) ++violations;
        }
      }
    return Outcome{violations == 0 && exhaustions > 0,
                   std::to_string(exhaustions) + " exhaustions x 50 rotations = " + std::to_string(rotations) +
                       ", " + std::to_string(violations) + " violations, " + std::to_string(skipped) +
                       " non-planar deepest levels skipped"};
  });

  run(5, "pipeline-soundness", 600, [] {
    int runs = 0, violations = 0;
    for (const std::string& name : kEmbeddable) {
      const Exhaustion ex = generate(name, 3);
      for (std::uint64_t s = 0; s < 100; ++s) {
        const OneAccEmbedding e = random_one_acc_embedding(ex, derive_seed(5, s));
        ++runs;
        if (e.report.acc != 1 || euler_genus(ex.deepest().graph, e.rotation) != 0) ++violations;
      }
    }
    return Outcome{violations == 0, std::to_string(runs) + " seeded embeddings at depth 3, " +
                                        std::to_string(violations) + " with acc != 1 or genus != 0"};
  });

  run(6, "triangulation", 600, [] {
    std::mt19937_64 rng(606);
    int outputs = 0, bad = 0, proxy_fail = 0, sampled_total = 0;
    for (const std::string& name : kEmbeddable)
      for (std::uint64_t s = 0; s < 5; ++s) {
        const Exhaustion ex = generate(name, 3);
        const Triangulation tri =
            triangulate_one_ended(ex.deepest(), random_one_acc_embedding(ex, derive_seed(6, s)).rotation);
        ++outputs;
        if (!check_triangulation(tri, ex.deepest().graph).empty()) ++bad;
        int sampled = 0;
        if (!one_face_proxy(tri, ex.deepest().graph.num_vertices(), 50, rng, sampled)) ++proxy_fail;
        if (sampled < 50) ++proxy_fail;
        sampled_total += sampled;
      }
    return Outcome{bad == 0 && proxy_fail == 0,
                   std::to_string(outputs) + " triangulations, " + std::to_string(bad) + " invalid, " +
                       std::to_string(sampled_total) + " sampled subgraphs, " + std::to_string(proxy_fail) +
                       " proxy failures"};
  });

  run(7, "circle-packing", 1200, [] {
    std::vector<std::string> bad;
    double wheel_err = 0;
    {
      Graph w = cycle_graph(6);
      const VertexId hub = w.add_vertex("hub");
      for (VertexId v = 0; v < 6; ++v) w.add_edge(hub, v);
      Triangulation tri;
      tri.graph = w;
      tri.rot = *is_planar(w).embedding;
      const auto fs = tri.faces();
      for (int f = 0; f < static_cast<int>(fs.size()); ++f)
        if (fs[f].length() == 6) tri.outer_face = f;
      tri.original_vertices = 7;
      tri.original_edges = w.num_edges();
      tri.role.assign(7, VertexRole::Original);
      const Packing p = circle_pack(tri, Geometry::Euclidean, {});
      wheel_err = std::abs(p.radii[hub] - 1.0);
      if (!(wheel_err < 1e-9)) bad.push_back("wheel");
    }
    double worst_angle = 0, worst_tangency = 0, worst_congruence = 0, worst_time = 0;
    int instances = 0;
    for (const auto& [name, tri] : corpus_triangulations(200))
      for (Geometry geo : {Geometry::Euclidean, Geometry::Hyperbolic}) {
        const auto start = std::chrono::steady_clock::now();
        const Packing p = circle_pack(tri, geo, boundary_for(geo));
        worst_time = std::max(worst_time,
                              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        ++instances;
        if (!p.converged || !p.layout_ok) bad.push_back(name + " " + to_string(geo) + " not converged");
        const std::vector<bool> bmask = tri.boundary_mask();
        for (VertexId v = 0; v < tri.graph.num_vertices(); ++v)
          if (!bmask[v])
            worst_angle = std::max(worst_angle, std::abs(angle_sum(tri, p.radii, geo, v) - 2 * kPi));
        worst_tangency = std::max(worst_tangency, tangency_residual(tri, p));
        const int faces = static_cast<int>(tri.faces().size());
        const int other = tri.outer_face == faces - 1 ? faces - 2 : faces - 1;
        const std::vector<Point> q = layout(tri, p.radii, geo, other);
        for (VertexId a = 0; a < tri.graph.num_vertices(); ++a)
          for (VertexId b = a + 1; b < tri.graph.num_vertices(); ++b)
            worst_congruence = std::max(worst_congruence, std::abs(distance(geo, p.centers[a], p.centers[b]) -
                                                                   distance(geo, q[a], q[b])));
      }
    if (!(worst_angle < 1e-8)) bad.push_back("angle sums");
    if (!(worst_tangency < 1e-6)) bad.push_back("tangency");
    if (!(worst_congruence < 1e-6)) bad.push_back("congruence");
    if (!(worst_time < 120)) bad.push_back("per-instance time");
    std::string d = "wheel |r-1| " + fmt(wheel_err) + "; " + std::to_string(instances) +
                    " packings (<=200 vertices): angle " + fmt(worst_angle) + ", tangency " + fmt(worst_tangency) +
                    ", congruence " + fmt(worst_congruence) + ", slowest " + fmt(worst_time) + " s";
    for (const auto& b : bad) d += "; " + b;
    return Outcome{bad.empty(), d};
  });

  run(8, "hyperbolic-area", 600, [] {
    std::mt19937_64 rng(808);
    double worst = 0;
    int triangles = 0, piece_bad = 0, roots = 0;
    for (const auto& [name, tri] : corpus_triangulations(120)) {
      const Packing p = circle_pack(tri, Geometry::Hyperbolic, boundary_for(Geometry::Hyperbolic));
      const auto tris = tri.triangles();
      for (int k = 0; k < 8 && triangles < 100; ++k, ++triangles) {
        const auto& t = tris[rng() % tris.size()];
        const double alpha = tangent_angle(Geometry::Hyperbolic, p.radii[t[0]], p.radii[t[1]], p.radii[t[2]]);
        const double beta = tangent_angle(Geometry::Hyperbolic, p.radii[t[1]], p.radii[t[2]], p.radii[t[0]]);
        const double gamma = tangent_angle(Geometry::Hyperbolic, p.radii[t[2]], p.radii[t[0]], p.radii[t[1]]);
        worst = std::max(worst, std::abs(hyperbolic_area(alpha, beta, gamma) -
                                         klein_area(p.centers[t[0]], p.centers[t[1]], p.centers[t[2]])));
      }
      const AllocationReport a = allocations(p, tri, 4);
      std::vector<int> incident(tri.graph.num_vertices(), 0);
      for (const auto& t : tris)
        for (VertexId v : t) ++incident[v];
      const VertexId root = 0;  // the generator root
      ++roots;
      if (a.barycentric_pieces[root] != 2 * incident[root]) ++piece_bad;
    }
    return Outcome{triangles == 100 && worst < 1e-6 && piece_bad == 0,
                   std::to_string(triangles) + " packed triangles, max |Gauss-Bonnet - quadrature| " + fmt(worst) +
                       "; root pieces = 2 deg in " + std::to_string(roots - piece_bad) + "/" +
                       std::to_string(roots)};
  });

  run(9, "allocation-conservation", 600, [] {
    constexpr int kGrid = 24;
    constexpr double kRelTol = 1e-9;  // pieces have exact geodesic areas; only the cell assignment is sampled
    double worst_bary = 0, worst_vor = 0;
    int instances = 0;
    for (const auto& [name, tri] : corpus_triangulations(120))
      for (Geometry geo : {Geometry::Euclidean, Geometry::Hyperbolic}) {
        const Packing p = circle_pack(tri, geo, boundary_for(geo));
        const AllocationReport a = allocations(p, tri, kGrid);
        worst_bary = std::max(worst_bary, std::abs(a.barycentric_total - a.total_area) / a.total_area);
        worst_vor = std::max(worst_vor, std::abs(a.voronoi_total - a.total_area) / a.total_area);
        ++instances;
      }
    return Outcome{worst_bary < 1e-9 && worst_vor < kRelTol,
                   std::to_string(instances) + " packings, grid " + std::to_string(kGrid) +
                       ": relative |barycentric - area| " + fmt(worst_bary) + ", |voronoi - area| " +
                       fmt(worst_vor) + " (tolerance " + fmt(kRelTol) + ")"};
  });

  run(10, "mtp-and-involution", 600, [] {
    int checks = 0, unequal = 0, nonlocal = 0;
    double worst = 0;
    std::vector<std::pair<std::string, Graph>> inv_graphs = {{"K1,3", complete_bipartite(1, 3)}};
    for (const std::string& name : generator_names()) {
      const Exhaustion ex = generate(name, 2);
      const Graph& g = ex.deepest().graph;
      Decoration deco;
      std::vector<bool> sub(g.num_vertices());
      for (VertexId v : ex.to_deepest(0)) sub[v] = true;
      deco.subset = sub;
      if (std::find(kEmbeddable.begin(), kEmbeddable.end(), name) != kEmbeddable.end())
        deco.rotation = random_one_acc_embedding(ex, 10).rotation;
      else if (const auto r = is_planar(g); r.planar)
        deco.rotation = *r.embedding;
      for (const auto& f : payment_corpus()) {
        if (f.needs_rotation && !deco.rotation) continue;
        const MtpResult m = mtp_check(g, f, deco);
        ++checks;
        worst = std::max(worst, std::abs(m.difference()));
        if (std::abs(m.difference()) > 1e-12) ++unequal;
        if (!locality_check(g, f, deco, 10).empty()) ++nonlocal;
      }
      inv_graphs.emplace_back(name, generate_truncation(name, 3).graph);
    }
    int inv_fail = 0;
    double min_p = 1;
    for (const auto& [name, g] : inv_graphs) {
      const InvolutionResult r = involution_check(g, 20000, 1010);
      min_p = std::min({min_p, r.p_value, r.dart_p_value});
      if (!(r.p_value > 0.01) || !(r.dart_p_value > 0.01)) ++inv_fail;
    }
    return Outcome{unequal == 0 && nonlocal == 0 && inv_fail == 0,
                   std::to_string(checks) + " (payment, graph) pairs, max |lhs - rhs| " + fmt(worst) + ", " +
                       std::to_string(nonlocal) + " locality failures; involution on " +
                       std::to_string(inv_graphs.size()) + " graphs, min p " + fmt(min_p) + ", " +
                       std::to_string(inv_fail) + " below 0.01"};
  });

  std::printf("acceptance: %d failed\n", failures);
  return failures == 0 ? 0 : 1;
}
