#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "lfe/graph.hpp"
#include "lfe/planarity.hpp"
#include "lfe/rotation.hpp"
#include "test_support.hpp"

using namespace lfe;

namespace {

// Face count from raw successor arrays, independent of trace_faces.
int count_orbits(const Graph& g, const std::vector<std::vector<DartId>>& orders) {
  std::vector<DartId> next_at(g.num_darts());
  for (const auto& o : orders)
    for (std::size_t i = 0; i < o.size(); ++i) next_at[o[i]] = o[(i + 1) % o.size()];
  std::vector<bool> seen(g.num_darts(), false);
  int faces = 0;
  for (DartId d = 0; d < g.num_darts(); ++d) {
    if (seen[d]) continue;
    ++faces;
    for (DartId x = d; !seen[x]; x = next_at[x ^ 1]) seen[x] = true;
  }
  return faces;
}

RotationSystem planar_rotation(const Graph& g) {
  auto r = is_planar(g);
  REQUIRE(r.planar);
  return *r.embedding;
}

std::multiset<int> face_lengths(const std::vector<FaceWalk>& faces) {
  std::multiset<int> out;
  for (const auto& f : faces) out.insert(f.length());
  return out;
}

}  // namespace

TEST_CASE("trace_faces on small planar graphs") {
  const Graph k3 = complete_graph(3);
  CHECK(face_lengths(trace_faces(k3, default_rotation(k3))) == std::multiset<int>{3, 3});

  const Graph p3 = path_graph(3);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 4; ++k)
    CHECK(face_lengths(trace_faces(p3, testing::random_rotation(p3, rng))) == std::multiset<int>{4});

  const Graph k4 = complete_graph(4);
  CHECK(face_lengths(trace_faces(k4, planar_rotation(k4))) == std::multiset<int>{3, 3, 3, 3});
}

TEST_CASE("trace_faces walks follow the successor rule and start at their least dart") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = testing::random_connected_graph(7, 6, rng, true);
    const RotationSystem rot = testing::random_rotation(g, rng);
    for (const auto& f : trace_faces(g, rot)) {
      CHECK(f.darts.front() == *std::min_element(f.darts.begin(), f.darts.end()));
      for (int i = 0; i < f.length(); ++i) {
        const DartId a = f.darts[i], b = f.darts[(i + 1) % f.length()];
        CHECK(g.target(a) == g.source(b));
        CHECK(b == rot.succ(reverse(a)));
      }
    }
  }
}

TEST_CASE("rotation validation rejects malformed orders") {
  const Graph k3 = complete_graph(3);
  CHECK_THROWS_AS(RotationSystem(k3, {{0, 2}, {1, 4}}), ValidationError);
  CHECK_THROWS_AS(RotationSystem(k3, {{0, 0}, {1, 4}, {3, 5}}), ValidationError);
  CHECK_THROWS_AS(RotationSystem(k3, {{0, 1}, {2, 4}, {3, 5}}), ValidationError);
  CHECK_NOTHROW(RotationSystem(k3, {{2, 0}, {1, 4}, {5, 3}}));
}

TEST_CASE("euler genus examples") {
  const Graph k4 = complete_graph(4);
  CHECK(euler_genus(k4, planar_rotation(k4)) == 0);
  const Graph k3 = complete_graph(3);
  CHECK(euler_genus(k3, default_rotation(k3)) == 0);

  // Minimum over every rotation system of K5, with faces counted by an
  // independent orbit count.
  const Graph k5 = complete_graph(5);
  std::vector<std::vector<std::vector<DartId>>> per_vertex(5);
  for (VertexId v = 0; v < 5; ++v) per_vertex[v] = cyclic_orders(k5.darts_at(v));
  int min_genus = 100, min_oracle = 100;
  std::vector<std::size_t> idx(5, 0);
  while (true) {
    std::vector<std::vector<DartId>> orders(5);
    for (int v = 0; v < 5; ++v) orders[v] = per_vertex[v][idx[v]];
    const int oracle = (2 - (5 - 10 + count_orbits(k5, orders))) / 2;
    min_oracle = std::min(min_oracle, oracle);
    min_genus = std::min(min_genus, euler_genus(k5, RotationSystem(k5, orders)));
    CHECK(euler_genus(k5, RotationSystem(k5, orders)) == oracle);
    int v = 0;
    while (v < 5 && ++idx[v] == per_vertex[v].size()) idx[v++] = 0;
    if (v == 5) break;
  }
  CHECK(min_oracle == 1);
  CHECK(min_genus == 1);
}

TEST_CASE("dart conservation, reversal duality and relabel invariance") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const Graph g = testing::random_connected_graph(n, static_cast<int>(rng() % 10), rng, trial % 2 == 0);
    const RotationSystem rot = testing::random_rotation(g, rng);
    const auto faces = trace_faces(g, rot);
    int total = 0;
    for (const auto& f : faces) total += f.length();
    CHECK(total == g.num_darts());

    // Reversed rotation: same faces with reversed darts in reverse order.
    std::multiset<std::multiset<DartId>> expected, got;
    for (const auto& f : faces) {
      std::multiset<DartId> s;
      for (DartId d : f.darts) s.insert(reverse(d));
      expected.insert(s);
    }
    for (const auto& f : trace_faces(g, rot.reversed(g)))
      got.insert(std::multiset<DartId>(f.darts.begin(), f.darts.end()));
    CHECK(expected == got);

    std::vector<VertexId> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const Graph h = relabel(g, perm);
    std::vector<std::vector<DartId>> orders(n);
    for (VertexId v = 0; v < n; ++v) orders[perm[v]] = rot.order(v);
    CHECK(euler_genus(h, RotationSystem(h, orders)) == euler_genus(g, rot));
  }
}

TEST_CASE("cycle_sides on K4") {
  const Graph k4 = complete_graph(4);
  const RotationSystem rot = planar_rotation(k4);
  const auto faces = trace_faces(k4, rot);
  for (const auto& f : faces) {
    const CycleSides s = cycle_sides(k4, rot, f.darts);
    CHECK(s.inside.empty());
    CHECK(s.outside.size() == 1);

    // Reversed orientation of the same triangle: the fourth vertex is inside.
    std::vector<DartId> rev;
    for (auto it = f.darts.rbegin(); it != f.darts.rend(); ++it) rev.push_back(reverse(*it));
    const CycleSides r = cycle_sides(k4, rot, rev);
    REQUIRE(r.inside.size() == 1);
    CHECK(r.outside.empty());

    // Oracle: the dart to the fourth vertex sits strictly between the
    // reversed incoming cycle dart and the outgoing cycle dart.
    const VertexId x = r.inside.front();
    for (std::size_t i = 0; i < rev.size(); ++i) {
      const VertexId v = k4.source(rev[i]);
      const auto& ord = rot.order(v);
      auto at = [&](DartId d) { return std::find(ord.begin(), ord.end(), d) - ord.begin(); };
      const auto from = at(reverse(rev[(i + rev.size() - 1) % rev.size()]));
      const auto to = at(rev[i]);
      DartId to_x = -1;
      for (DartId d : ord)
        if (k4.target(d) == x) to_x = d;
      const auto p = at(to_x);
      const auto n = static_cast<long>(ord.size());
      CHECK(((p - from + n) % n) < ((to - from + n) % n));
    }
  }
}

TEST_CASE("cycle_sides errors") {
  const Graph k4 = complete_graph(4);
  const RotationSystem rot = planar_rotation(k4);
  CHECK_THROWS_AS(cycle_sides(k4, rot, {0, 2}), ValidationError);
  const Graph k5 = complete_graph(5);
  const auto c = testing::simple_cycles(k5, 1).front();
  CHECK_THROWS_AS(cycle_sides(k5, default_rotation(k5), c), ValidationError);
}

TEST_CASE("cycle_sides partition and reversal swap on random planar graphs") {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 7);
    const Graph g = testing::random_planar_graph(n, 3 * n, rng);
    const RotationSystem rot = planar_rotation(g);
    std::set<std::set<DartId>> face_sets;
    for (const auto& f : trace_faces(g, rot)) face_sets.insert(std::set<DartId>(f.darts.begin(), f.darts.end()));
    for (const auto& c : testing::simple_cycles(g, 400)) {
      const CycleSides s = cycle_sides(g, rot, c);
      std::set<VertexId> on;
      for (DartId d : c) on.insert(g.source(d));
      std::set<VertexId> all(s.inside.begin(), s.inside.end());
      for (VertexId v : s.outside) CHECK(all.insert(v).second);
      CHECK(all.size() + on.size() == static_cast<std::size_t>(g.num_vertices()));
      for (VertexId v : all) CHECK(on.count(v) == 0);

      std::set<EdgeId> cyc_edges;
      for (DartId d : c) cyc_edges.insert(dart_edge(d));
      std::size_t off_cycle = 0;
      for (VertexId v : on)
        for (DartId d : g.darts_at(v)) off_cycle += cyc_edges.count(dart_edge(d)) ? 0 : 1;
      CHECK(s.inside_darts.size() + s.outside_darts.size() == off_cycle);

      std::vector<DartId> rev;
      for (auto it = c.rbegin(); it != c.rend(); ++it) rev.push_back(reverse(*it));
      const CycleSides r = cycle_sides(g, rot, rev);
      auto sorted = [](std::vector<VertexId> v) {
        std::sort(v.begin(), v.end());
        return v;
      };
      CHECK(sorted(r.inside) == sorted(s.outside));
      CHECK(sorted(r.outside) == sorted(s.inside));
      if (face_sets.count(std::set<DartId>(c.begin(), c.end()))) {
        CHECK(s.inside.empty());
        CHECK(s.inside_darts.empty());
      }
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("restriction and corner faces") {
  const Graph k4 = complete_graph(4);
  const RotationSystem rot = planar_rotation(k4);
  const SubEmbedding tri = restrict_to_vertices(k4, rot, {0, 1, 2});
  CHECK(tri.graph.num_edges() == 3);
  const auto faces = trace_faces(tri.graph, tri.rot);
  CHECK(faces.size() == 2);
  const auto face_of = face_index_of_darts(faces, tri.graph.num_darts());
  // All three darts towards vertex 3 lie in one face of the triangle.
  std::set<int> seen;
  for (DartId d = 0; d < k4.num_darts(); ++d)
    if (k4.target(d) == 3) seen.insert(corner_face(tri, face_of, rot, d));
  CHECK(seen.size() == 1);
}

TEST_CASE("isomorphism and relabel") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = testing::random_connected_graph(7, 6, rng, true);
    std::vector<VertexId> perm(7);
    for (int i = 0; i < 7; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(isomorphic(g, relabel(g, perm)));
  }
  CHECK_FALSE(isomorphic(cycle_graph(6), complete_bipartite(3, 3)));
  CHECK_FALSE(isomorphic(path_graph(4), complete_bipartite(1, 3)));
}
