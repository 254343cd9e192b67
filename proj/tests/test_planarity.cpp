#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "lfe/graph.hpp"
#include "lfe/planarity.hpp"
#include "lfe/rotation.hpp"
#include "test_support.hpp"

using namespace lfe;

namespace {

Graph prism_with_apex() {
  // Triangles a0a1a2 and b0b1b2, rungs ai-bi, apex 6 adjacent to all.
  Graph g(7);
  for (int i = 0; i < 3; ++i) {
    g.add_edge(i, (i + 1) % 3);
    g.add_edge(3 + i, 3 + (i + 1) % 3);
    g.add_edge(i, 3 + i);
    g.add_edge(6, i);
    g.add_edge(6, 3 + i);
  }
  return g;
}

Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, 5 + i);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

}  // namespace

TEST_CASE("is_planar certificates on named graphs") {
  const Graph k4 = complete_graph(4);
  auto r4 = is_planar(k4);
  REQUIRE(r4.planar);
  CHECK(euler_genus(k4, *r4.embedding) == 0);
  for (const auto& f : trace_faces(k4, *r4.embedding)) CHECK(f.length() == 3);

  auto r5 = is_planar(complete_graph(5));
  CHECK_FALSE(r5.planar);
  REQUIRE(r5.witness);
  CHECK(r5.witness->pattern == KuratowskiPattern::K5);
  CHECK(verify_subdivision(complete_graph(5), *r5.witness));
  for (const auto& p : r5.witness->paths) CHECK(p.size() == 1);

  auto r33 = is_planar(complete_bipartite(3, 3));
  CHECK_FALSE(r33.planar);
  REQUIRE(r33.witness);
  CHECK(r33.witness->pattern == KuratowskiPattern::K33);
  CHECK(verify_subdivision(complete_bipartite(3, 3), *r33.witness));

  const Graph p = petersen();
  auto rp = is_planar(p);
  CHECK_FALSE(rp.planar);
  REQUIRE(rp.witness);
  CHECK(verify_subdivision(p, *rp.witness));
  const MinorModel m = to_minor_model(p, *rp.witness);
  CHECK(verify_minor_model(p, pattern_graph(rp.witness->pattern), m));
}

TEST_CASE("is_planar handles loops and parallel edges") {
  Graph g = complete_graph(4);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  g.add_edge(2, 2);
  g.add_edge(2, 2);
  auto r = is_planar(g);
  REQUIRE(r.planar);
  CHECK(euler_genus(g, *r.embedding) == 0);

  Graph h = complete_graph(5);
  h.add_edge(0, 1);
  h.add_edge(3, 3);
  auto rh = is_planar(h);
  REQUIRE_FALSE(rh.planar);
  CHECK(verify_subdivision(h, *rh.witness));
}

TEST_CASE("is_planar agrees with Euler bound and subdivision checks on random graphs") {
  std::mt19937_64 rng(321);
  int planar = 0, nonplanar = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 6);
    const Graph g = testing::random_connected_graph(n, 6 + static_cast<int>(rng() % 14), rng, trial % 3 == 0);
    auto r = is_planar(g);
    if (r.planar) {
      ++planar;
      CHECK(euler_genus(g, *r.embedding) == 0);
    } else {
      ++nonplanar;
      REQUIRE(r.witness);
      CHECK(verify_subdivision(g, *r.witness));
      CHECK(verify_minor_model(g, pattern_graph(r.witness->pattern), to_minor_model(g, *r.witness)));
    }
  }
  CHECK(planar > 20);
  CHECK(nonplanar > 20);
}

TEST_CASE("find_minor examples") {
  const Graph k5 = complete_graph(5);
  auto id = find_minor(k5, k5);
  REQUIRE(id);
  CHECK(verify_minor_model(k5, k5, *id));
  for (const auto& s : id->branch_sets) CHECK(s.size() == 1);

  const Graph g = prism_with_apex();
  auto m = find_minor(g, k5);
  REQUIRE(m);
  CHECK(verify_minor_model(g, k5, *m));
  // The hand model contracting the b-triangle into one branch set.
  MinorModel hand;
  hand.branch_sets = {{0}, {1}, {2}, {3, 4, 5}, {6}};
  std::vector<int> owner = {0, 1, 2, 3, 3, 3, 4};
  for (const Edge& he : k5.edges()) {
    EdgeId found = -1;
    for (EdgeId e = 0; e < g.num_edges() && found < 0; ++e)
      if (std::minmax(owner[g.edge(e).u], owner[g.edge(e).v]) == std::minmax(he.u, he.v)) found = e;
    REQUIRE(found >= 0);
    hand.edge_realizers.push_back(found);
  }
  CHECK(verify_minor_model(g, k5, hand));

  CHECK_FALSE(find_minor(path_graph(6), complete_graph(3)));
  CHECK_FALSE(find_minor(complete_graph(4), k5));
  CHECK_THROWS_AS(find_minor(k5, complete_graph(9)), SizeGuardError);
}

TEST_CASE("find_minor agrees with planarity on small graphs") {
  std::mt19937_64 rng(77);
  const Graph k5 = complete_graph(5), k33 = complete_bipartite(3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 3);
    const Graph g = testing::random_connected_graph(n, 4 + static_cast<int>(rng() % 10), rng);
    const bool planar = is_planar(g).planar;
    auto a = find_minor(g, k5);
    auto b = find_minor(g, k33);
    if (a) CHECK(verify_minor_model(g, k5, *a));
    if (b) CHECK(verify_minor_model(g, k33, *b));
    CHECK(planar == (!a && !b));
  }
}

TEST_CASE("enumerate_planar_embeddings counts") {
  // Three-connected planar graphs have exactly one embedding up to mirror.
  CHECK(enumerate_planar_embeddings(complete_graph(4)).size() == 1);
  CHECK(enumerate_planar_embeddings(complete_graph(4), {.both_chiralities = true}).size() == 2);
  CHECK(enumerate_planar_embeddings(complete_graph(5)).empty());
  CHECK(enumerate_planar_embeddings(complete_bipartite(3, 3)).empty());
  // Cycles and paths: the rotation is forced.
  CHECK(enumerate_planar_embeddings(cycle_graph(5)).size() == 1);
  CHECK(enumerate_planar_embeddings(path_graph(2)).size() == 1);
  CHECK(enumerate_planar_embeddings(path_graph(3)).size() == 1);
  // K_{1,4}: every rotation is planar, 3! of them, paired by reflection.
  const Graph star = complete_bipartite(1, 4);
  CHECK(enumerate_planar_embeddings(star, {.both_chiralities = true}).size() == 6);
  CHECK(enumerate_planar_embeddings(star).size() == 3);
}

TEST_CASE("enumerate_planar_embeddings matches exhaustive genus filter") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    const Graph g = testing::random_connected_graph(6, 4, rng, trial % 4 == 0);
    std::vector<std::vector<std::vector<DartId>>> per_vertex(g.num_vertices());
    std::size_t total = 1;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      per_vertex[v] = cyclic_orders(g.darts_at(v));
      total *= per_vertex[v].size();
    }
    if (total > 50000) continue;
    std::set<RotationSystem> oracle;
    std::vector<std::size_t> idx(g.num_vertices(), 0);
    while (true) {
      std::vector<std::vector<DartId>> orders(g.num_vertices());
      for (VertexId v = 0; v < g.num_vertices(); ++v) orders[v] = per_vertex[v][idx[v]];
      RotationSystem r(g, orders);
      if (euler_genus(g, r) == 0) oracle.insert(r);
      VertexId v = 0;
      while (v < g.num_vertices() && ++idx[v] == per_vertex[v].size()) idx[v++] = 0;
      if (v == g.num_vertices()) break;
    }
    const auto all = enumerate_planar_embeddings(g, {.both_chiralities = true});
    CHECK(std::set<RotationSystem>(all.begin(), all.end()) == oracle);
    const auto halves = enumerate_planar_embeddings(g);
    std::set<RotationSystem> closure;
    for (const auto& r : halves) {
      closure.insert(r);
      closure.insert(r.reversed(g));
    }
    CHECK(closure == oracle);
  }
}

TEST_CASE("enumerate_planar_embeddings size guard") {
  CHECK_THROWS_AS(enumerate_planar_embeddings(complete_bipartite(1, 12), {.node_budget = 1000}), SizeGuardError);
}
