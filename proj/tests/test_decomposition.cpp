#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "lfe/decomposition.hpp"
#include "lfe/graph.hpp"
#include "lfe/planarity.hpp"
#include "test_support.hpp"

using namespace lfe;

namespace {

Graph k4_minus_edge() {
  // u=0, v=1, x=2, y=3; the missing edge is xy.
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  g.add_edge(0, 3);
  g.add_edge(1, 3);
  return g;
}

int count_tag(const TutteTree& t, TutteTag tag) {
  return static_cast<int>(std::count_if(t.nodes.begin(), t.nodes.end(), [&](const TutteNode& n) { return n.tag == tag; }));
}

void check_tree_structure(const Graph& g, const TutteTree& t) {
  REQUIRE(t.edges.size() + 1 == t.nodes.size());
  std::vector<int> virt_count(t.nodes.size(), 0);
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const TutteNode& n = t.nodes[i];
    for (EdgeId e = 0; e < n.graph.num_edges(); ++e) virt_count[i] += n.is_virtual(e) ? 1 : 0;
    CHECK(virt_count[i] == static_cast<int>(t.neighbours(static_cast<int>(i)).size()));
    switch (n.tag) {
      case TutteTag::ThreeConnected:
        CHECK(n.graph.num_vertices() >= 4);
        CHECK(n.graph.is_simple());
        CHECK_FALSE(testing::has_separation_pair(n.graph));
        break;
      case TutteTag::Cycle:
        for (VertexId v = 0; v < n.graph.num_vertices(); ++v) CHECK(n.graph.degree(v) == 2);
        CHECK(is_connected(n.graph));
        break;
      case TutteTag::ThreeLink:
        CHECK(n.graph.num_vertices() == 2);
        CHECK(n.graph.num_edges() == 3);
        break;
      case TutteTag::Bond:
        CHECK(n.graph.num_vertices() == 2);
        CHECK(n.graph.num_edges() >= 4);
        break;
    }
  }
  for (const auto& te : t.edges) {
    const bool bond_a = t.nodes[te.a].graph.num_vertices() == 2, bond_b = t.nodes[te.b].graph.num_vertices() == 2;
    CHECK_FALSE((bond_a && bond_b));
    CHECK_FALSE((t.nodes[te.a].tag == TutteTag::Cycle && t.nodes[te.b].tag == TutteTag::Cycle));
    for (const auto& [x, y] : te.endpoints) CHECK(t.nodes[te.a].vertex_origin[x] == t.nodes[te.b].vertex_origin[y]);
  }
  // Every real edge appears in exactly one node.
  std::vector<int> seen(g.num_edges(), 0);
  for (const auto& n : t.nodes)
    for (EdgeId o : n.edge_origin)
      if (o >= 0) ++seen[o];
  for (int s : seen) CHECK(s == 1);
}

}  // namespace

TEST_CASE("block_cut_tree examples") {
  Graph bowtie(5);
  bowtie.add_edge(0, 1);
  bowtie.add_edge(1, 2);
  bowtie.add_edge(2, 0);
  bowtie.add_edge(2, 3);
  bowtie.add_edge(3, 4);
  bowtie.add_edge(4, 2);
  auto t = block_cut_tree(bowtie);
  CHECK(t.num_blocks() == 2);
  CHECK(t.cut_vertices == std::vector<VertexId>{2});

  auto p = block_cut_tree(path_graph(4));
  CHECK(p.num_blocks() == 3);
  CHECK(p.cut_vertices == std::vector<VertexId>{1, 2});

  auto k = block_cut_tree(complete_graph(4));
  CHECK(k.num_blocks() == 1);
  CHECK(k.cut_vertices.empty());
}

TEST_CASE("block_cut_tree matches brute-force cut vertices and tree shape") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    const Graph g = testing::random_connected_graph(3 + static_cast<int>(rng() % 9), static_cast<int>(rng() % 6), rng,
                                                    trial % 5 == 0);
    const auto t = block_cut_tree(g);
    auto brute = testing::brute_cut_vertices(g);
    // A vertex carrying a loop and other edges is a cut vertex of the block tree
    // without disconnecting the graph.
    std::set<VertexId> expected(brute.begin(), brute.end());
    for (const Edge& e : g.edges())
      if (e.u == e.v && g.degree(e.u) > 2) expected.insert(e.u);
    CHECK(std::set<VertexId>(t.cut_vertices.begin(), t.cut_vertices.end()) == expected);
    CHECK(static_cast<int>(t.tree_edges.size()) == t.num_blocks() + static_cast<int>(t.cut_vertices.size()) - 1);
    std::size_t covered = 0;
    for (const auto& b : t.block_edges) covered += b.size();
    CHECK(covered == static_cast<std::size_t>(g.num_edges()));
    for (int a = 0; a < t.num_blocks(); ++a)
      for (int b = a + 1; b < t.num_blocks(); ++b) {
        std::vector<VertexId> shared;
        std::set_intersection(t.block_vertices[a].begin(), t.block_vertices[a].end(), t.block_vertices[b].begin(),
                              t.block_vertices[b].end(), std::back_inserter(shared));
        CHECK(shared.size() <= 1);
        for (VertexId v : shared) CHECK(t.is_cut(v));
      }
  }
}

TEST_CASE("tutte_decomposition examples") {
  const Graph g = k4_minus_edge();
  const TutteTree t = tutte_decomposition(g);
  CHECK(t.nodes.size() == 3);
  CHECK(count_tag(t, TutteTag::ThreeLink) == 1);
  CHECK(count_tag(t, TutteTag::Cycle) == 2);
  for (const auto& n : t.nodes)
    if (n.tag == TutteTag::ThreeLink) {
      CHECK(std::set<VertexId>(n.vertex_origin.begin(), n.vertex_origin.end()) == std::set<VertexId>{0, 1});
      CHECK(std::count(n.edge_origin.begin(), n.edge_origin.end(), 0) == 1);
      CHECK(t.neighbours(&n - t.nodes.data()).size() == 2);
    }
  CHECK(isomorphic(amalgamate(t), g));
  check_tree_structure(g, t);

  const TutteTree k4 = tutte_decomposition(complete_graph(4));
  REQUIRE(k4.nodes.size() == 1);
  CHECK(k4.nodes[0].tag == TutteTag::ThreeConnected);

  const TutteTree c6 = tutte_decomposition(cycle_graph(6));
  REQUIRE(c6.nodes.size() == 1);
  CHECK(c6.nodes[0].tag == TutteTag::Cycle);
}

TEST_CASE("tutte_decomposition degenerate and invalid inputs") {
  Graph digon(2);
  digon.add_edge(0, 1);
  digon.add_edge(0, 1);
  const TutteTree d = tutte_decomposition(digon);
  CHECK(d.degenerate_digon);
  REQUIRE(d.nodes.size() == 1);
  CHECK(d.nodes[0].tag == TutteTag::Bond);

  Graph bond4(2);
  for (int i = 0; i < 4; ++i) bond4.add_edge(0, 1);
  const TutteTree b = tutte_decomposition(bond4);
  REQUIRE(b.nodes.size() == 1);
  CHECK(b.nodes[0].tag == TutteTag::Bond);
  CHECK(component_embeddings(b.nodes[0]).size() == 6);

  CHECK_THROWS_AS(tutte_decomposition(path_graph(2)), ValidationError);
  CHECK_THROWS_AS(tutte_decomposition(path_graph(4)), ValidationError);
  Graph bowtie = cycle_graph(3);
  bowtie.add_vertex();
  bowtie.add_vertex();
  bowtie.add_edge(0, 3);
  bowtie.add_edge(3, 4);
  bowtie.add_edge(4, 0);
  CHECK_THROWS_AS(tutte_decomposition(bowtie), ValidationError);
}

TEST_CASE("tutte_decomposition round trip, structure and relabel equivariance") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 80; ++trial) {
    const bool planar = trial % 4 != 3;
    const Graph g = testing::random_two_connected(12, 3 + static_cast<int>(rng() % 8), rng, planar, trial % 3 == 0);
    const TutteTree t = tutte_decomposition(g);
    check_tree_structure(g, t);
    CHECK(isomorphic(amalgamate(t), g));

    // A graph is three-connected exactly when it is a single such node.
    if (g.is_simple() && g.num_vertices() >= 4)
      CHECK((t.nodes.size() == 1 && t.nodes[0].tag == TutteTag::ThreeConnected) ==
            !testing::has_separation_pair(g));

    std::vector<VertexId> perm(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) perm[v] = v;
    std::shuffle(perm.begin(), perm.end(), rng);
    const Graph h = relabel(g, perm);
    CHECK(tutte_signature(h, tutte_decomposition(h)) == tutte_signature(g, t));
  }
}

TEST_CASE("amalgamate two triangles along one virtual pair") {
  TutteTree t;
  for (int k = 0; k < 2; ++k) {
    TutteNode n;
    n.tag = TutteTag::Cycle;
    n.graph = cycle_graph(3);
    n.vertex_origin = k == 0 ? std::vector<VertexId>{0, 1, 2} : std::vector<VertexId>{0, 2, 3};
    n.edge_origin = k == 0 ? std::vector<EdgeId>{0, 1, -1} : std::vector<EdgeId>{-1, 2, 3};
    t.nodes.push_back(n);
  }
  // Virtual edge 2 of the first node (local 2-0) meets virtual edge 0 of
  // the second (local 0-1): origin 2 is local 1 there, origin 0 is local 0.
  t.edges.push_back({0, 1, 2, 0, {{{2, 1}, {0, 0}}}});
  const Graph c = amalgamate(t);
  CHECK(c.num_vertices() == 4);
  CHECK(c.num_edges() == 4);
  CHECK(isomorphic(c, cycle_graph(4)));

  TutteTree bad = t;
  bad.edges[0].endpoints = {{{1, 1}, {0, 0}}};
  CHECK_THROWS_AS(amalgamate(bad), ValidationError);
  TutteTree real_edge = t;
  real_edge.edges[0].edge_a = 0;
  CHECK_THROWS_AS(amalgamate(real_edge), ValidationError);
}

TEST_CASE("component_embeddings by tag") {
  Graph link(2);
  for (int i = 0; i < 3; ++i) link.add_edge(0, 1);
  const TutteTree tl = tutte_decomposition(link);
  REQUIRE(tl.nodes.size() == 1);
  CHECK(tl.nodes[0].tag == TutteTag::ThreeLink);
  const auto pair = component_embeddings(tl.nodes[0]);
  CHECK(pair.size() == 2);
  CHECK(pair[0] == pair[1].reversed(tl.nodes[0].graph));
  CHECK(enumerate_planar_embeddings(link).size() == 1);

  const TutteTree c7 = tutte_decomposition(cycle_graph(7));
  CHECK(component_embeddings(c7.nodes[0]).size() == 1);

  const TutteTree k4 = tutte_decomposition(complete_graph(4));
  const auto emb = component_embeddings(k4.nodes[0]);
  const auto brute = enumerate_planar_embeddings(k4.nodes[0].graph, {.both_chiralities = true});
  CHECK(emb == brute);
}

TEST_CASE("three-connected nodes have exactly one embedding up to mirror") {
  std::mt19937_64 rng(5150);
  int seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = testing::random_two_connected(9, 10, rng);
    for (const auto& n : tutte_decomposition(g).nodes) {
      if (n.tag != TutteTag::ThreeConnected || n.graph.num_vertices() > 8) continue;
      CHECK(enumerate_planar_embeddings(n.graph).size() == 1);
      CHECK(component_embeddings(n) == enumerate_planar_embeddings(n.graph, {.both_chiralities = true}));
      ++seen;
    }
  }
  CHECK(seen > 5);
}

TEST_CASE("composition is a bijection onto the planar embeddings") {
  std::mt19937_64 rng(31337);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = testing::random_two_connected(8, 4 + static_cast<int>(rng() % 5), rng, true, trial % 3 == 0);
    const TutteTree t = tutte_decomposition(g);
    std::vector<std::vector<RotationSystem>> choices;
    std::size_t product = 1;
    for (const auto& n : t.nodes) {
      choices.push_back(component_embeddings(n));
      product *= choices.back().size();
    }
    if (product > 5000) continue;
    std::set<RotationSystem> composed;
    std::vector<std::size_t> idx(t.nodes.size(), 0);
    while (true) {
      std::vector<RotationSystem> pick;
      for (std::size_t i = 0; i < t.nodes.size(); ++i) pick.push_back(choices[i][idx[i]]);
      const RotationSystem r = compose_on(g, t, pick);
      CHECK(euler_genus(g, r) == 0);
      composed.insert(r);
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
    CHECK(composed.size() == product);
    const auto all = enumerate_planar_embeddings(g, {.both_chiralities = true});
    CHECK(std::set<RotationSystem>(all.begin(), all.end()) == composed);
    ++checked;
  }
  CHECK(checked > 20);
}
