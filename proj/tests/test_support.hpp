#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "lfe/graph.hpp"
#include "lfe/planarity.hpp"
#include "lfe/rotation.hpp"

namespace lfe::testing {

inline Graph random_connected_graph(int n, int extra_edges, std::mt19937_64& rng, bool multi = false) {
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int k = 0; k < extra_edges; ++k) {
    const int a = pick(rng), b = pick(rng);
    if (!multi && (a == b || g.has_edge(a, b))) continue;
    g.add_edge(a, b);
  }
  return g;
}

inline RotationSystem random_rotation(const Graph& g, std::mt19937_64& rng) {
  std::vector<std::vector<DartId>> orders(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    orders[v] = g.darts_at(v);
    std::shuffle(orders[v].begin(), orders[v].end(), rng);
  }
  return RotationSystem(g, std::move(orders));
}

/// Connected planar graph grown by random edge insertion under a planarity check.
inline Graph random_planar_graph(int n, int attempts, std::mt19937_64& rng) {
  Graph g = random_connected_graph(n, 0, rng);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int k = 0; k < attempts; ++k) {
    const int a = pick(rng), b = pick(rng);
    if (a == b || g.has_edge(a, b)) continue;
    Graph h = g;
    h.add_edge(a, b);
    if (is_planar(h).planar) g = std::move(h);
  }
  return g;
}

/// Simple cycles as dart sequences, each listed once per orientation.
inline std::vector<std::vector<DartId>> simple_cycles(const Graph& g, std::size_t limit) {
  std::vector<std::vector<DartId>> out;
  std::vector<bool> on(g.num_vertices(), false);
  std::vector<DartId> path;
  std::function<void(VertexId, VertexId)> dfs = [&](VertexId start, VertexId v) {
    for (DartId d : g.darts_at(v)) {
      if (out.size() >= limit) return;
      const VertexId w = g.target(d);
      if (w == start) {
        auto c = path;
        c.push_back(d);
        if (c.size() != 2 || dart_edge(c[0]) != dart_edge(c[1])) out.push_back(std::move(c));
        continue;
      }
      if (w < start || on[w]) continue;
      on[w] = true;
      path.push_back(d);
      dfs(start, w);
      path.pop_back();
      on[w] = false;
    }
  };
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    on[s] = true;
    dfs(s, s);
    on[s] = false;
  }
  return out;
}

}  // namespace lfe::testing

namespace lfe::testing {

/// 2-connected graph from a cycle plus random ears with up to two new
/// vertices each; planar when `planar` is set.
inline Graph random_two_connected(int max_vertices, int ears, std::mt19937_64& rng, bool planar = true,
                                  bool multi = false) {
  Graph g = cycle_graph(3 + static_cast<int>(rng() % 3));
  for (int k = 0; k < ears; ++k) {
    Graph h = g;
    const int n = h.num_vertices();
    const int a = static_cast<int>(rng() % n);
    int b = static_cast<int>(rng() % n);
    int inner = static_cast<int>(rng() % 3);
    if (h.num_vertices() + inner > max_vertices) inner = 0;
    if (a == b) {
      if (inner == 0) continue;
      b = (a + 1) % n;
    }
    if (inner == 0 && !multi && h.has_edge(a, b)) continue;
    VertexId prev = a;
    for (int i = 0; i < inner; ++i) {
      const VertexId x = h.add_vertex();
      h.add_edge(prev, x);
      prev = x;
    }
    h.add_edge(prev, b);
    if (!planar || is_planar(h).planar) g = std::move(h);
  }
  return g;
}

/// Vertices whose removal disconnects g, by brute force.
inline std::vector<VertexId> brute_cut_vertices(const Graph& g) {
  std::vector<VertexId> out;
  std::vector<int> comp;
  const int base = components(g, {}, comp);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    std::vector<bool> removed(g.num_vertices(), false);
    removed[v] = true;
    if (components(g, removed, comp) > base) out.push_back(v);
  }
  return out;
}

/// True when removing some two vertices disconnects g.
inline bool has_separation_pair(const Graph& g) {
  std::vector<int> comp;
  for (VertexId a = 0; a < g.num_vertices(); ++a)
    for (VertexId b = a + 1; b < g.num_vertices(); ++b) {
      std::vector<bool> removed(g.num_vertices(), false);
      removed[a] = removed[b] = true;
      if (components(g, removed, comp) > 1) return true;
    }
  return false;
}

}  // namespace lfe::testing
