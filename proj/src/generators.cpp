#include "lfe/generators.hpp"

#include <cstdlib>
#include <functional>
#include <map>

namespace lfe {

namespace {

// A graph together with a distance from the root for every vertex.
struct Ball {
  Graph graph;
  std::vector<int> radius;
  std::vector<VertexId> boundary;
};

std::string key(int i, int j) { return std::to_string(i) + "." + std::to_string(j); }

// Product of a path [-r, r] with a fibre graph; fibre vertices are 0..k-1.
Ball path_product(int r, int k, const std::vector<std::pair<int, int>>& fibre_edges) {
  Ball b;
  std::map<std::pair<int, int>, VertexId> id;
  for (int i = -r; i <= r; ++i)
    for (int j = 0; j < k; ++j) {
      const std::string label = k == 1 ? std::to_string(i) : key(i, j);
      id[{i, j}] = b.graph.add_vertex(label);
      b.radius.push_back(std::abs(i));
      if (std::abs(i) == r) b.boundary.push_back(id[{i, j}]);
    }
  for (int i = -r; i <= r; ++i) {
    for (auto [x, y] : fibre_edges) b.graph.add_edge(id[{i, x}], id[{i, y}]);
    if (i < r)
      for (int j = 0; j < k; ++j) b.graph.add_edge(id[{i, j}], id[{i + 1, j}]);
  }
  return b;
}

// Ball of radius r in the tree with root degree d and d-1 children below,
// times a fibre with k vertices joined by fibre_edges.
Ball tree_product(int r, int d, int k, const std::vector<std::pair<int, int>>& fibre_edges) {
  Ball b;
  std::vector<std::vector<VertexId>> fibre;
  std::function<void(const std::string&, int, int)> grow = [&](const std::string& name, int depth, int parent) {
    std::vector<VertexId> here;
    for (int j = 0; j < k; ++j) {
      here.push_back(b.graph.add_vertex(k == 1 ? name : name + "." + std::to_string(j)));
      b.radius.push_back(depth);
      if (depth == r) b.boundary.push_back(here.back());
    }
    for (auto [x, y] : fibre_edges) b.graph.add_edge(here[x], here[y]);
    if (parent >= 0)
      for (int j = 0; j < k; ++j) b.graph.add_edge(fibre[parent][j], here[j]);
    fibre.push_back(here);
    const int self = static_cast<int>(fibre.size()) - 1;
    if (depth == r) return;
    const int children = depth == 0 ? d : d - 1;
    for (int c = 0; c < children; ++c) grow(name + std::to_string(c), depth + 1, self);
  };
  grow("o", 0, -1);
  return b;
}

// Triangular lattice on the upper half-plane, box |x| <= r, 0 <= y <= r.
Ball halfplane(int r) {
  Ball b;
  std::map<std::pair<int, int>, VertexId> id;
  for (int y = 0; y <= r; ++y)
    for (int x = -r; x <= r; ++x) {
      id[{x, y}] = b.graph.add_vertex(key(x, y));
      b.radius.push_back(std::max(std::abs(x), y));
      if (std::abs(x) == r || y == r) b.boundary.push_back(id[{x, y}]);
    }
  for (int y = 0; y <= r; ++y)
    for (int x = -r; x <= r; ++x) {
      if (x < r) b.graph.add_edge(id[{x, y}], id[{x + 1, y}]);
      if (y < r) b.graph.add_edge(id[{x, y}], id[{x, y + 1}]);
      if (y < r && x > -r) b.graph.add_edge(id[{x, y}], id[{x - 1, y + 1}]);
    }
  return b;
}

Ball build(const std::string& name, int depth, int degree) {
  if (name == "path_Z") return path_product(depth, 1, {});
  if (name == "ladder") return path_product(depth, 2, {{0, 1}});
  if (name == "K3xZ") return path_product(depth, 3, {{0, 1}, {1, 2}, {0, 2}});
  if (name == "tree_d") {
    if (degree < 2) throw ValidationError("tree_d: degree must be at least 2");
    return tree_product(depth, degree, 1, {});
  }
  if (name == "K2xT3") return tree_product(depth, 3, 2, {{0, 1}});
  if (name == "halfplane_triangulation") return halfplane(depth);
  throw ValidationError("unknown generator: " + name);
}

}  // namespace

const std::vector<std::string>& generator_names() {
  static const std::vector<std::string> names = {"path_Z", "ladder", "tree_d", "K3xZ", "K2xT3",
                                                 "halfplane_triangulation"};
  return names;
}

TruncatedGraph generate_truncation(const std::string& name, int depth, int degree) {
  if (depth < 1) throw ValidationError("generator depth must be at least 1");
  Ball b = build(name, depth, degree);
  TruncatedGraph t;
  t.graph = std::move(b.graph);
  t.boundary = std::move(b.boundary);
  std::sort(t.boundary.begin(), t.boundary.end());
  t.level = depth - 1;
  return t;
}

Exhaustion generate(const std::string& name, int depth, int degree) {
  if (depth < 1) throw ValidationError("generator depth must be at least 1");
  const Ball b = build(name, depth, degree);
  TruncatedGraph t;
  t.graph = b.graph;
  t.boundary = b.boundary;
  std::sort(t.boundary.begin(), t.boundary.end());
  std::vector<std::vector<VertexId>> levels;
  for (int r = 1; r < depth; ++r) {
    std::vector<VertexId> ball;
    for (VertexId v = 0; v < t.graph.num_vertices(); ++v)
      if (b.radius[v] <= r) ball.push_back(v);
    levels.push_back(std::move(ball));
  }
  return refine(t, levels);
}

}  // namespace lfe
