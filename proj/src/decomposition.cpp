#include "lfe/decomposition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "lfe/planarity.hpp"

namespace lfe {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

BlockCutTree block_cut_tree(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<EdgeId> stack;
  std::vector<std::vector<EdgeId>> blocks;
  int timer = 0;

  std::function<void(VertexId, EdgeId)> dfs = [&](VertexId v, EdgeId parent_edge) {
    disc[v] = low[v] = timer++;
    for (DartId d : g.darts_at(v)) {
      const EdgeId e = dart_edge(d);
      const VertexId w = g.target(d);
      if (e == parent_edge || w == v) continue;
      if (disc[w] == -1) {
        stack.push_back(e);
        dfs(w, e);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          std::vector<EdgeId> block;
          while (true) {
            const EdgeId top = stack.back();
            stack.pop_back();
            block.push_back(top);
            if (top == e) break;
          }
          blocks.push_back(std::move(block));
        }
      } else if (disc[w] < disc[v]) {
        stack.push_back(e);
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  for (VertexId v = 0; v < n; ++v)
    if (disc[v] == -1) dfs(v, -1);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (g.edge(e).u == g.edge(e).v) blocks.push_back({e});

  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());

  BlockCutTree t;
  t.block_edges = std::move(blocks);
  t.blocks_at.assign(n, {});
  for (int b = 0; b < t.num_blocks(); ++b) {
    std::set<VertexId> vs;
    for (EdgeId e : t.block_edges[b]) {
      vs.insert(g.edge(e).u);
      vs.insert(g.edge(e).v);
    }
    t.block_vertices.emplace_back(vs.begin(), vs.end());
    for (VertexId v : vs) t.blocks_at[v].push_back(b);
  }
  for (VertexId v = 0; v < n; ++v)
    if (t.blocks_at[v].size() > 1) {
      t.cut_vertices.push_back(v);
      for (int b : t.blocks_at[v]) t.tree_edges.push_back({b, v});
    }
  std::sort(t.tree_edges.begin(), t.tree_edges.end());
  return t;
}

InducedSubgraph block_subgraph(const Graph& g, const BlockCutTree& bct, int block) {
  InducedSubgraph out;
  std::map<VertexId, VertexId> local;
  for (VertexId v : bct.block_vertices.at(block)) {
    local[v] = out.graph.add_vertex(g.label(v));
    out.vertex_map.push_back(v);
  }
  for (EdgeId e : bct.block_edges[block]) {
    out.graph.add_edge(local[g.edge(e).u], local[g.edge(e).v]);
    out.edge_map.push_back(e);
  }
  return out;
}

std::string to_string(TutteTag t) {
  switch (t) {
    case TutteTag::Cycle: return "cycle";
    case TutteTag::ThreeLink: return "three-link";
    case TutteTag::Bond: return "bond";
    case TutteTag::ThreeConnected: return "three-connected";
  }
  return "unknown";
}

VertexId TutteNode::local_vertex(VertexId origin) const {
  auto it = std::find(vertex_origin.begin(), vertex_origin.end(), origin);
  return it == vertex_origin.end() ? kNoVertex : static_cast<VertexId>(it - vertex_origin.begin());
}

int TutteTree::tree_edge_of(int node, EdgeId e) const {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].a == node && edges[i].edge_a == e) return static_cast<int>(i);
    if (edges[i].b == node && edges[i].edge_b == e) return static_cast<int>(i);
  }
  return -1;
}

std::vector<int> TutteTree::neighbours(int node) const {
  std::vector<int> out;
  for (const auto& te : edges) {
    if (te.a == node) out.push_back(te.b);
    if (te.b == node) out.push_back(te.a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Working piece during splitting. Vertices are ids of the input graph;
// an edge id >= 0 is an input edge, id < 0 is virtual edge -(id + 1).
struct PieceEdge {
  VertexId u, v;
  int id;
};
struct Piece {
  std::vector<PieceEdge> edges;
  bool alive = true;

  std::vector<VertexId> vertices() const {
    std::set<VertexId> s;
    for (const auto& e : edges) {
      s.insert(e.u);
      s.insert(e.v);
    }
    return {s.begin(), s.end()};
  }
  bool is_bond() const { return vertices().size() == 2; }
  bool is_cycle() const {
    std::map<VertexId, int> deg;
    for (const auto& e : edges) {
      ++deg[e.u];
      ++deg[e.v];
    }
    if (deg.size() < 3) return false;
    for (const auto& [v, d] : deg)
      if (d != 2) return false;
    return true;
  }
};

// Looks for a separation pair whose separation classes can be grouped into
// two sides of at least two edges each; returns the edge indices of one side.
std::optional<std::pair<std::pair<VertexId, VertexId>, std::vector<int>>> find_split(const Piece& p) {
  const auto verts = p.vertices();
  if (verts.size() < 3) return std::nullopt;
  const int m = static_cast<int>(p.edges.size());
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      const VertexId u = verts[i], v = verts[j];
      UnionFind uf(m);
      std::map<VertexId, int> first_edge;
      for (int k = 0; k < m; ++k)
        for (VertexId x : {p.edges[k].u, p.edges[k].v}) {
          if (x == u || x == v) continue;
          auto [it, fresh] = first_edge.emplace(x, k);
          if (!fresh) uf.unite(k, it->second);
        }
      std::map<int, std::vector<int>> classes;
      for (int k = 0; k < m; ++k) classes[uf.find(k)].push_back(k);
      if (classes.size() < 2) continue;
      for (const auto& [root, members] : classes) {
        const int size = static_cast<int>(members.size());
        if (size >= 2 && m - size >= 2) return std::make_pair(std::make_pair(u, v), members);
      }
    }
  return std::nullopt;
}

void check_two_connected(const Graph& g) {
  if (g.num_vertices() < 2) throw ValidationError("tutte_decomposition: need at least two vertices");
  if (g.num_edges() < 2) throw ValidationError("tutte_decomposition: need at least two edges");
  for (const Edge& e : g.edges())
    if (e.u == e.v) throw ValidationError("tutte_decomposition: loops are not allowed");
  if (!is_connected(g)) throw ValidationError("tutte_decomposition: graph is not connected");
  const BlockCutTree bct = block_cut_tree(g);
  if (bct.num_blocks() != 1) throw ValidationError("tutte_decomposition: graph is not 2-connected");
}

}  // namespace

TutteTree tutte_decomposition(const Graph& g) {
  check_two_connected(g);
  std::vector<Piece> pieces(1);
  for (EdgeId e = 0; e < g.num_edges(); ++e) pieces[0].edges.push_back({g.edge(e).u, g.edge(e).v, e});

  int next_virtual = 0;
  std::vector<std::size_t> work{0};
  while (!work.empty()) {
    const std::size_t idx = work.back();
    work.pop_back();
    auto split = find_split(pieces[idx]);
    if (!split) continue;
    const auto [pair, side] = *split;
    const int vid = -(next_virtual++ + 1);
    std::vector<bool> in_side(pieces[idx].edges.size(), false);
    for (int k : side) in_side[k] = true;
    Piece a, b;
    for (std::size_t k = 0; k < pieces[idx].edges.size(); ++k)
      (in_side[k] ? a : b).edges.push_back(pieces[idx].edges[k]);
    a.edges.push_back({pair.first, pair.second, vid});
    b.edges.push_back({pair.first, pair.second, vid});
    pieces[idx] = std::move(a);
    pieces.push_back(std::move(b));
    work.push_back(idx);
    work.push_back(pieces.size() - 1);
  }

  // Merge adjacent bonds and adjacent cycles.
  bool merged = true;
  while (merged) {
    merged = false;
    std::map<int, std::vector<std::size_t>> holders;
    for (std::size_t i = 0; i < pieces.size(); ++i)
      if (pieces[i].alive)
        for (const auto& e : pieces[i].edges)
          if (e.id < 0) holders[e.id].push_back(i);
    for (const auto& [vid, hs] : holders) {
      Piece& a = pieces[hs[0]];
      Piece& b = pieces[hs[1]];
      if (!((a.is_bond() && b.is_bond()) || (a.is_cycle() && b.is_cycle()))) continue;
      std::vector<PieceEdge> edges;
      for (const auto& e : a.edges)
        if (e.id != vid) edges.push_back(e);
      for (const auto& e : b.edges)
        if (e.id != vid) edges.push_back(e);
      a.edges = std::move(edges);
      b.alive = false;
      merged = true;
      break;
    }
  }

  TutteTree t;
  std::vector<std::pair<std::pair<std::vector<VertexId>, std::vector<int>>, const Piece*>> ordered;
  for (const auto& p : pieces) {
    if (!p.alive) continue;
    std::vector<int> real;
    for (const auto& e : p.edges)
      if (e.id >= 0) real.push_back(e.id);
    std::sort(real.begin(), real.end());
    ordered.push_back({{p.vertices(), real}, &p});
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  std::map<int, std::vector<std::pair<int, EdgeId>>> virtual_at;
  for (const auto& [key, piece] : ordered) {
    TutteNode node;
    node.vertex_origin = key.first;
    for (VertexId v : node.vertex_origin) node.graph.add_vertex(g.label(v));
    std::vector<PieceEdge> edges = piece->edges;
    std::sort(edges.begin(), edges.end(), [](const PieceEdge& x, const PieceEdge& y) {
      if ((x.id >= 0) != (y.id >= 0)) return x.id >= 0;
      return x.id >= 0 ? x.id < y.id : x.id > y.id;
    });
    for (const auto& e : edges) {
      const EdgeId le = node.graph.add_edge(node.local_vertex(e.u), node.local_vertex(e.v));
      node.edge_origin.push_back(e.id >= 0 ? e.id : -1);
      if (e.id < 0) virtual_at[e.id].push_back({static_cast<int>(t.nodes.size()), le});
    }
    if (piece->is_bond()) node.tag = piece->edges.size() == 3 ? TutteTag::ThreeLink : TutteTag::Bond;
    else if (piece->is_cycle()) node.tag = TutteTag::Cycle;
    else node.tag = TutteTag::ThreeConnected;
    t.nodes.push_back(std::move(node));
  }
  for (auto it = virtual_at.rbegin(); it != virtual_at.rend(); ++it) {
    auto [na, ea] = it->second.at(0);
    auto [nb, eb] = it->second.at(1);
    if (nb < na) {
      std::swap(na, nb);
      std::swap(ea, eb);
    }
    TutteTreeEdge te{na, nb, ea, eb, {}};
    const Edge& la = t.nodes[na].graph.edge(ea);
    for (int s = 0; s < 2; ++s) {
      const VertexId x = s == 0 ? la.u : la.v;
      te.endpoints[s] = {x, t.nodes[nb].local_vertex(t.nodes[na].vertex_origin[x])};
    }
    t.edges.push_back(te);
  }
  std::sort(t.edges.begin(), t.edges.end(), [](const TutteTreeEdge& x, const TutteTreeEdge& y) {
    return std::tie(x.a, x.b, x.edge_a) < std::tie(y.a, y.b, y.edge_a);
  });
  t.degenerate_digon = g.num_vertices() == 2 && g.num_edges() == 2;
  return t;
}

Graph amalgamate(const TutteTree& t) {
  std::vector<int> offset(t.nodes.size() + 1, 0);
  for (std::size_t i = 0; i < t.nodes.size(); ++i) offset[i + 1] = offset[i] + t.nodes[i].graph.num_vertices();
  if (t.nodes.empty()) return Graph();
  if (t.edges.size() + 1 != t.nodes.size()) throw ValidationError("amalgamate: tree edge count mismatch");

  UnionFind uf(offset.back());
  UnionFind tree_uf(static_cast<int>(t.nodes.size()));
  std::vector<std::set<EdgeId>> used(t.nodes.size());
  for (const auto& te : t.edges) {
    const int n = static_cast<int>(t.nodes.size());
    if (te.a < 0 || te.b < 0 || te.a >= n || te.b >= n || te.a == te.b)
      throw ValidationError("amalgamate: tree edge names a missing node");
    if (tree_uf.find(te.a) == tree_uf.find(te.b)) throw ValidationError("amalgamate: tree edges form a cycle");
    tree_uf.unite(te.a, te.b);
    const TutteNode& A = t.nodes[te.a];
    const TutteNode& B = t.nodes[te.b];
    if (te.edge_a < 0 || te.edge_a >= A.graph.num_edges() || !A.is_virtual(te.edge_a) || te.edge_b < 0 ||
        te.edge_b >= B.graph.num_edges() || !B.is_virtual(te.edge_b))
      throw ValidationError("amalgamate: gluing must pair two virtual edges");
    if (!used[te.a].insert(te.edge_a).second || !used[te.b].insert(te.edge_b).second)
      throw ValidationError("amalgamate: virtual edge selected twice");
    const Edge& ea = A.graph.edge(te.edge_a);
    const Edge& eb = B.graph.edge(te.edge_b);
    std::set<VertexId> sa{te.endpoints[0].first, te.endpoints[1].first};
    std::set<VertexId> sb{te.endpoints[0].second, te.endpoints[1].second};
    if (sa != std::set<VertexId>{ea.u, ea.v} || sb != std::set<VertexId>{eb.u, eb.v} || sa.size() != 2)
      throw ValidationError("amalgamate: endpoint bijection does not match the virtual edges");
    for (const auto& [x, y] : te.endpoints) uf.unite(offset[te.a] + x, offset[te.b] + y);
  }
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    for (EdgeId e = 0; e < t.nodes[i].graph.num_edges(); ++e)
      if (t.nodes[i].is_virtual(e) && !used[i].count(e))
        throw ValidationError("amalgamate: unpaired virtual edge");

  Graph out;
  std::map<int, VertexId> index;
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    for (VertexId v = 0; v < t.nodes[i].graph.num_vertices(); ++v) {
      const int root = uf.find(offset[i] + v);
      if (!index.count(root)) index[root] = out.add_vertex(t.nodes[i].graph.label(v));
    }
  std::vector<std::tuple<EdgeId, VertexId, VertexId>> real;
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    for (EdgeId e = 0; e < t.nodes[i].graph.num_edges(); ++e) {
      if (t.nodes[i].is_virtual(e)) continue;
      const Edge& le = t.nodes[i].graph.edge(e);
      real.push_back({t.nodes[i].edge_origin[e], index[uf.find(offset[i] + le.u)], index[uf.find(offset[i] + le.v)]});
    }
  std::sort(real.begin(), real.end());
  for (const auto& [origin, u, v] : real) out.add_edge(u, v);
  return out;
}

std::vector<RotationSystem> component_embeddings(const TutteNode& node) {
  const Graph& g = node.graph;
  std::vector<RotationSystem> out;
  switch (node.tag) {
    case TutteTag::Cycle:
      out.push_back(default_rotation(g));
      break;
    case TutteTag::ThreeLink:
    case TutteTag::Bond:
      // Any order at one pole, mirrored at the other.
      for (const auto& at_u : cyclic_orders(g.darts_at(0))) {
        std::vector<std::vector<DartId>> orders(2);
        orders[0] = at_u;
        for (auto it = at_u.rbegin(); it != at_u.rend(); ++it) orders[1].push_back(reverse(*it));
        out.emplace_back(g, std::move(orders));
      }
      break;
    case TutteTag::ThreeConnected: {
      const PlanarityResult r = is_planar(g);
      if (!r.planar) throw ValidationError("component_embeddings: three-connected node is not planar");
      out.push_back(*r.embedding);
      out.push_back(r.embedding->reversed(g));
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ComposedEmbedding compose_embeddings(const TutteTree& t, const std::vector<RotationSystem>& per_node,
                                     std::vector<int> subset) {
  if (per_node.size() != t.nodes.size()) throw ValidationError("compose: one rotation per node expected");
  if (subset.empty()) {
    subset.resize(t.nodes.size());
    std::iota(subset.begin(), subset.end(), 0);
  }
  std::sort(subset.begin(), subset.end());
  std::vector<bool> in(t.nodes.size(), false);
  for (int n : subset) in[n] = true;

  ComposedEmbedding out;
  std::set<VertexId> origins;
  for (int n : subset)
    for (VertexId v : t.nodes[n].vertex_origin) origins.insert(v);
  std::map<VertexId, VertexId> out_vertex;
  for (VertexId o : origins) {
    VertexId label_from = kNoVertex;
    for (int n : subset)
      if ((label_from = t.nodes[n].local_vertex(o)) != kNoVertex) {
        out_vertex[o] = out.graph.add_vertex(t.nodes[n].graph.label(label_from));
        break;
      }
    out.vertex_origin.push_back(o);
  }

  // (node, local edge) -> output edge, or -1 - tree edge for internal glue.
  std::vector<std::vector<int>> edge_map(t.nodes.size());
  std::vector<std::tuple<EdgeId, int, EdgeId>> real;  // origin, node, local edge
  std::vector<std::tuple<int, int, EdgeId>> frontier; // tree edge, node, local edge
  for (int n : subset) {
    const TutteNode& node = t.nodes[n];
    edge_map[n].assign(node.graph.num_edges(), 0);
    for (EdgeId e = 0; e < node.graph.num_edges(); ++e) {
      if (!node.is_virtual(e)) {
        real.push_back({node.edge_origin[e], n, e});
        continue;
      }
      const int te = t.tree_edge_of(n, e);
      const int other = t.edges[te].a == n ? t.edges[te].b : t.edges[te].a;
      if (in[other]) edge_map[n][e] = -1 - te;
      else frontier.push_back({te, n, e});
    }
  }
  std::sort(real.begin(), real.end());
  std::sort(frontier.begin(), frontier.end());
  auto add = [&](int n, EdgeId e, EdgeId origin, int te) {
    const TutteNode& node = t.nodes[n];
    const Edge& le = node.graph.edge(e);
    edge_map[n][e] = out.graph.add_edge(out_vertex[node.vertex_origin[le.u]], out_vertex[node.vertex_origin[le.v]]);
    out.edge_origin.push_back(origin);
    out.frontier_tree_edge.push_back(te);
  };
  for (const auto& [origin, n, e] : real) add(n, e, origin, -1);
  for (const auto& [te, n, e] : frontier) add(n, e, -1, te);

  std::function<void(int, VertexId, DartId, std::vector<DartId>&)> expand =
      [&](int n, VertexId x, DartId entry, std::vector<DartId>& acc) {
        const auto& ord = per_node[n].order(x);
        const std::size_t len = ord.size();
        std::size_t start = 0, count = len;
        if (entry >= 0) {
          start = (std::find(ord.begin(), ord.end(), entry) - ord.begin()) + 1;
          count = len - 1;
        }
        for (std::size_t k = 0; k < count; ++k) {
          const DartId d = ord[(start + k) % len];
          const int mapped = edge_map[n][dart_edge(d)];
          if (mapped >= 0) {
            acc.push_back(make_dart(mapped, dart_polarity(d)));
            continue;
          }
          const TutteTreeEdge& te = t.edges[-1 - mapped];
          const int other = te.a == n ? te.b : te.a;
          const EdgeId oe = te.a == n ? te.edge_b : te.edge_a;
          const VertexId ox = t.nodes[other].local_vertex(t.nodes[n].vertex_origin[x]);
          const DartId od = make_dart(oe, t.nodes[other].graph.edge(oe).u == ox ? 0 : 1);
          expand(other, ox, od, acc);
        }
      };

  std::vector<std::vector<DartId>> orders(out.graph.num_vertices());
  for (VertexId i = 0; i < out.graph.num_vertices(); ++i) {
    const VertexId o = out.vertex_origin[i];
    for (int n : subset) {
      const VertexId x = t.nodes[n].local_vertex(o);
      if (x == kNoVertex) continue;
      expand(n, x, -1, orders[i]);
      break;
    }
  }
  out.rot = RotationSystem(out.graph, std::move(orders));
  return out;
}

RotationSystem compose_on(const Graph& g, const TutteTree& t, const std::vector<RotationSystem>& per_node) {
  const ComposedEmbedding c = compose_embeddings(t, per_node);
  std::vector<std::vector<DartId>> orders(g.num_vertices());
  for (VertexId i = 0; i < c.graph.num_vertices(); ++i) {
    const VertexId o = c.vertex_origin[i];
    for (DartId d : c.rot.order(i)) {
      const EdgeId ge = c.edge_origin[dart_edge(d)];
      orders[o].push_back(make_dart(ge, g.edge(ge).u == o ? 0 : 1));
    }
  }
  return RotationSystem(g, std::move(orders));
}

std::vector<std::string> tutte_signature(const Graph& g, const TutteTree& t) {
  std::vector<std::string> out;
  for (const auto& node : t.nodes) {
    std::vector<std::string> labels;
    for (VertexId v : node.vertex_origin) labels.push_back(g.label(v));
    std::sort(labels.begin(), labels.end());
    std::vector<EdgeId> real;
    int virt = 0;
    for (EdgeId e = 0; e < node.graph.num_edges(); ++e) {
      if (node.is_virtual(e)) ++virt;
      else real.push_back(node.edge_origin[e]);
    }
    std::sort(real.begin(), real.end());
    std::string s = to_string(node.tag) + "|";
    for (const auto& l : labels) s += l + ",";
    s += "|";
    for (EdgeId e : real) s += std::to_string(e) + ",";
    s += "|" + std::to_string(virt);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lfe
