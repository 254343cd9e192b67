#include "lfe/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace lfe {

Graph::Graph(int num_vertices) {
  for (int i = 0; i < num_vertices; ++i) add_vertex();
}

VertexId Graph::add_vertex(std::string label) {
  const VertexId v = num_vertices();
  if (label.empty()) label = std::to_string(v);
  labels_.push_back(std::move(label));
  incident_.emplace_back();
  return v;
}

EdgeId Graph::add_edge(VertexId u, VertexId v) {
  if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
    throw ValidationError("add_edge: endpoint out of range");
  const EdgeId e = num_edges();
  edges_.push_back({u, v});
  incident_[u].push_back(make_dart(e, 0));
  incident_[v].push_back(make_dart(e, 1));
  return e;
}

std::vector<VertexId> Graph::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (DartId d : darts_at(v)) out.push_back(target(d));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Graph::has_edge(VertexId u, VertexId v) const { return edge_multiplicity(u, v) > 0; }

int Graph::edge_multiplicity(VertexId u, VertexId v) const {
  int count = 0;
  for (DartId d : darts_at(u))
    if (target(d) == v && (u != v || dart_polarity(d) == 0)) ++count;
  return count;
}

bool Graph::is_simple() const {
  for (VertexId v = 0; v < num_vertices(); ++v) {
    std::vector<VertexId> nb;
    for (DartId d : darts_at(v)) {
      if (target(d) == v) return false;
      nb.push_back(target(d));
    }
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) return false;
  }
  return true;
}

VertexId Graph::find_label(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? kNoVertex : static_cast<VertexId>(it - labels_.begin());
}

int components(const Graph& g, const std::vector<bool>& removed, std::vector<int>& comp) {
  comp.assign(g.num_vertices(), -1);
  int count = 0;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    if (comp[s] != -1 || (!removed.empty() && removed[s])) continue;
    std::queue<VertexId> q;
    q.push(s);
    comp[s] = count;
    while (!q.empty()) {
      const VertexId v = q.front();
      q.pop();
      for (DartId d : g.darts_at(v)) {
        const VertexId w = g.target(d);
        if (comp[w] != -1 || (!removed.empty() && removed[w])) continue;
        comp[w] = count;
        q.push(w);
      }
    }
    ++count;
  }
  return count;
}

bool is_connected(const Graph& g) {
  std::vector<int> comp;
  return components(g, {}, comp) <= 1;
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<VertexId>& keep) {
  InducedSubgraph out;
  std::vector<VertexId> index(g.num_vertices(), kNoVertex);
  for (VertexId v : keep) {
    index[v] = out.graph.add_vertex(g.label(v));
    out.vertex_map.push_back(v);
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (index[ed.u] == kNoVertex || index[ed.v] == kNoVertex) continue;
    out.graph.add_edge(index[ed.u], index[ed.v]);
    out.edge_map.push_back(e);
  }
  return out;
}

Graph relabel(const Graph& g, const std::vector<VertexId>& perm) {
  Graph out(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) out.set_label(perm[v], g.label(v));
  for (const Edge& e : g.edges()) out.add_edge(perm[e.u], perm[e.v]);
  return out;
}

namespace {

using Matrix = std::vector<std::vector<int>>;

Matrix multiplicity_matrix(const Graph& g) {
  const int n = g.num_vertices();
  Matrix m(n, std::vector<int>(n, 0));
  for (const Edge& e : g.edges()) {
    ++m[e.u][e.v];
    if (e.u != e.v) ++m[e.v][e.u];
  }
  return m;
}

struct IsoSearch {
  const Matrix& a;
  const Matrix& b;
  std::vector<int> order;
  std::vector<long long> sig_a, sig_b;
  std::vector<int> map, used;

  bool extend(std::size_t k) {
    if (k == order.size()) return true;
    const int v = order[k];
    for (int w = 0; w < static_cast<int>(b.size()); ++w) {
      if (used[w] || sig_a[v] != sig_b[w] || a[v][v] != b[w][w]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) {
        const int x = order[j];
        ok = a[v][x] == b[w][map[x]];
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = 1;
      if (extend(k + 1)) return true;
      used[w] = 0;
    }
    return false;
  }
};

// Degree plus sorted neighbour degrees, folded into one number.
std::vector<long long> signatures(const Graph& g) {
  std::vector<long long> sig(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    std::vector<int> nd;
    for (DartId d : g.darts_at(v)) nd.push_back(g.degree(g.target(d)));
    std::sort(nd.begin(), nd.end());
    long long h = g.degree(v);
    for (int x : nd) h = h * 1000003LL + x;
    sig[v] = h;
  }
  return sig;
}

}  // namespace

bool isomorphic(const Graph& ga, const Graph& gb) {
  if (ga.num_vertices() != gb.num_vertices() || ga.num_edges() != gb.num_edges()) return false;
  const Matrix a = multiplicity_matrix(ga);
  const Matrix b = multiplicity_matrix(gb);
  IsoSearch s{a, b, {}, signatures(ga), signatures(gb), {}, {}};
  auto sa = s.sig_a, sb = s.sig_b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  // BFS order keeps already-mapped neighbours available for pruning.
  const int n = ga.num_vertices();
  std::vector<bool> seen(n, false);
  for (VertexId s0 = 0; s0 < n; ++s0) {
    if (seen[s0]) continue;
    std::queue<VertexId> q;
    q.push(s0);
    seen[s0] = true;
    while (!q.empty()) {
      const VertexId v = q.front();
      q.pop();
      s.order.push_back(v);
      for (VertexId w : ga.neighbors(v))
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
    }
  }
  s.map.assign(n, -1);
  s.used.assign(n, 0);
  return s.extend(0);
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  return g;
}

Graph cycle_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

}  // namespace lfe
