#include "lfe/planarity.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <queue>
#include <tuple>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace lfe {

namespace {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

DartId dart_from(const Graph& g, EdgeId e, VertexId at) { return make_dart(e, g.edge(e).u == at ? 0 : 1); }

// Simple core of a multigraph: one representative per adjacent pair.
struct SimpleCore {
  std::vector<EdgeId> rep;                   // simple edge -> original edge
  std::vector<std::vector<EdgeId>> copies;   // simple edge -> other parallel originals
  std::vector<std::vector<EdgeId>> loops;    // vertex -> loops
};

SimpleCore simple_core(const Graph& g) {
  SimpleCore s;
  s.loops.resize(g.num_vertices());
  std::map<std::pair<VertexId, VertexId>, int> index;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.u == ed.v) {
      s.loops[ed.u].push_back(e);
      continue;
    }
    const auto key = std::minmax(ed.u, ed.v);
    auto [it, fresh] = index.emplace(key, static_cast<int>(s.rep.size()));
    if (fresh) {
      s.rep.push_back(e);
      s.copies.emplace_back();
    } else {
      s.copies[it->second].push_back(e);
    }
  }
  return s;
}

// Boost can report a few dangling edges alongside the subdivision; strip
// pendant paths until every vertex has degree 0 or at least 2.
std::vector<std::vector<EdgeId>> prune_pendant(const Graph& g, std::vector<EdgeId> edges) {
  while (true) {
    std::vector<std::vector<EdgeId>> inc(g.num_vertices());
    for (EdgeId e : edges) {
      inc[g.edge(e).u].push_back(e);
      inc[g.edge(e).v].push_back(e);
    }
    std::set<EdgeId> drop;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (inc[v].size() == 1) drop.insert(inc[v][0]);
    if (drop.empty()) return inc;
    std::erase_if(edges, [&](EdgeId e) { return drop.count(e) > 0; });
  }
}

bool simple_core_planar(const Graph& g, const std::vector<EdgeId>& edges);

// Shrinks a non-planar edge set to a minimal one, which is a Kuratowski
// subdivision.
std::vector<EdgeId> minimise_nonplanar(const Graph& g, std::vector<EdgeId> edges) {
  for (std::size_t i = 0; i < edges.size();) {
    std::vector<EdgeId> trial = edges;
    trial.erase(trial.begin() + static_cast<long>(i));
    if (!simple_core_planar(g, trial)) edges = std::move(trial);
    else ++i;
  }
  return edges;
}

bool subdivision_shape(const std::vector<std::vector<EdgeId>>& inc) {
  int three = 0, four = 0;
  for (const auto& l : inc) {
    if (l.size() == 3) ++three;
    else if (l.size() == 4) ++four;
    else if (l.size() != 0 && l.size() != 2) return false;
  }
  return (four == 5 && three == 0) || (four == 0 && three == 6);
}

KuratowskiWitness subdivision_from_edges(const Graph& g, const std::vector<EdgeId>& reported) {
  std::vector<std::vector<EdgeId>> inc = prune_pendant(g, reported);
  if (!subdivision_shape(inc)) {
    std::vector<EdgeId> edges;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      for (EdgeId e : inc[v])
        if (g.edge(e).u == v) edges.push_back(e);
    inc = prune_pendant(g, minimise_nonplanar(g, edges));
  }
  KuratowskiWitness w;
  bool has_four = false;
  for (VertexId v = 0; v < g.num_vertices(); ++v) has_four |= inc[v].size() >= 4;
  w.pattern = has_four ? KuratowskiPattern::K5 : KuratowskiPattern::K33;
  std::vector<VertexId> branch;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (inc[v].size() >= 3) branch.push_back(v);
  const std::size_t expected = has_four ? 5 : 6;
  if (branch.size() != expected) throw std::logic_error("kuratowski: unexpected subdivision shape");

  // Walk every path between branch vertices through degree-2 vertices.
  std::vector<bool> is_branch(g.num_vertices(), false);
  for (VertexId b : branch) is_branch[b] = true;
  struct RawPath {
    VertexId from, to;
    std::vector<DartId> darts;
  };
  std::vector<RawPath> raw;
  for (VertexId b : branch)
    for (EdgeId e0 : inc[b]) {
      RawPath p{b, kNoVertex, {}};
      VertexId at = b;
      EdgeId e = e0;
      while (true) {
        const DartId d = dart_from(g, e, at);
        p.darts.push_back(d);
        at = g.target(d);
        if (is_branch[at]) break;
        e = inc[at][0] == e ? inc[at][1] : inc[at][0];
      }
      p.to = at;
      if (b < at) raw.push_back(std::move(p));
    }

  if (w.pattern == KuratowskiPattern::K5) {
    w.branch = branch;
  } else {
    std::vector<int> side(g.num_vertices(), -1);
    side[branch[0]] = 0;
    for (const auto& p : raw) {
      if (p.from == branch[0]) side[p.to] = 1;
      if (p.to == branch[0]) side[p.from] = 1;
    }
    for (VertexId b : branch)
      if (side[b] == 0 || side[b] == -1) w.branch.push_back(b);
    for (VertexId b : branch)
      if (side[b] == 1) w.branch.push_back(b);
  }
  auto pos = [&](VertexId v) {
    return static_cast<int>(std::find(w.branch.begin(), w.branch.end(), v) - w.branch.begin());
  };
  std::vector<std::pair<std::pair<int, int>, std::vector<DartId>>> paths;
  for (auto& p : raw) {
    int i = pos(p.from), j = pos(p.to);
    std::vector<DartId> darts = std::move(p.darts);
    if (i > j) {
      std::swap(i, j);
      std::reverse(darts.begin(), darts.end());
      for (auto& d : darts) d = reverse(d);
    }
    paths.push_back({{i, j}, std::move(darts)});
  }
  std::sort(paths.begin(), paths.end());
  for (auto& [pe, darts] : paths) {
    w.pattern_edges.push_back(pe);
    w.paths.push_back(std::move(darts));
  }
  return w;
}

bool simple_core_planar(const Graph& g, const std::vector<EdgeId>& edges) {
  BoostGraph bg(g.num_vertices());
  int index = 0;
  for (EdgeId e : edges) {
    auto [be, ok] = boost::add_edge(g.edge(e).u, g.edge(e).v, bg);
    (void)ok;
    boost::put(boost::edge_index, bg, be, index++);
  }
  return boost::boyer_myrvold_planarity_test(bg);
}

}  // namespace

Graph pattern_graph(KuratowskiPattern p) {
  return p == KuratowskiPattern::K5 ? complete_graph(5) : complete_bipartite(3, 3);
}

PlanarityResult is_planar(const Graph& g) {
  const SimpleCore core = simple_core(g);
  BoostGraph bg(g.num_vertices());
  for (std::size_t i = 0; i < core.rep.size(); ++i) {
    const Edge& ed = g.edge(core.rep[i]);
    auto [be, ok] = boost::add_edge(ed.u, ed.v, bg);
    (void)ok;
    boost::put(boost::edge_index, bg, be, static_cast<int>(i));
  }

  std::vector<std::vector<BoostEdge>> emb(g.num_vertices());
  std::vector<BoostEdge> kuratowski;
  PlanarityResult out;
  out.planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::embedding =
          boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, bg)),
      boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kuratowski));

  if (out.planar) {
    std::vector<std::vector<DartId>> orders(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      for (const BoostEdge& be : emb[v]) {
        const int s = boost::get(boost::edge_index, bg, be);
        const EdgeId rep = core.rep[s];
        const bool forward = g.edge(rep).u == v;
        // Parallel copies nest: rep, c1..ck at one end and ck..c1, rep at the other.
        if (forward) {
          orders[v].push_back(dart_from(g, rep, v));
          for (EdgeId c : core.copies[s]) orders[v].push_back(dart_from(g, c, v));
        } else {
          for (auto it = core.copies[s].rbegin(); it != core.copies[s].rend(); ++it)
            orders[v].push_back(dart_from(g, *it, v));
          orders[v].push_back(dart_from(g, rep, v));
        }
      }
      for (EdgeId l : core.loops[v]) {
        orders[v].push_back(make_dart(l, 0));
        orders[v].push_back(make_dart(l, 1));
      }
    }
    out.embedding = RotationSystem(g, std::move(orders));
  } else {
    std::vector<EdgeId> edges;
    for (const BoostEdge& be : kuratowski) edges.push_back(core.rep[boost::get(boost::edge_index, bg, be)]);
    out.witness = subdivision_from_edges(g, edges);
  }
  return out;
}

bool verify_subdivision(const Graph& g, const KuratowskiWitness& w) {
  const Graph h = pattern_graph(w.pattern);
  if (static_cast<int>(w.branch.size()) != h.num_vertices()) return false;
  if (w.paths.size() != w.pattern_edges.size() || static_cast<int>(w.paths.size()) != h.num_edges()) return false;
  std::vector<int> owner(g.num_vertices(), -1);  // -2 marks a branch vertex
  for (VertexId b : w.branch) {
    if (b < 0 || b >= g.num_vertices() || owner[b] != -1) return false;
    owner[b] = -2;
  }
  std::set<std::pair<int, int>> needed;
  for (const Edge& e : h.edges()) needed.insert(std::minmax(e.u, e.v));
  std::set<EdgeId> used_edges;
  for (std::size_t k = 0; k < w.paths.size(); ++k) {
    const auto [i, j] = w.pattern_edges[k];
    if (i < 0 || j < 0 || i >= h.num_vertices() || j >= h.num_vertices()) return false;
    if (!needed.erase(std::minmax(i, j))) return false;
    const auto& p = w.paths[k];
    if (p.empty() || g.source(p.front()) != w.branch[i] || g.target(p.back()) != w.branch[j]) return false;
    for (std::size_t t = 0; t < p.size(); ++t) {
      if (p[t] < 0 || p[t] >= g.num_darts()) return false;
      if (!used_edges.insert(dart_edge(p[t])).second) return false;
      if (t + 1 < p.size()) {
        const VertexId x = g.target(p[t]);
        if (g.source(p[t + 1]) != x || owner[x] != -1) return false;
        owner[x] = static_cast<int>(k);
      }
    }
  }
  return needed.empty();
}

MinorModel to_minor_model(const Graph& g, const KuratowskiWitness& w) {
  const Graph h = pattern_graph(w.pattern);
  MinorModel m;
  m.branch_sets.resize(h.num_vertices());
  for (int i = 0; i < h.num_vertices(); ++i) m.branch_sets[i].push_back(w.branch[i]);
  m.edge_realizers.assign(h.num_edges(), -1);
  for (std::size_t k = 0; k < w.paths.size(); ++k) {
    const auto [i, j] = w.pattern_edges[k];
    const auto& p = w.paths[k];
    for (std::size_t t = 0; t + 1 < p.size(); ++t) m.branch_sets[i].push_back(g.target(p[t]));
    for (EdgeId he = 0; he < h.num_edges(); ++he)
      if (std::minmax(h.edge(he).u, h.edge(he).v) == std::minmax(i, j)) m.edge_realizers[he] = dart_edge(p.back());
  }
  for (auto& s : m.branch_sets) std::sort(s.begin(), s.end());
  return m;
}

bool verify_minor_model(const Graph& g, const Graph& h, const MinorModel& m) {
  if (static_cast<int>(m.branch_sets.size()) != h.num_vertices()) return false;
  if (static_cast<int>(m.edge_realizers.size()) != h.num_edges()) return false;
  std::vector<int> owner(g.num_vertices(), -1);
  for (int i = 0; i < h.num_vertices(); ++i) {
    const auto& s = m.branch_sets[i];
    if (s.empty()) return false;
    for (VertexId v : s) {
      if (v < 0 || v >= g.num_vertices() || owner[v] != -1) return false;
      owner[v] = i;
    }
    // Connectivity inside the branch set.
    std::vector<bool> reached(g.num_vertices(), false);
    std::queue<VertexId> q;
    q.push(s.front());
    reached[s.front()] = true;
    std::size_t count = 1;
    while (!q.empty()) {
      const VertexId v = q.front();
      q.pop();
      for (VertexId x : g.neighbors(v))
        if (!reached[x] && owner[x] == i) {
          reached[x] = true;
          ++count;
          q.push(x);
        }
    }
    if (count != s.size()) return false;
  }
  std::set<EdgeId> used;
  for (EdgeId he = 0; he < h.num_edges(); ++he) {
    const EdgeId e = m.edge_realizers[he];
    if (e < 0 || e >= g.num_edges() || !used.insert(e).second) return false;
    const int a = owner[g.edge(e).u], b = owner[g.edge(e).v];
    if (std::minmax(a, b) != std::minmax(h.edge(he).u, h.edge(he).v)) return false;
  }
  return true;
}

namespace {

struct MinorSearch {
  const Graph& g;
  const Graph& h;
  bool partition = true;  // every vertex of g belongs to some branch set
  std::int64_t budget = 0;
  int k = 0;
  std::vector<VertexId> order;
  std::vector<int> label;       // -1 unassigned, k = discarded
  std::vector<int> set_size;
  std::vector<int> twin_prev;   // label that must be used before this one
  std::vector<std::vector<int>> need;  // h adjacency as matrix
  std::int64_t nodes = 0;

  bool connected_label(int l) const {
    VertexId start = kNoVertex;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (label[v] == l) {
        start = v;
        break;
      }
    std::vector<bool> seen(g.num_vertices(), false);
    std::vector<VertexId> stack{start};
    seen[start] = true;
    int count = 1;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (DartId d : g.darts_at(v)) {
        const VertexId x = g.target(d);
        if (!seen[x] && label[x] == l) {
          seen[x] = true;
          ++count;
          stack.push_back(x);
        }
      }
    }
    return count == set_size[l];
  }

  // A label is closed once no member has an unassigned neighbour; closed
  // sets are final and must be connected, and closed pairs must be joined.
  bool feasible(bool complete) const {
    std::vector<bool> closed(k, true);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      const int l = label[v];
      if (l < 0 || l >= k) continue;
      for (DartId d : g.darts_at(v))
        if (label[g.target(d)] < 0) closed[l] = false;
    }
    for (int l = 0; l < k; ++l) {
      if (set_size[l] == 0) {
        if (complete) return false;
        closed[l] = false;
        continue;
      }
      if (closed[l] && !connected_label(l)) return false;
    }
    std::vector<std::vector<bool>> joined(k, std::vector<bool>(k, false));
    for (const Edge& e : g.edges()) {
      const int a = label[e.u], b = label[e.v];
      if (a >= 0 && b >= 0 && a < k && b < k) joined[a][b] = joined[b][a] = true;
    }
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (need[a][b] && closed[a] && closed[b] && !joined[a][b]) return false;
    return true;
  }

  bool extend(std::size_t idx, int remaining_empty) {
    if (++nodes > budget) throw SizeGuardError("find_minor: search budget exhausted");
    if (idx == order.size()) return feasible(true);
    if (partition && static_cast<int>(order.size() - idx) < remaining_empty) return false;
    const VertexId v = order[idx];
    const int options = partition ? k : k + 1;
    for (int l = 0; l < options; ++l) {
      if (l < k && set_size[l] == 0 && twin_prev[l] >= 0 && set_size[twin_prev[l]] == 0) continue;
      label[v] = l;
      if (l < k) ++set_size[l];
      const int empty_after = remaining_empty - (l < k && set_size[l] == 1 ? 1 : 0);
      if (feasible(false) && extend(idx + 1, empty_after)) return true;
      if (l < k) --set_size[l];
      label[v] = -1;
    }
    return false;
  }
};

std::optional<MinorModel> minor_search(const Graph& g, const Graph& h, bool partition, std::int64_t budget) {
  const int k = h.num_vertices();
  if (k > g.num_vertices()) return std::nullopt;
  MinorSearch s{g, h, partition, budget};
  s.k = k;
  s.label.assign(g.num_vertices(), -1);
  s.set_size.assign(k, 0);
  s.need.assign(k, std::vector<int>(k, 0));
  for (const Edge& e : h.edges()) s.need[e.u][e.v] = s.need[e.v][e.u] = 1;
  // Twins (same neighbourhood apart from each other) are interchangeable,
  // so labels within a twin class are introduced in index order.
  s.twin_prev.assign(k, -1);
  if (h.is_simple()) {
    for (int b = 0; b < k; ++b)
      for (int a = b - 1; a >= 0; --a) {
        bool twins = true;
        for (int x = 0; x < k && twins; ++x)
          if (x != a && x != b && s.need[a][x] != s.need[b][x]) twins = false;
        if (twins) {
          s.twin_prev[b] = a;
          break;
        }
      }
  }
  std::vector<bool> seen(g.num_vertices(), false);
  for (VertexId r = 0; r < g.num_vertices(); ++r) {
    if (seen[r]) continue;
    std::queue<VertexId> q;
    q.push(r);
    seen[r] = true;
    while (!q.empty()) {
      const VertexId v = q.front();
      q.pop();
      s.order.push_back(v);
      for (VertexId x : g.neighbors(v))
        if (!seen[x]) {
          seen[x] = true;
          q.push(x);
        }
    }
  }
  if (!s.extend(0, k)) return std::nullopt;

  MinorModel m;
  m.branch_sets.resize(k);
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (s.label[v] >= 0 && s.label[v] < k) m.branch_sets[s.label[v]].push_back(v);
  std::set<EdgeId> used;
  for (const Edge& he : h.edges()) {
    EdgeId found = -1;
    for (EdgeId e = 0; e < g.num_edges() && found < 0; ++e) {
      const int a = s.label[g.edge(e).u], b = s.label[g.edge(e).v];
      if (std::minmax(a, b) == std::minmax(he.u, he.v) && !used.count(e)) found = e;
    }
    if (found < 0) return std::nullopt;
    used.insert(found);
    m.edge_realizers.push_back(found);
  }
  return m;
}

}  // namespace

std::optional<MinorModel> find_minor(const Graph& g, const Graph& h, const MinorSearchOptions& opts) {
  if (h.num_vertices() > opts.max_pattern_vertices)
    throw SizeGuardError("find_minor: pattern has more than " + std::to_string(opts.max_pattern_vertices) +
                         " vertices");
  if (h.num_vertices() == 0) return MinorModel{};
  if (!is_connected(h)) return minor_search(g, h, false, opts.node_budget);
  // A connected pattern sits inside one component, and a model there can
  // absorb every remaining vertex of that component.
  std::vector<int> comp;
  const int nc = components(g, {}, comp);
  for (int c = 0; c < nc; ++c) {
    std::vector<VertexId> keep;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (comp[v] == c) keep.push_back(v);
    const InducedSubgraph sub = induced_subgraph(g, keep);
    auto m = minor_search(sub.graph, h, true, opts.node_budget);
    if (!m) continue;
    for (auto& set : m->branch_sets)
      for (auto& v : set) v = sub.vertex_map[v];
    for (auto& e : m->edge_realizers) e = sub.edge_map[e];
    return m;
  }
  return std::nullopt;
}

std::vector<std::vector<DartId>> cyclic_orders(const std::vector<DartId>& darts) {
  if (darts.size() <= 1) return {darts};
  std::vector<DartId> rest(darts.begin() + 1, darts.end());
  std::sort(rest.begin(), rest.end());
  std::vector<std::vector<DartId>> out;
  do {
    std::vector<DartId> o{darts.front()};
    o.insert(o.end(), rest.begin(), rest.end());
    out.push_back(std::move(o));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

namespace {

struct RotationSearch {
  const Graph& g;
  const OrderChoices& choices;
  const std::function<bool(const RotationSystem&)>& visit;
  std::int64_t budget;
  std::vector<VertexId> order;
  std::vector<DartId> succ;
  std::vector<DartId> pred;
  std::vector<std::vector<std::vector<DartId>>> normalised;  // restricted vertices, rotated to start at darts_at[0]
  std::vector<bool> used;
  int faces_needed = 0;
  int min_face = 3;
  int slack = 0;
  int closed_faces = 0;
  int closed_darts = 0;
  std::int64_t nodes = 0;
  bool stop = false;

  // Length of the face through y if fixing the latest successor closed it.
  int closed_length(DartId y) const {
    int len = 0;
    DartId z = y;
    do {
      ++len;
      z = succ[reverse(z)];
      if (z < 0) return 0;
    } while (z != y);
    return len;
  }

  bool assign(DartId x, DartId y) {
    if (++nodes > budget) throw SizeGuardError("planar embedding search: budget exhausted");
    succ[x] = y;
    pred[y] = x;
    const int len = closed_length(y);
    if (len > 0) {
      ++closed_faces;
      closed_darts += len;
    }
    const int open = g.num_darts() - closed_darts;
    if (closed_faces + open / min_face < faces_needed) return false;
    const int bound = open_face_bound();
    return bound >= 0 && closed_faces + bound >= faces_needed;
  }

  // Open darts form chains under d -> succ(reverse(d)); every future face is
  // a union of chains with at least min_face darts, so a long chain yields
  // at most one face and short chains must pool together. Separately, the
  // darts by which faces exceed min_face are capped by 2E - min_face * F;
  // a chain that cannot close on itself needs at least one more dart.
  int open_face_bound() const {
    int long_chains = 0, short_darts = 0;
    int excess = closed_darts - min_face * closed_faces;
    for (DartId x = 0; x < g.num_darts(); ++x) {
      if (succ[x] >= 0) continue;
      // reverse(x) ends a chain; walk it backwards.
      int len = 0;
      DartId a = reverse(x);
      while (true) {
        ++len;
        const DartId p = pred_in_chain(a);
        if (p < 0) break;
        a = p;
      }
      if (len >= min_face) ++long_chains;
      else short_darts += len;
      const bool closable = g.source(a) == g.source(x);
      const int least = len + (min_face >= 2 && !closable ? 1 : 0);
      excess += std::max(0, least - min_face);
    }
    if (excess > slack) return -1;
    return long_chains + short_darts / min_face;
  }

  // The dart b with succ(reverse(b)) == a, if that successor is fixed.
  DartId pred_in_chain(DartId a) const { return pred[a] < 0 ? -1 : reverse(pred[a]); }

  void unassign(DartId x, DartId y) {
    const int len = closed_length(y);
    if (len > 0) {
      --closed_faces;
      closed_darts -= len;
    }
    succ[x] = -1;
    pred[y] = -1;
  }

  // Extends the cyclic order at order[idx]; `prefix` holds the darts placed
  // so far and `alive` the restricted candidates still consistent with it.
  void extend(std::size_t idx, std::vector<DartId>& prefix, const std::vector<int>& alive) {
    if (stop) return;
    if (idx == order.size()) {
      if (closed_faces != faces_needed) return;
      if (!visit(RotationSystem::from_successors(g, succ))) stop = true;
      return;
    }
    const VertexId v = order[idx];
    const auto& darts = g.darts_at(v);
    const bool restricted = choices[v].has_value();
    if (prefix.empty()) {
      prefix.push_back(darts[0]);
      used[darts[0]] = true;
      std::vector<int> all;
      if (restricted)
        for (std::size_t c = 0; c < normalised[v].size(); ++c) all.push_back(static_cast<int>(c));
      extend(idx, prefix, all);
      used[darts[0]] = false;
      prefix.clear();
      return;
    }
    const DartId last = prefix.back();
    if (prefix.size() == darts.size()) {
      std::vector<DartId> saved = std::move(prefix);
      if (assign(last, saved.front())) {
        std::vector<DartId> next;
        extend(idx + 1, next, {});
      }
      unassign(last, saved.front());
      prefix = std::move(saved);
      return;
    }
    std::vector<DartId> options;
    if (restricted) {
      for (int c : alive) options.push_back(normalised[v][c][prefix.size()]);
      std::sort(options.begin(), options.end());
      options.erase(std::unique(options.begin(), options.end()), options.end());
    } else {
      for (DartId d : darts)
        if (!used[d]) options.push_back(d);
    }
    for (DartId y : options) {
      if (stop) return;
      std::vector<int> next_alive;
      if (restricted)
        for (int c : alive)
          if (normalised[v][c][prefix.size()] == y) next_alive.push_back(c);
      if (assign(last, y)) {
        prefix.push_back(y);
        used[y] = true;
        extend(idx, prefix, next_alive);
        used[y] = false;
        prefix.pop_back();
      }
      unassign(last, y);
    }
  }
};

}  // namespace

void search_planar_rotations(const Graph& g, const OrderChoices& choices,
                             const std::function<bool(const RotationSystem&)>& visit, std::int64_t node_budget) {
  if (g.num_vertices() == 0) return;
  if (!is_connected(g)) throw ValidationError("planar embedding search: graph is not connected");
  if (static_cast<int>(choices.size()) != g.num_vertices())
    throw ValidationError("planar embedding search: one choice entry per vertex expected");
  if (g.num_edges() == 0) {
    // A single vertex: one face with no darts.
    visit(RotationSystem(g, std::vector<std::vector<DartId>>(g.num_vertices())));
    return;
  }
  RotationSearch s{g, choices, visit, node_budget};
  s.succ.assign(g.num_darts(), -1);
  s.pred.assign(g.num_darts(), -1);
  s.used.assign(g.num_darts(), false);
  s.faces_needed = g.num_edges() - g.num_vertices() + 2;
  // A lone edge bounds a face of length 2 even in a simple graph.
  s.min_face = g.is_simple() && g.num_edges() > 1 ? 3 : 1;
  if (s.min_face == 1) {
    bool loops = false;
    for (const Edge& e : g.edges()) loops |= e.u == e.v;
    if (!loops) s.min_face = 2;
  }
  s.slack = g.num_darts() - s.min_face * s.faces_needed;
  s.normalised.resize(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (!choices[v]) continue;
    const DartId first = g.darts_at(v)[0];
    std::set<std::vector<DartId>> distinct;
    for (auto o : *choices[v]) {
      if (o.size() != g.darts_at(v).size()) throw ValidationError("planar embedding search: bad candidate order");
      auto it = std::find(o.begin(), o.end(), first);
      if (it == o.end()) throw ValidationError("planar embedding search: bad candidate order");
      std::rotate(o.begin(), it, o.end());
      distinct.insert(std::move(o));
    }
    if (distinct.empty()) return;
    s.normalised[v].assign(distinct.begin(), distinct.end());
  }
  // Next vertex: fewest darts leading to unplaced vertices, so face chains
  // close early and high-degree hubs come last. Restricted vertices go first.
  const int n = g.num_vertices();
  std::vector<int> placed_nbrs(n, 0);
  std::vector<bool> placed(n, false);
  VertexId start = 0;
  for (VertexId v = 0; v < n; ++v)
    if (choices[v] && g.degree(v) > 0 &&
        (!choices[start] || s.normalised[v].size() < s.normalised[start].size()))
      start = v;
  VertexId next = start;
  for (int k = 0; k < n && next != kNoVertex; ++k) {
    placed[next] = true;
    if (g.degree(next) > 0) s.order.push_back(next);
    for (DartId d : g.darts_at(next)) ++placed_nbrs[g.target(d)];
    next = kNoVertex;
    for (VertexId v = 0; v < n; ++v) {
      if (placed[v] || placed_nbrs[v] == 0) continue;
      if (next == kNoVertex) {
        next = v;
        continue;
      }
      const auto key = [&](VertexId x) {
        return std::make_tuple(placed_nbrs[x] - g.degree(x), placed_nbrs[x], choices[x].has_value());
      };
      if (key(v) > key(next)) next = v;
    }
  }
  std::vector<DartId> prefix;
  s.extend(0, prefix, {});
}

std::vector<RotationSystem> enumerate_planar_embeddings(const Graph& g, const EmbeddingSearchOptions& opts) {
  std::set<RotationSystem> found;
  search_planar_rotations(
      g, OrderChoices(g.num_vertices()),
      [&](const RotationSystem& r) {
        if (opts.both_chiralities) {
          found.insert(r);
        } else {
          const RotationSystem m = r.reversed(g);
          found.insert(m < r ? m : r);
        }
        if (found.size() > opts.max_results) throw SizeGuardError("planar embedding search: too many embeddings");
        return true;
      },
      opts.node_budget);
  return {found.begin(), found.end()};
}

}  // namespace lfe
