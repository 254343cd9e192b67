#include "lfe/ends.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace lfe {

bool TruncatedGraph::is_boundary(VertexId v) const { return std::binary_search(boundary.begin(), boundary.end(), v); }

std::vector<bool> TruncatedGraph::boundary_mask() const {
  std::vector<bool> mask(graph.num_vertices(), false);
  for (VertexId v : boundary) mask[v] = true;
  return mask;
}

std::vector<VertexId> Exhaustion::to_deepest(int level) const {
  std::vector<VertexId> map(levels.at(level).graph.num_vertices());
  for (VertexId v = 0; v < static_cast<VertexId>(map.size()); ++v) {
    VertexId x = v;
    for (int i = level; i + 1 < static_cast<int>(levels.size()); ++i) x = inclusions[i][x];
    map[v] = x;
  }
  return map;
}

std::vector<EdgeId> Exhaustion::edge_inclusion(int level) const {
  const Graph& a = levels.at(level).graph;
  const Graph& b = levels.at(level + 1).graph;
  const auto& inc = inclusions.at(level);
  // Parallel copies are matched in order of appearance.
  std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> pool;
  for (EdgeId e = b.num_edges() - 1; e >= 0; --e) {
    const Edge& x = b.edge(e);
    pool[std::minmax(x.u, x.v)].push_back(e);
  }
  std::vector<EdgeId> out(a.num_edges(), -1);
  for (EdgeId e = 0; e < a.num_edges(); ++e) {
    auto& bucket = pool[std::minmax(inc[a.edge(e).u], inc[a.edge(e).v])];
    if (bucket.empty()) throw ValidationError("exhaustion: edge missing from the next level");
    out[e] = bucket.back();
    bucket.pop_back();
  }
  return out;
}

namespace {

TruncatedGraph level_from(const Graph& d, const std::vector<VertexId>& verts, int index) {
  const InducedSubgraph sub = induced_subgraph(d, verts);
  TruncatedGraph t;
  t.graph = sub.graph;
  t.level = index;
  std::vector<bool> in(d.num_vertices(), false);
  for (VertexId v : verts) in[v] = true;
  for (VertexId i = 0; i < static_cast<VertexId>(verts.size()); ++i)
    for (VertexId w : d.neighbors(verts[i]))
      if (!in[w]) {
        t.boundary.push_back(i);
        break;
      }
  return t;
}

}  // namespace

Exhaustion refine(const TruncatedGraph& deepest, const std::vector<std::vector<VertexId>>& level_vertices) {
  const Graph& d = deepest.graph;
  const int n = d.num_vertices();
  for (VertexId b : deepest.boundary)
    if (b < 0 || b >= n) throw ValidationError("refine: boundary vertex out of range");
  const std::vector<bool> dbound = deepest.boundary_mask();

  std::vector<std::vector<VertexId>> kept;
  std::vector<bool> prev(n, false);
  for (const auto& requested : level_vertices) {
    std::vector<bool> cur = prev;
    for (VertexId v : requested) {
      if (v < 0 || v >= n) throw ValidationError("refine: level vertex out of range");
      cur[v] = true;
    }
    for (VertexId v = 0; v < n; ++v)
      if (prev[v])
        for (VertexId w : d.neighbors(v)) cur[w] = true;
    // Absorb complement components that never reach the deepest boundary.
    std::vector<bool> removed = cur;
    std::vector<int> comp;
    const int nc = components(d, removed, comp);
    std::vector<bool> reaches(nc, false);
    for (VertexId v = 0; v < n; ++v)
      if (comp[v] >= 0 && dbound[v]) reaches[comp[v]] = true;
    for (VertexId v = 0; v < n; ++v)
      if (comp[v] >= 0 && !reaches[comp[v]]) cur[v] = true;

    bool touches_boundary = false, full = true, same = true, empty = true;
    for (VertexId v = 0; v < n; ++v) {
      touches_boundary |= cur[v] && dbound[v];
      full &= cur[v];
      same &= cur[v] == prev[v];
      empty &= !cur[v];
    }
    if (touches_boundary || full || same || empty) continue;
    std::vector<VertexId> verts;
    for (VertexId v = 0; v < n; ++v)
      if (cur[v]) verts.push_back(v);
    kept.push_back(std::move(verts));
    prev = cur;
  }

  Exhaustion ex;
  for (std::size_t i = 0; i < kept.size(); ++i) ex.levels.push_back(level_from(d, kept[i], static_cast<int>(i)));
  TruncatedGraph last = deepest;
  std::sort(last.boundary.begin(), last.boundary.end());
  last.boundary.erase(std::unique(last.boundary.begin(), last.boundary.end()), last.boundary.end());
  last.level = static_cast<int>(kept.size());
  ex.levels.push_back(std::move(last));
  kept.emplace_back(n);
  std::iota(kept.back().begin(), kept.back().end(), 0);

  for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
    std::vector<VertexId> pos(n, kNoVertex);
    for (VertexId j = 0; j < static_cast<VertexId>(kept[i + 1].size()); ++j) pos[kept[i + 1][j]] = j;
    std::vector<VertexId> inc;
    for (VertexId v : kept[i]) inc.push_back(pos[v]);
    ex.inclusions.push_back(std::move(inc));
  }
  return ex;
}

Exhaustion single_level(const TruncatedGraph& t) { return refine(t, {}); }

std::string check_exhaustion(const Exhaustion& ex) {
  if (ex.levels.empty()) return "no levels";
  if (ex.inclusions.size() + 1 != ex.levels.size()) return "inclusion count mismatch";
  const Graph& d = ex.deepest().graph;
  for (std::size_t i = 0; i + 1 < ex.levels.size(); ++i) {
    const Graph& a = ex.levels[i].graph;
    const Graph& b = ex.levels[i + 1].graph;
    const auto& inc = ex.inclusions[i];
    if (static_cast<int>(inc.size()) != a.num_vertices()) return "inclusion size mismatch at level " + std::to_string(i);
    std::set<VertexId> image;
    for (VertexId v = 0; v < a.num_vertices(); ++v) {
      if (inc[v] < 0 || inc[v] >= b.num_vertices()) return "inclusion out of range at level " + std::to_string(i);
      if (!image.insert(inc[v]).second) return "inclusion not injective at level " + std::to_string(i);
      if (a.label(v) != b.label(inc[v])) return "inclusion changes labels at level " + std::to_string(i);
    }
    for (const Edge& e : a.edges())
      if (b.edge_multiplicity(inc[e.u], inc[e.v]) < a.edge_multiplicity(e.u, e.v))
        return "inclusion drops an edge at level " + std::to_string(i);
    for (VertexId bv : ex.levels[i + 1].boundary)
      if (image.count(bv)) return "boundary of level " + std::to_string(i + 1) + " meets level " + std::to_string(i);
    const auto da = ex.to_deepest(static_cast<int>(i));
    const auto db = ex.to_deepest(static_cast<int>(i + 1));
    const std::set<VertexId> next(db.begin(), db.end());
    for (VertexId x : da)
      for (VertexId w : d.neighbors(x))
        if (!next.count(w)) return "neighbourhood of level " + std::to_string(i) + " escapes the next level";
  }
  return {};
}

WiredGraph wire(const TruncatedGraph& t) {
  if (t.boundary.empty()) throw ValidationError("wire: empty boundary; the graph is finite, use plain planarity");
  WiredGraph w;
  w.graph = t.graph;
  std::string label = kApexLabel;
  while (w.graph.find_label(label) != kNoVertex) label += "*";
  w.apex = w.graph.add_vertex(label);
  for (VertexId b : t.boundary) w.graph.add_edge(w.apex, b);
  return w;
}

std::vector<std::vector<VertexId>> cut_infinity(const Graph& g, const BlockCutTree& bct,
                                                const std::vector<VertexId>& boundary) {
  std::vector<bool> is_b(g.num_vertices(), false);
  for (VertexId b : boundary) is_b[b] = true;
  std::vector<std::vector<VertexId>> out(bct.num_blocks());
  for (int a = 0; a < bct.num_blocks(); ++a) {
    std::vector<bool> skip(g.num_edges(), false);
    for (EdgeId e : bct.block_edges[a]) skip[e] = true;
    for (VertexId v : bct.block_vertices[a]) {
      if (!bct.is_cut(v)) continue;
      std::vector<bool> seen(g.num_vertices(), false);
      std::queue<VertexId> q;
      q.push(v);
      seen[v] = true;
      bool reaches = false;
      while (!q.empty() && !reaches) {
        const VertexId x = q.front();
        q.pop();
        reaches = is_b[x];
        for (DartId d : g.darts_at(x)) {
          if (skip[dart_edge(d)]) continue;
          const VertexId y = g.target(d);
          if (!seen[y]) {
            seen[y] = true;
            q.push(y);
          }
        }
      }
      if (reaches) out[a].push_back(v);
    }
  }
  return out;
}

std::vector<int> core_by_deletion(const TutteTree& tt, const std::vector<int>& v_infinity) {
  const int n = static_cast<int>(tt.nodes.size());
  if (v_infinity.empty()) return {};
  std::vector<bool> alive(n, true), keep(n, false);
  for (int x : v_infinity) keep[x] = true;
  std::vector<int> degree(n, 0);
  for (const auto& e : tt.edges) {
    ++degree[e.a];
    ++degree[e.b];
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      if (!alive[x] || keep[x] || degree[x] > 1) continue;
      alive[x] = false;
      changed = true;
      for (const auto& e : tt.edges) {
        if (e.a == x && alive[e.b]) --degree[e.b];
        if (e.b == x && alive[e.a]) --degree[e.a];
      }
    }
  }
  std::vector<int> out;
  for (int x = 0; x < n; ++x)
    if (alive[x]) out.push_back(x);
  return out;
}

CoreMarking core(const TutteTree& tt, const std::vector<VertexId>& special, const std::vector<VertexId>& boundary) {
  CoreMarking m;
  m.special = special;
  std::sort(m.special.begin(), m.special.end());
  const std::set<VertexId> marks = [&] {
    std::set<VertexId> s(special.begin(), special.end());
    s.insert(boundary.begin(), boundary.end());
    return s;
  }();
  const int n = static_cast<int>(tt.nodes.size());
  for (int x = 0; x < n; ++x)
    for (VertexId v : tt.nodes[x].vertex_origin)
      if (marks.count(v)) {
        m.v_infinity.push_back(x);
        break;
      }
  if (m.v_infinity.empty()) return m;

  // Rooted at a V_inf node, the hull is every node whose subtree meets V_inf.
  std::vector<bool> in_v(n, false);
  for (int x : m.v_infinity) in_v[x] = true;
  std::vector<bool> in_hull(n, false);
  std::function<bool(int, int)> visit = [&](int x, int parent) {
    bool any = in_v[x];
    for (int y : tt.neighbours(x))
      if (y != parent) any = visit(y, x) || any;
    in_hull[x] = any;
    return any;
  };
  visit(m.v_infinity.front(), -1);
  for (int x = 0; x < n; ++x)
    if (in_hull[x]) m.core_nodes.push_back(x);
  if (m.core_nodes != core_by_deletion(tt, m.v_infinity))
    throw std::logic_error("core: convex hull and leaf deletion disagree");
  return m;
}

}  // namespace lfe
