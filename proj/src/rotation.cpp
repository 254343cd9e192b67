#include "lfe/rotation.hpp"

#include <algorithm>
#include <queue>

namespace lfe {

RotationSystem::RotationSystem(const Graph& g, std::vector<std::vector<DartId>> orders) : orders_(std::move(orders)) {
  if (static_cast<int>(orders_.size()) != g.num_vertices())
    throw ValidationError("rotation: expected one cyclic order per vertex");
  succ_.assign(g.num_darts(), -1);
  pred_.assign(g.num_darts(), -1);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto& ord = orders_[v];
    if (ord.size() != g.darts_at(v).size())
      throw ValidationError("rotation: order at vertex " + g.label(v) + " does not cover its darts");
    for (std::size_t i = 0; i < ord.size(); ++i) {
      const DartId d = ord[i];
      if (d < 0 || d >= g.num_darts() || g.source(d) != v)
        throw ValidationError("rotation: dart not leaving vertex " + g.label(v));
      if (succ_[d] != -1) throw ValidationError("rotation: repeated dart at vertex " + g.label(v));
      succ_[d] = ord[(i + 1) % ord.size()];
    }
  }
  for (DartId d = 0; d < g.num_darts(); ++d) pred_[succ_[d]] = d;
}

RotationSystem RotationSystem::from_successors(const Graph& g, const std::vector<DartId>& succ) {
  if (static_cast<int>(succ.size()) != g.num_darts()) throw ValidationError("rotation: successor table size");
  std::vector<std::vector<DartId>> orders(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto& ds = g.darts_at(v);
    if (ds.empty()) continue;
    DartId d = ds.front();
    do {
      orders[v].push_back(d);
      d = succ.at(d);
      if (orders[v].size() > ds.size()) throw ValidationError("rotation: successor table is not a single cycle");
    } while (d != ds.front());
  }
  return RotationSystem(g, std::move(orders));
}

RotationSystem RotationSystem::reversed(const Graph& g) const {
  auto orders = orders_;
  for (auto& o : orders) std::reverse(o.begin(), o.end());
  return RotationSystem(g, std::move(orders));
}

std::vector<std::vector<DartId>> RotationSystem::canonical_orders() const {
  auto out = orders_;
  for (auto& o : out)
    if (!o.empty()) std::rotate(o.begin(), std::min_element(o.begin(), o.end()), o.end());
  return out;
}

bool RotationSystem::operator==(const RotationSystem& other) const { return succ_ == other.succ_; }
bool RotationSystem::operator<(const RotationSystem& other) const { return succ_ < other.succ_; }

RotationSystem default_rotation(const Graph& g) {
  std::vector<std::vector<DartId>> orders(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) orders[v] = g.darts_at(v);
  return RotationSystem(g, std::move(orders));
}

std::vector<FaceWalk> trace_faces(const Graph& g, const RotationSystem& rot) {
  if (rot.num_vertices() != g.num_vertices()) throw ValidationError("trace_faces: rotation does not match graph");
  std::vector<FaceWalk> faces;
  std::vector<bool> used(g.num_darts(), false);
  // Scanning darts in increasing order makes each walk start at its least dart.
  for (DartId start = 0; start < g.num_darts(); ++start) {
    if (used[start]) continue;
    FaceWalk f;
    DartId d = start;
    do {
      used[d] = true;
      f.darts.push_back(d);
      d = rot.succ(reverse(d));
    } while (d != start);
    faces.push_back(std::move(f));
  }
  return faces;
}

std::vector<int> face_index_of_darts(const std::vector<FaceWalk>& faces, int num_darts) {
  std::vector<int> face_of(num_darts, -1);
  for (std::size_t i = 0; i < faces.size(); ++i)
    for (DartId d : faces[i].darts) face_of[d] = static_cast<int>(i);
  return face_of;
}

int euler_genus(const Graph& g, const RotationSystem& rot) {
  if (g.num_vertices() == 0) return 0;
  if (!is_connected(g)) throw ValidationError("euler_genus: graph is not connected");
  const int faces = g.num_edges() == 0 ? 1 : static_cast<int>(trace_faces(g, rot).size());
  const int chi = g.num_vertices() - g.num_edges() + faces;
  return (2 - chi) / 2;
}

std::vector<VertexId> face_vertices(const Graph& g, const FaceWalk& f) {
  std::vector<VertexId> out;
  out.reserve(f.darts.size());
  for (DartId d : f.darts) out.push_back(g.source(d));
  return out;
}

CycleSides cycle_sides(const Graph& g, const RotationSystem& rot, const std::vector<DartId>& cycle) {
  const int n = static_cast<int>(cycle.size());
  if (n == 0) throw ValidationError("cycle_sides: empty cycle");
  std::vector<int> pos(g.num_vertices(), -1);
  std::vector<bool> on_cycle_edge(g.num_edges(), false);
  for (int i = 0; i < n; ++i) {
    const DartId d = cycle[i];
    if (d < 0 || d >= g.num_darts()) throw ValidationError("cycle_sides: dart out of range");
    if (g.target(d) != g.source(cycle[(i + 1) % n])) throw ValidationError("cycle_sides: darts are not consecutive");
    if (on_cycle_edge[dart_edge(d)]) throw ValidationError("cycle_sides: cycle is not simple");
    on_cycle_edge[dart_edge(d)] = true;
    if (pos[g.source(d)] != -1) throw ValidationError("cycle_sides: cycle is not simple");
    pos[g.source(d)] = i;
  }
  if (euler_genus(g, rot) != 0) throw ValidationError("cycle_sides: rotation is not planar");

  CycleSides out;
  out.cycle = cycle;
  std::vector<int> dart_side(g.num_darts(), 0);  // +1 inside, -1 outside
  for (int i = 0; i < n; ++i) {
    const DartId from = reverse(cycle[(i + n - 1) % n]);
    const DartId to = cycle[i];
    int side = +1;
    for (DartId d = rot.succ(from); d != from; d = rot.succ(d)) {
      if (d == to) {
        side = -1;
        continue;
      }
      if (on_cycle_edge[dart_edge(d)]) continue;
      dart_side[d] = side;
      (side > 0 ? out.inside_darts : out.outside_darts).push_back(d);
      if (pos[g.target(d)] != -1) out.chords.push_back(d);
    }
  }

  std::vector<bool> removed(g.num_vertices(), false);
  for (DartId d : cycle) removed[g.source(d)] = true;
  std::vector<int> comp;
  const int ncomp = components(g, removed, comp);
  std::vector<int> comp_side(ncomp, 0);
  for (DartId d = 0; d < g.num_darts(); ++d) {
    if (dart_side[d] == 0) continue;
    const VertexId w = g.target(d);
    if (removed[w]) continue;
    int& s = comp_side[comp[w]];
    if (s != 0 && s != dart_side[d]) throw ValidationError("cycle_sides: component attaches on both sides");
    s = dart_side[d];
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (removed[v]) continue;
    const int s = comp_side[comp[v]];
    if (s > 0) out.inside.push_back(v);
    else if (s < 0) out.outside.push_back(v);
    else throw ValidationError("cycle_sides: graph is not connected");
  }
  return out;
}

namespace {

SubEmbedding build_sub(const Graph& g, const RotationSystem& rot, const std::vector<VertexId>& verts,
                       const std::vector<EdgeId>& edges) {
  SubEmbedding s;
  s.ambient_vertex.assign(g.num_vertices(), kNoVertex);
  s.ambient_edge.assign(g.num_edges(), -1);
  for (VertexId v : verts) {
    s.ambient_vertex[v] = s.graph.add_vertex(g.label(v));
    s.vertex_map.push_back(v);
  }
  for (EdgeId e : edges) {
    const Edge& ed = g.edge(e);
    s.ambient_edge[e] = s.graph.add_edge(s.ambient_vertex[ed.u], s.ambient_vertex[ed.v]);
    s.edge_map.push_back(e);
  }
  std::vector<std::vector<DartId>> orders(s.graph.num_vertices());
  for (VertexId i = 0; i < s.graph.num_vertices(); ++i)
    for (DartId d : rot.order(s.vertex_map[i])) {
      const DartId sd = s.to_sub(d);
      if (sd >= 0) orders[i].push_back(sd);
    }
  s.rot = RotationSystem(s.graph, std::move(orders));
  return s;
}

}  // namespace

SubEmbedding restrict_to_vertices(const Graph& g, const RotationSystem& rot, const std::vector<VertexId>& keep) {
  std::vector<bool> in(g.num_vertices(), false);
  for (VertexId v : keep) in[v] = true;
  std::vector<EdgeId> edges;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (in[g.edge(e).u] && in[g.edge(e).v]) edges.push_back(e);
  return build_sub(g, rot, keep, edges);
}

SubEmbedding restrict_to_edges(const Graph& g, const RotationSystem& rot, const std::vector<EdgeId>& keep) {
  std::vector<bool> in(g.num_vertices(), false);
  std::vector<VertexId> verts;
  for (EdgeId e : keep)
    for (VertexId v : {g.edge(e).u, g.edge(e).v})
      if (!in[v]) {
        in[v] = true;
        verts.push_back(v);
      }
  std::sort(verts.begin(), verts.end());
  return build_sub(g, rot, verts, keep);
}

int corner_face(const SubEmbedding& sub, const std::vector<int>& sub_face_of, const RotationSystem& ambient_rot,
                DartId d) {
  DartId a = ambient_rot.pred(d);
  while (a != d && sub.to_sub(a) < 0) a = ambient_rot.pred(a);
  if (a == d) return 0;
  // The corner just after sub-dart a is traversed by the face entering
  // s(d) along reverse(a).
  return sub_face_of[reverse(sub.to_sub(a))];
}

}  // namespace lfe
