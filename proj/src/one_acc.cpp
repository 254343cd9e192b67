#include "lfe/one_acc.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

#include "lfe/planarity.hpp"

namespace lfe {

namespace {

std::vector<VertexId> sorted_unique(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void require_planar(const Graph& g, const RotationSystem& rot) {
  if (rot.num_vertices() != g.num_vertices()) throw ValidationError("acc: rotation does not match the graph");
  if (!is_connected(g)) throw ValidationError("acc: the deepest level is disconnected");
  if (euler_genus(g, rot) != 0) throw ValidationError("acc: rotation is not planar");
}

/// Face indices incident to v; the single face of an edgeless graph is 0.
std::vector<int> incident_faces(const Graph& g, const std::vector<int>& face_of, VertexId v) {
  std::vector<int> out;
  for (DartId d : g.darts_at(v)) out.push_back(face_of[d]);
  if (out.empty()) out.push_back(0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

int face_cover_count(const Graph& g, const RotationSystem& rot, const std::vector<VertexId>& demands,
                     const std::vector<int>& preset, std::int64_t node_budget) {
  const auto faces = trace_faces(g, rot);
  const auto face_of = face_index_of_darts(faces, g.num_darts());
  const int nf = std::max<int>(1, static_cast<int>(faces.size()));
  std::vector<bool> on(nf, false);
  int base = 0;
  for (int f : preset) {
    if (f < 0 || f >= nf) throw ValidationError("face_cover_count: preset face out of range");
    if (!on[f]) ++base;
    on[f] = true;
  }
  std::vector<std::vector<int>> options;
  for (VertexId v : sorted_unique(demands)) {
    if (v < 0 || v >= g.num_vertices()) throw ValidationError("face_cover_count: demand out of range");
    auto inc = incident_faces(g, face_of, v);
    if (std::none_of(inc.begin(), inc.end(), [&](int f) { return on[f]; })) options.push_back(std::move(inc));
  }

  int best = static_cast<int>(options.size());
  std::int64_t nodes = 0;
  std::function<void(int)> branch = [&](int used) {
    if (++nodes > node_budget) throw SizeGuardError("face_cover_count: search budget exhausted");
    int pick = -1;
    for (int i = 0; i < static_cast<int>(options.size()); ++i) {
      const auto& o = options[i];
      if (std::any_of(o.begin(), o.end(), [&](int f) { return on[f]; })) continue;
      if (pick < 0 || o.size() < options[pick].size()) pick = i;
    }
    if (pick < 0) {
      best = std::min(best, used);
      return;
    }
    if (used + 1 >= best) return;
    for (int f : options[pick]) {
      on[f] = true;
      branch(used + 1);
      on[f] = false;
    }
  };
  branch(0);
  return base + best;
}

std::vector<int> covering_faces(const Graph& g, const RotationSystem& rot, const std::vector<VertexId>& demands) {
  const auto faces = trace_faces(g, rot);
  const auto face_of = face_index_of_darts(faces, g.num_darts());
  std::vector<int> common(std::max<std::size_t>(1, faces.size()));
  for (int f = 0; f < static_cast<int>(common.size()); ++f) common[f] = f;
  for (VertexId v : sorted_unique(demands)) {
    const auto inc = incident_faces(g, face_of, v);
    std::vector<int> next;
    std::set_intersection(common.begin(), common.end(), inc.begin(), inc.end(), std::back_inserter(next));
    common = std::move(next);
  }
  return common;
}

AccReport acc(const Exhaustion& ex, const RotationSystem& rot, const std::vector<VertexId>& special) {
  const TruncatedGraph& deep = ex.deepest();
  const Graph& d = deep.graph;
  require_planar(d, rot);
  const std::vector<VertexId> w = sorted_unique(special);
  for (VertexId v : w)
    if (v < 0 || v >= d.num_vertices()) throw ValidationError("acc: special vertex out of range");
  std::vector<bool> marked = deep.boundary_mask();
  std::vector<bool> is_special(d.num_vertices(), false);
  for (VertexId v : w) is_special[v] = marked[v] = true;

  AccReport r;
  const int k = static_cast<int>(ex.levels.size()) - 1;
  for (int i = 0; i < k; ++i) {
    const std::vector<VertexId> image = ex.to_deepest(i);
    std::vector<bool> in_h(d.num_vertices(), false);
    for (VertexId v : image) in_h[v] = true;
    const SubEmbedding sub = restrict_to_vertices(d, rot, image);
    const auto sub_faces = trace_faces(sub.graph, sub.rot);
    const auto sub_face_of = face_index_of_darts(sub_faces, sub.graph.num_darts());

    std::vector<int> comp;
    const int nc = components(d, in_h, comp);
    std::vector<bool> counts(nc, false), done(nc, false);
    for (VertexId v = 0; v < d.num_vertices(); ++v)
      if (comp[v] >= 0 && marked[v]) counts[comp[v]] = true;
    std::vector<int> forced;
    for (VertexId u : image)
      for (DartId x : d.darts_at(u)) {
        const int c = comp[d.target(x)];
        if (c < 0 || !counts[c] || done[c]) continue;
        done[c] = true;
        forced.push_back(corner_face(sub, sub_face_of, rot, x));
      }
    std::vector<VertexId> demands;
    for (VertexId v : w)
      if (in_h[v]) demands.push_back(sub.ambient_vertex[v]);
    r.per_level.push_back(face_cover_count(sub.graph, sub.rot, demands, forced));
  }
  std::vector<VertexId> demands = deep.boundary;
  demands.insert(demands.end(), w.begin(), w.end());
  r.per_level.push_back(face_cover_count(d, rot, demands));
  r.acc = *std::max_element(r.per_level.begin(), r.per_level.end());
  return r;
}

AccReport acc(const TruncatedGraph& t, const RotationSystem& rot, const std::vector<VertexId>& special) {
  return acc(single_level(t), rot, special);
}

InfiniteFace infinite_face(const TruncatedGraph& t, const RotationSystem& rot, const std::vector<VertexId>& special) {
  const Graph& g = t.graph;
  require_planar(g, rot);
  std::vector<VertexId> demands = t.boundary;
  demands.insert(demands.end(), special.begin(), special.end());
  demands = sorted_unique(demands);
  const int count = face_cover_count(g, rot, demands);
  if (count != 1) throw ValidationError("infinite_face: acc is " + std::to_string(count) + ", not 1");

  InfiniteFace out;
  out.candidates = covering_faces(g, rot, demands);
  out.face = out.candidates.front();
  if (g.num_edges() == 0) {
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      InfiniteRegion reg;
      reg.vertex = v;
      reg.escapes = demands;
      out.regions.push_back(reg);
    }
    return out;
  }
  const FaceWalk walk = trace_faces(g, rot)[out.face];
  std::vector<VertexId> escapes;
  for (DartId x : walk.darts)
    if (std::binary_search(demands.begin(), demands.end(), g.source(x))) escapes.push_back(g.source(x));
  escapes = sorted_unique(escapes);
  std::map<VertexId, InfiniteRegion> at;
  for (DartId e : walk.darts) {
    const VertexId x = g.target(e);
    auto it = at.find(x);
    if (it != at.end()) {
      ++it->second.occurrences;
      continue;
    }
    InfiniteRegion reg;
    reg.vertex = x;
    reg.in_dart = reverse(e);
    reg.out_dart = rot.succ(reg.in_dart);
    reg.walk = walk;
    reg.escapes = escapes;
    at.emplace(x, std::move(reg));
  }
  for (auto& [v, reg] : at) out.regions.push_back(std::move(reg));
  return out;
}

std::vector<InfiniteRegion> infinite_face_vertices(const TruncatedGraph& t, const RotationSystem& rot,
                                                   const std::vector<VertexId>& special) {
  return infinite_face(t, rot, special).regions;
}

RotationSystem node_restriction(const Graph& g, const TutteTree& tt, int node, const RotationSystem& rot) {
  const int n = static_cast<int>(tt.nodes.size());
  const TutteNode& nd = tt.nodes.at(node);
  std::vector<int> owner(g.num_edges(), -1);
  std::vector<EdgeId> local_edge(g.num_edges(), -1);
  for (int x = 0; x < n; ++x)
    for (EdgeId e = 0; e < tt.nodes[x].graph.num_edges(); ++e) {
      const EdgeId o = tt.nodes[x].edge_origin[e];
      if (o < 0) continue;
      owner[o] = x;
      if (x == node) local_edge[o] = e;
    }
  // First tree edge on the path from `node` to every other node.
  std::vector<int> first(n, -1);
  std::vector<bool> seen(n, false);
  std::queue<int> q;
  q.push(node);
  seen[node] = true;
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (int te = 0; te < static_cast<int>(tt.edges.size()); ++te) {
      const auto& e = tt.edges[te];
      if (e.a != x && e.b != x) continue;
      const int y = e.a == x ? e.b : e.a;
      if (seen[y]) continue;
      seen[y] = true;
      first[y] = x == node ? te : first[x];
      q.push(y);
    }
  }

  std::vector<std::vector<DartId>> orders(nd.graph.num_vertices());
  for (VertexId lv = 0; lv < nd.graph.num_vertices(); ++lv) {
    std::vector<DartId> seq;
    for (DartId x : rot.order(nd.vertex_origin[lv])) {
      const int beta = owner[dart_edge(x)];
      if (beta < 0) throw ValidationError("node_restriction: edge missing from the decomposition");
      EdgeId le = -1;
      if (beta == node) {
        le = local_edge[dart_edge(x)];
      } else {
        const auto& te = tt.edges[first[beta]];
        le = te.a == node ? te.edge_a : te.edge_b;
      }
      const Edge& e = nd.graph.edge(le);
      if (e.u != lv && e.v != lv) throw ValidationError("node_restriction: virtual edge misses the vertex");
      const DartId ld = make_dart(le, e.u == lv ? 0 : 1);
      if (seq.empty() || seq.back() != ld) seq.push_back(ld);
    }
    if (seq.size() > 1 && seq.front() == seq.back()) seq.pop_back();
    if (std::set<DartId>(seq.begin(), seq.end()).size() != seq.size())
      throw ValidationError("node_restriction: rotation splits the darts behind a virtual edge");
    orders[lv] = std::move(seq);
  }
  return RotationSystem(nd.graph, std::move(orders));
}

namespace {

struct BlockWork {
  InducedSubgraph sub;
  std::vector<DartId> gap;  // per local vertex: gap dart in the distinguished face, or -1
};

int uniform(std::mt19937_64& rng, int n) { return n <= 1 ? 0 : std::uniform_int_distribution<int>(0, n - 1)(rng); }

/// Graph plus an apex joined to each listed vertex; apex edges come last.
Graph with_apex(const Graph& g, const std::vector<VertexId>& attach) {
  Graph w = g;
  const VertexId a = w.add_vertex("apex");
  for (VertexId v : attach) w.add_edge(a, v);
  return w;
}

/// Rotation of g from one of g plus apex, apex darts dropped.
RotationSystem strip_apex(const Graph& g, const RotationSystem& wired) {
  std::vector<std::vector<DartId>> orders(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    for (DartId x : wired.order(v))
      if (dart_edge(x) < g.num_edges()) orders[v].push_back(x);
  return RotationSystem(g, std::move(orders));
}

bool general_bond(const TutteNode& nd) { return nd.tag == TutteTag::Bond && nd.graph.num_edges() > 3; }

void infinite_block(BlockChoice& bc, BlockWork& bw, std::mt19937_64& rng, const OneAccOptions& opts,
                    const std::vector<VertexId>& local_cut, const std::vector<VertexId>& local_bound,
                    const std::vector<VertexId>& local_demands) {
  const Graph& b = bw.sub.graph;
  if (b.num_edges() < 2) {
    bc.rotation = default_rotation(b);
    return;
  }
  const TutteTree tt = tutte_decomposition(b);
  const int n = static_cast<int>(tt.nodes.size());
  const CoreMarking cm = core(tt, local_cut, local_bound);
  bc.core_nodes = cm.core_nodes;
  std::vector<std::vector<RotationSystem>> pool(n);
  std::vector<std::vector<int>> mirror(n);
  for (int x = 0; x < n; ++x) {
    pool[x] = component_embeddings(tt.nodes[x]);
    const Graph& ng = tt.nodes[x].graph;
    for (const auto& r : pool[x]) {
      const RotationSystem m = r.reversed(ng);
      const auto it = std::find(pool[x].begin(), pool[x].end(), m);
      if (it == pool[x].end()) throw std::logic_error("component_embeddings is not closed under reflection");
      mirror[x].push_back(static_cast<int>(it - pool[x].begin()));
    }
  }
  const auto& cn = bc.core_nodes;
  std::size_t product = 1;
  for (int x : cn) {
    product *= pool[x].size();
    if (product > opts.max_core_combinations) break;
  }

  std::vector<int> choice(n, 0);
  auto compose = [&](const std::vector<int>& ch) {
    std::vector<RotationSystem> per(n);
    for (int x = 0; x < n; ++x) per[x] = pool[x][ch[x]];
    return compose_on(b, tt, per);
  };
  auto mirrored = [&](std::vector<int> ch) {
    for (int x : cn) ch[x] = mirror[x][ch[x]];
    return ch;
  };

  std::set<std::vector<int>> survivors;
  if (product <= opts.max_core_combinations) {
    bc.core_enumerated = true;
    std::vector<std::size_t> digit(cn.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < cn.size(); ++i) choice[cn[i]] = static_cast<int>(digit[i]);
      if (face_cover_count(b, compose(choice), local_demands) == 1) survivors.insert(choice);
      std::size_t i = 0;
      while (i < cn.size() && ++digit[i] == pool[cn[i]].size()) digit[i++] = 0;
      if (i == cn.size()) break;
    }
  } else {
    const PlanarityResult pr = is_planar(with_apex(b, local_demands));
    if (!pr.planar) throw ValidationError("random_one_acc_embedding: block admits no acc-1 embedding");
    const RotationSystem r = strip_apex(b, *pr.embedding);
    for (int x : cn) {
      const RotationSystem nr = node_restriction(b, tt, x, r);
      const auto it = std::find(pool[x].begin(), pool[x].end(), nr);
      if (it == pool[x].end()) throw std::logic_error("node rotation missing from component_embeddings");
      choice[x] = static_cast<int>(it - pool[x].begin());
    }
    survivors.insert(choice);
    survivors.insert(mirrored(choice));
  }
  if (survivors.empty()) throw ValidationError("random_one_acc_embedding: block admits no acc-1 embedding");
  for (const auto& s : survivors)
    if (!survivors.count(mirrored(s))) throw std::logic_error("acc-1 core embeddings not closed under reflection");
  const bool general = std::any_of(cn.begin(), cn.end(), [&](int x) { return general_bond(tt.nodes[x]); });
  bc.core_survivors = static_cast<int>(survivors.size());
  if (!general && bc.core_enumerated && survivors.size() > 2)
    throw std::logic_error("core dichotomy violated: more than one acc-1 mirror pair");

  std::vector<std::vector<int>> plus;  // one representative per mirror pair
  for (const auto& s : survivors)
    if (s <= mirrored(s)) plus.push_back(s);
  std::vector<int> pick = plus[uniform(rng, static_cast<int>(plus.size()))];
  bc.core_sign = opts.core_sign ? (*opts.core_sign < 0 ? -1 : 1)
                                : (std::bernoulli_distribution(0.5)(rng) ? 1 : -1);
  if (bc.core_sign < 0) pick = mirrored(pick);
  std::vector<bool> in_core(n, false);
  for (int x : cn) in_core[x] = true;
  for (int x = 0; x < n; ++x)
    if (!in_core[x]) pick[x] = uniform(rng, static_cast<int>(pool[x].size()));
  bc.node_choice = pick;
  bc.rotation = compose(pick);
}

}  // namespace

OneAccEmbedding random_one_acc_embedding(const Exhaustion& ex, std::uint64_t seed, const OneAccOptions& opts) {
  const TruncatedGraph& deep = ex.deepest();
  const Graph& g = deep.graph;
  if (!is_connected(g)) throw ValidationError("random_one_acc_embedding: the deepest level is disconnected");
  const Graph check = deep.boundary.empty() ? g : wire(deep).graph;
  if (!is_planar(check).planar) throw ValidationError("random_one_acc_embedding: the deepest level is not wired-planar");

  std::mt19937_64 rng(seed);
  OneAccEmbedding out;
  out.plan.seed = seed;
  const BlockCutTree bct = block_cut_tree(g);
  const auto cinf = cut_infinity(g, bct, deep.boundary);
  const std::vector<bool> dbound = deep.boundary_mask();
  std::vector<BlockWork> work(bct.num_blocks());

  for (int bi = 0; bi < bct.num_blocks(); ++bi) {
    BlockChoice bc;
    bc.block = bi;
    BlockWork& bw = work[bi];
    bw.sub = block_subgraph(g, bct, bi);
    const Graph& b = bw.sub.graph;
    const auto& vmap = bw.sub.vertex_map;
    bc.cut_infinity = cinf[bi];
    std::vector<VertexId> local_cut, local_bound;
    for (VertexId lv = 0; lv < b.num_vertices(); ++lv) {
      if (dbound[vmap[lv]]) local_bound.push_back(lv);
      if (std::binary_search(bc.cut_infinity.begin(), bc.cut_infinity.end(), vmap[lv])) local_cut.push_back(lv);
    }
    std::vector<VertexId> local_demands = local_cut;
    local_demands.insert(local_demands.end(), local_bound.begin(), local_bound.end());
    local_demands = sorted_unique(local_demands);
    for (VertexId lv : local_demands) bc.demands.push_back(vmap[lv]);
    bw.gap.assign(b.num_vertices(), -1);

    EmbeddingSearchOptions eo;
    eo.both_chiralities = true;
    eo.node_budget = opts.node_budget;
    eo.max_results = opts.max_wired_embeddings;
    if (local_bound.empty()) {
      bc.kind = BlockKind::Finite;
      if (local_cut.empty()) {
        const auto pool = enumerate_planar_embeddings(b, eo);
        bc.wired_embeddings = static_cast<int>(pool.size());
        bc.wired_choice = uniform(rng, bc.wired_embeddings);
        bc.rotation = pool[bc.wired_choice];
      } else {
        const Graph bwired = with_apex(b, local_cut);
        const auto pool = enumerate_planar_embeddings(bwired, eo);
        if (pool.empty()) throw ValidationError("random_one_acc_embedding: wired block is not planar");
        bc.wired_embeddings = static_cast<int>(pool.size());
        bc.wired_choice = uniform(rng, bc.wired_embeddings);
        const RotationSystem& wr = pool[bc.wired_choice];
        bc.rotation = strip_apex(b, wr);
        // The gap at c is the corner that held the apex dart.
        for (VertexId c : local_cut) {
          const auto& o = wr.order(c);
          const auto at = std::find_if(o.begin(), o.end(), [&](DartId x) { return dart_edge(x) >= b.num_edges(); });
          DartId prev = *at;
          for (std::size_t k = 1; dart_edge(prev) >= b.num_edges(); ++k)
            prev = o[(static_cast<std::size_t>(at - o.begin()) + o.size() - k) % o.size()];
          bw.gap[c] = prev;
        }
        const auto faces = trace_faces(b, bc.rotation);
        const auto face_of = face_index_of_darts(faces, b.num_darts());
        bc.distinguished_face = face_of[reverse(bw.gap[local_cut.front()])];
        for (VertexId c : local_cut)
          if (face_of[reverse(bw.gap[c])] != bc.distinguished_face)
            throw std::logic_error("wired block: apex corners fall in different faces");
      }
    } else {
      bc.kind = BlockKind::Infinite;
      infinite_block(bc, bw, rng, opts, local_cut, local_bound, local_demands);
      const auto cands = covering_faces(b, bc.rotation, local_demands);
      if (cands.empty() || face_cover_count(b, bc.rotation, local_demands) != 1)
        throw std::logic_error("infinite block: chosen embedding has acc above 1");
      bc.distinguished_face = cands[uniform(rng, static_cast<int>(cands.size()))];
      if (b.num_edges() > 0) {
        const FaceWalk walk = trace_faces(b, bc.rotation)[bc.distinguished_face];
        for (DartId e : walk.darts) {
          const VertexId x = b.target(e);
          if (bw.gap[x] < 0) bw.gap[x] = reverse(e);
        }
      }
    }
    out.plan.blocks.push_back(std::move(bc));
  }

  auto to_deep = [&](int bi, DartId ld) {
    return make_dart(work[bi].sub.edge_map[dart_edge(ld)], dart_polarity(ld));
  };
  auto local_of = [&](int bi, VertexId v) {
    const auto& vm = work[bi].sub.vertex_map;
    return static_cast<VertexId>(std::lower_bound(vm.begin(), vm.end(), v) - vm.begin());
  };

  std::vector<std::vector<DartId>> orders(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto& blocks = bct.blocks_at[v];
    if (blocks.size() == 1) {
      const int bi = blocks.front();
      for (DartId x : out.plan.blocks[bi].rotation.order(local_of(bi, v))) orders[v].push_back(to_deep(bi, x));
      continue;
    }
    if (blocks.empty()) continue;
    CutVertexChoice cv;
    cv.vertex = v;
    std::vector<std::vector<DartId>> opened;
    for (int bi : blocks) {
      const VertexId lv = local_of(bi, v);
      const auto& o = out.plan.blocks[bi].rotation.order(lv);
      const bool designated = std::binary_search(cinf[bi].begin(), cinf[bi].end(), v) && work[bi].gap[lv] >= 0;
      const std::size_t k = designated ? static_cast<std::size_t>(std::find(o.begin(), o.end(), work[bi].gap[lv]) - o.begin())
                                       : static_cast<std::size_t>(uniform(rng, static_cast<int>(o.size())));
      std::vector<DartId> seq;
      for (std::size_t j = 1; j <= o.size(); ++j) seq.push_back(to_deep(bi, o[(k + j) % o.size()]));
      opened.push_back(std::move(seq));
    }
    std::vector<int> perm(blocks.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    for (int i : perm) {
      cv.block_order.push_back(blocks[i]);
      cv.gap_after.push_back(opened[i].back());
      orders[v].insert(orders[v].end(), opened[i].begin(), opened[i].end());
    }
    cv.order = orders[v];
    out.plan.cuts.push_back(std::move(cv));
  }

  out.rotation = RotationSystem(g, std::move(orders));
  if (euler_genus(g, out.rotation) != 0) throw std::logic_error("random_one_acc_embedding: glued rotation is not planar");
  out.report = acc(ex, out.rotation);
  const int expected = deep.boundary.empty() ? 0 : 1;
  if (out.report.per_level.back() != expected || out.report.acc > 1)
    throw std::logic_error("random_one_acc_embedding: output has more than one accumulation point");
  return out;
}

}  // namespace lfe
