#include "lfe/embeddability.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

namespace lfe {

std::string to_string(LevelVerdict v) { return v == LevelVerdict::Obstructed ? "obstructed" : "embeddable-so-far"; }

std::string to_string(ChainStatus s) {
  switch (s) {
    case ChainStatus::Ok: return "ok";
    case ChainStatus::ExhaustionTooSmall: return "exhaustion-too-small";
    case ChainStatus::Obstructed: return "obstructed";
    case ChainStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

namespace {

// Components of the subgraph of g induced on `verts`.
std::vector<std::vector<VertexId>> induced_components(const Graph& g, const std::vector<VertexId>& verts) {
  std::vector<bool> removed(g.num_vertices(), true);
  for (VertexId v : verts) removed[v] = false;
  std::vector<int> comp;
  const int nc = components(g, removed, comp);
  std::vector<std::vector<VertexId>> out(nc);
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (comp[v] >= 0) out[comp[v]].push_back(v);
  return out;
}

}  // namespace

std::string verify_star_minor(const TruncatedGraph& deepest, const StarMinorWitness& w) {
  const Graph& g = deepest.graph;
  const Graph h = pattern_graph(w.pattern);
  const int n = h.num_vertices();
  if (static_cast<int>(w.finite_branch_sets.size()) != n) return "wrong number of branch sets";
  if (w.apex_vertex < 0 || w.apex_vertex >= n) return "apex vertex out of range";
  std::vector<int> owner(g.num_vertices(), -1);
  auto claim = [&](VertexId v, int who) -> std::string {
    if (v < 0 || v >= g.num_vertices()) return "vertex out of range";
    if (owner[v] != -1) return "branch sets overlap at " + g.label(v);
    owner[v] = who;
    return {};
  };
  for (int k = 0; k < n; ++k) {
    const auto& set = w.finite_branch_sets[k];
    if (k == w.apex_vertex) {
      if (!set.empty()) return "apex has a finite branch set";
      continue;
    }
    if (set.empty()) return "empty branch set";
    for (VertexId v : set)
      if (auto err = claim(v, k); !err.empty()) return err;
    if (induced_components(g, set).size() != 1) return "branch set " + std::to_string(k) + " is not connected";
  }
  // An empty infinity part is allowed at the deepest level, where every
  // apex edge then leaves the truncation.
  for (VertexId v : w.infinity_part)
    if (auto err = claim(v, w.apex_vertex); !err.empty()) return err;
  for (const auto& c : induced_components(g, w.infinity_part))
    if (std::none_of(c.begin(), c.end(), [&](VertexId v) { return deepest.is_boundary(v); }))
      return "infinity part has a component that does not reach the boundary";
  if (static_cast<int>(w.edge_realizers.size()) != h.num_edges()) return "wrong number of edge realizers";
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const int a = h.edge(e).u, b = h.edge(e).v;
    const auto [x, y] = w.edge_realizers[e];
    if (x < 0 || x >= g.num_vertices()) return "realizer out of range";
    if (y == kNoVertex) {
      const int other = a == w.apex_vertex ? b : (b == w.apex_vertex ? a : -1);
      if (other < 0) return "edge to infinity on a pattern edge away from the apex";
      if (owner[x] != other || !deepest.is_boundary(x)) return "edge to infinity does not start at a boundary vertex";
      continue;
    }
    if (y < 0 || y >= g.num_vertices() || !g.has_edge(x, y)) return "realizer is not an edge";
    const bool fits = (owner[x] == a && owner[y] == b) || (owner[x] == b && owner[y] == a);
    if (!fits) return "realizer of pattern edge " + std::to_string(e) + " joins the wrong sets";
  }
  return {};
}

namespace {
constexpr int kK5SearchMaxVertices = 24;
constexpr std::int64_t kK5SearchBudget = 2'000'000;
}  // namespace

StarMinorWitness star_minor_witness(const Exhaustion& ex, int level) {
  if (level < 0 || level >= static_cast<int>(ex.levels.size())) throw ValidationError("witness: level out of range");
  const TruncatedGraph& t = ex.levels[level];
  const WiredGraph wired = wire(t);
  const Graph& wg = wired.graph;
  const PlanarityResult pr = is_planar(wg);
  if (pr.planar) throw ValidationError("witness: level " + std::to_string(level) + " is not obstructed");
  MinorModel model = to_minor_model(wg, *pr.witness);
  KuratowskiPattern pattern = pr.witness->pattern;
  // A K5 model is reported whenever a bounded exact search finds one.
  if (pattern != KuratowskiPattern::K5 && wg.num_vertices() <= kK5SearchMaxVertices) {
    MinorSearchOptions mo;
    mo.node_budget = kK5SearchBudget;
    try {
      if (auto k5 = find_minor(wg, pattern_graph(KuratowskiPattern::K5), mo)) {
        model = std::move(*k5);
        pattern = KuratowskiPattern::K5;
      }
    } catch (const SizeGuardError&) {
    }
  }
  const VertexId p = wired.apex;

  std::vector<int> owner(wg.num_vertices(), -1);
  for (int k = 0; k < static_cast<int>(model.branch_sets.size()); ++k)
    for (VertexId v : model.branch_sets[k]) owner[v] = k;
  if (owner[p] < 0) {
    // Grow the first branch set met from p through unused vertices.
    std::vector<VertexId> region{p};
    std::vector<bool> seen(wg.num_vertices(), false);
    seen[p] = true;
    int target = -1;
    for (std::size_t i = 0; i < region.size(); ++i)
      for (VertexId y : wg.neighbors(region[i])) {
        if (owner[y] >= 0) {
          if (target < 0 || owner[y] < target) target = owner[y];
        } else if (!seen[y]) {
          seen[y] = true;
          region.push_back(y);
        }
      }
    if (target < 0) throw std::logic_error("witness: wired graph is disconnected");
    for (VertexId v : region) {
      owner[v] = target;
      model.branch_sets[target].push_back(v);
    }
  }
  const int apex = owner[p];

  const std::vector<VertexId> to_d = ex.to_deepest(level);
  const TruncatedGraph& deepest = ex.deepest();
  const Graph& d = deepest.graph;
  const bool is_last = level + 1 == static_cast<int>(ex.levels.size());
  std::vector<bool> in_level(d.num_vertices(), false);
  for (VertexId x : to_d) in_level[x] = true;

  StarMinorWitness w;
  w.pattern = pattern;
  w.level = level;
  w.apex_vertex = apex;
  w.finite_branch_sets.resize(model.branch_sets.size());
  for (int k = 0; k < static_cast<int>(model.branch_sets.size()); ++k) {
    for (VertexId v : model.branch_sets[k]) {
      if (v == p) continue;
      (k == apex ? w.infinity_part : w.finite_branch_sets[k]).push_back(to_d[v]);
    }
    std::sort(w.finite_branch_sets[k].begin(), w.finite_branch_sets[k].end());
  }
  if (!is_last)
    for (VertexId x = 0; x < d.num_vertices(); ++x)
      if (!in_level[x]) w.infinity_part.push_back(x);
  std::sort(w.infinity_part.begin(), w.infinity_part.end());
  w.infinity_components = induced_components(d, w.infinity_part);

  for (EdgeId r : model.edge_realizers) {
    VertexId a = wg.edge(r).u, b = wg.edge(r).v;
    if (a == p) std::swap(a, b);
    if (b != p) {
      w.edge_realizers.emplace_back(to_d[a], to_d[b]);
      continue;
    }
    // The wired edge a-p continues out of the level through a's outside neighbour.
    VertexId out = kNoVertex;
    if (!is_last)
      for (VertexId y : d.neighbors(to_d[a]))
        if (!in_level[y]) {
          out = y;
          break;
        }
    w.edge_realizers.emplace_back(to_d[a], out);
  }

  if (auto err = verify_star_minor(deepest, w); !err.empty())
    throw std::logic_error("witness failed verification: " + err);
  return w;
}

DartId map_dart(const Exhaustion& ex, int level, const std::vector<EdgeId>& edge_inc, DartId d) {
  const Graph& a = ex.levels[level].graph;
  const Graph& b = ex.levels[level + 1].graph;
  const EdgeId e = edge_inc[dart_edge(d)];
  const VertexId src = ex.inclusions[level][a.source(d)];
  if (b.edge(e).u == b.edge(e).v) return make_dart(e, dart_polarity(d));
  return make_dart(e, b.edge(e).u == src ? 0 : 1);
}

namespace {

// Every cyclic order that keeps `base` and puts the darts of `fresh` into
// the gaps after the positions flagged in `open_gap`.
std::vector<std::vector<DartId>> extensions(const std::vector<DartId>& base, const std::vector<bool>& open_gap,
                                            std::vector<DartId> fresh) {
  if (fresh.empty()) return {base};
  if (base.empty()) return cyclic_orders(fresh);
  std::vector<int> gaps;
  for (int k = 0; k < static_cast<int>(base.size()); ++k)
    if (open_gap[k]) gaps.push_back(k);
  std::vector<std::vector<DartId>> out;
  if (gaps.empty()) return out;
  std::sort(fresh.begin(), fresh.end());
  do {
    // Split the permutation into consecutive runs, one per open gap.
    std::vector<int> cut(gaps.size(), 0);
    std::function<void(std::size_t, int)> place = [&](std::size_t gi, int left) {
      if (gi + 1 == gaps.size()) {
        cut[gi] = left;
        std::vector<DartId> order;
        int taken = 0;
        std::size_t g = 0;
        for (int k = 0; k < static_cast<int>(base.size()); ++k) {
          order.push_back(base[k]);
          if (g < gaps.size() && gaps[g] == k) {
            for (int j = 0; j < cut[g]; ++j) order.push_back(fresh[taken++]);
            ++g;
          }
        }
        out.push_back(std::move(order));
        return;
      }
      for (int c = 0; c <= left; ++c) {
        cut[gi] = c;
        place(gi + 1, left - c);
      }
    };
    place(0, static_cast<int>(fresh.size()));
  } while (std::next_permutation(fresh.begin(), fresh.end()));
  return out;
}

struct ChainSearch {
  const Exhaustion& ex;
  std::int64_t budget;
  std::vector<RotationSystem> chosen;
  std::vector<int> face_of_level;
  std::vector<std::vector<EdgeId>> edge_inc;
  std::int64_t tried = 0;

  // Rotation of the level without p, and the face p sat in.
  std::pair<RotationSystem, int> strip(int level, const RotationSystem& r) const {
    const TruncatedGraph& t = ex.levels[level];
    const Graph& g = t.graph;
    std::vector<std::vector<DartId>> orders(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      for (DartId x : r.order(v))
        if (dart_edge(x) < g.num_edges()) orders[v].push_back(x);
    RotationSystem rot(g, std::move(orders));
    if (g.num_edges() == 0) return {rot, -1};
    const auto faces = trace_faces(g, rot);
    const auto face_of = face_index_of_darts(faces, g.num_darts());
    if (t.boundary.empty()) return {rot, 0};
    for (VertexId b : t.boundary) {
      if (g.degree(b) == 0) continue;
      for (DartId x : r.order(b))
        if (dart_edge(x) >= g.num_edges()) {
          return {rot, face_of[reverse(r.pred(x))]};
        }
    }
    return {rot, 0};
  }

  OrderChoices constraints(int level, const Graph& wg) const {
    OrderChoices choices(wg.num_vertices());
    if (level == 0) return choices;
    const int prev = level - 1;
    const Graph& pg = ex.levels[prev].graph;
    const RotationSystem& pr = chosen[prev];
    std::vector<bool> in_face(pg.num_darts(), false);
    if (pg.num_edges() > 0) {
      const auto faces = trace_faces(pg, pr);
      for (DartId x : faces[face_of_level[prev]].darts) in_face[x] = true;
    }
    for (VertexId v = 0; v < pg.num_vertices(); ++v) {
      const VertexId u = ex.inclusions[prev][v];
      std::vector<DartId> base;
      std::vector<bool> open;
      std::set<DartId> mapped;
      for (DartId x : pr.order(v)) {
        base.push_back(map_dart(ex, prev, edge_inc[prev], x));
        mapped.insert(base.back());
        open.push_back(in_face[reverse(x)]);
      }
      std::vector<DartId> fresh;
      for (DartId x : wg.darts_at(u))
        if (!mapped.count(x)) fresh.push_back(x);
      choices[u] = extensions(base, open, fresh);
    }
    return choices;
  }

  bool descend(int level) {
    const TruncatedGraph& t = ex.levels[level];
    const bool has_boundary = !t.boundary.empty();
    const Graph wg = has_boundary ? wire(t).graph : t.graph;
    const OrderChoices choices = constraints(level, wg);
    bool found = false;
    search_planar_rotations(
        wg, choices,
        [&](const RotationSystem& r) {
          ++tried;
          auto [rot, face] = strip(level, r);
          chosen.push_back(std::move(rot));
          face_of_level.push_back(face);
          if (level + 1 == static_cast<int>(ex.levels.size()) || descend(level + 1)) {
            found = true;
            return false;
          }
          chosen.pop_back();
          face_of_level.pop_back();
          return true;
        },
        budget);
    return found;
  }
};

}  // namespace

CoherentChain coherent_embedding(const Exhaustion& ex, std::int64_t node_budget) {
  CoherentChain out;
  for (const auto& t : ex.levels)
    if (!t.boundary.empty() && !is_planar(wire(t).graph).planar) {
      out.status = ChainStatus::Obstructed;
      return out;
    }
  ChainSearch s{ex, node_budget, {}, {}, {}};
  for (int i = 0; i + 1 < static_cast<int>(ex.levels.size()); ++i) s.edge_inc.push_back(ex.edge_inclusion(i));
  try {
    const bool ok = s.descend(0);
    out.status = ok ? ChainStatus::Ok : ChainStatus::ExhaustionTooSmall;
    if (ok) {
      out.rotations = std::move(s.chosen);
      out.infinite_face = std::move(s.face_of_level);
    }
  } catch (const SizeGuardError&) {
    out.status = ChainStatus::BudgetExceeded;
  }
  out.embeddings_tried = s.tried;
  return out;
}

EmbeddabilityReport locally_finite_embeddable(const Exhaustion& ex, const EmbeddabilityOptions& opts) {
  EmbeddabilityReport rep;
  for (int i = 0; i < static_cast<int>(ex.levels.size()); ++i) {
    const TruncatedGraph& t = ex.levels[i];
    const Graph g = t.boundary.empty() ? t.graph : wire(t).graph;
    const bool ok = is_planar(g).planar;
    rep.verdicts.push_back(ok ? LevelVerdict::EmbeddableSoFar : LevelVerdict::Obstructed);
    if (!ok && rep.first_obstructed < 0) rep.first_obstructed = i;
  }
  if (rep.first_obstructed >= 0) {
    if (opts.build_witness && !ex.levels[rep.first_obstructed].boundary.empty())
      rep.witness = star_minor_witness(ex, rep.first_obstructed);
  } else if (opts.build_chain) {
    rep.chain = coherent_embedding(ex, opts.node_budget);
  }
  return rep;
}

}  // namespace lfe
