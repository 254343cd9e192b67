#include "lfe/harness.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <set>

#include <boost/math/special_functions/gamma.hpp>

#include "lfe/decomposition.hpp"
#include "lfe/one_acc.hpp"

namespace lfe {

namespace {

constexpr double kTwoPi = 6.283185307179586;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t h, std::uint64_t x) { return splitmix64(h ^ splitmix64(x)); }

std::vector<int> bfs(const Graph& g, const std::vector<VertexId>& sources) {
  std::vector<int> dist(g.num_vertices(), -1);
  std::deque<VertexId> queue;
  for (VertexId s : sources) {
    if (dist[s] == 0) continue;
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (DartId d : g.darts_at(v)) {
      const VertexId w = g.target(d);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

int darts_between(const Graph& g, VertexId o, VertexId u) {
  int k = 0;
  for (DartId d : g.darts_at(o))
    if (g.target(d) == u) ++k;
  return k;
}

int face_length(const RotationSystem& rot, DartId d) {
  int len = 0;
  DartId x = d;
  do {
    x = rot.succ(reverse(x));
    ++len;
  } while (x != d);
  return len;
}

double block_minimum(const Graph& g, VertexId o, VertexId u) {
  const BlockCutTree bct = block_cut_tree(g);
  const auto& mine = bct.blocks_at[o];
  if (mine.empty()) return o == u ? 1.0 : 0.0;
  // Key built from degrees only, so it survives any renaming.
  auto key = [&](VertexId v) {
    std::vector<int> nd;
    for (DartId d : g.darts_at(v)) nd.push_back(g.degree(g.target(d)));
    std::sort(nd.begin(), nd.end());
    return std::make_pair(g.degree(v), nd);
  };
  double pay = 0;
  for (int b : mine) {
    const auto& verts = bct.block_vertices[b];
    if (!std::binary_search(verts.begin(), verts.end(), u)) continue;
    auto best = key(verts.front());
    int ties = 0;
    for (VertexId v : verts) {
      auto k = key(v);
      if (k < best) {
        best = std::move(k);
        ties = 1;
      } else if (k == best) {
        ++ties;
      }
    }
    if (key(u) == best) pay += 1.0 / (static_cast<double>(mine.size()) * ties);
  }
  return pay;
}

std::vector<PaymentFunction> build_corpus() {
  std::vector<PaymentFunction> c;
  c.push_back({"adjacency", 1, false, false,
               [](const Graph& g, const Decoration&, VertexId o, VertexId u) {
                 return static_cast<double>(darts_between(g, o, u));
               }});
  c.push_back({"degree_share", 1, false, false,
               [](const Graph& g, const Decoration&, VertexId o, VertexId u) {
                 return g.degree(o) == 0 ? 0.0 : static_cast<double>(darts_between(g, o, u)) / g.degree(o);
               }});
  c.push_back({"block_minimum", -1, false, false,
               [](const Graph& g, const Decoration&, VertexId o, VertexId u) { return block_minimum(g, o, u); }});
  c.push_back({"distance_weight", 2, false, false,
               [](const Graph& g, const Decoration&, VertexId o, VertexId u) {
                 const int d = bfs(g, {o})[u];
                 return d >= 0 && d <= 2 ? 1.0 / (1 + d) : 0.0;
               }});
  c.push_back({"corner_triangles", 2, true, false,
               [](const Graph& g, const Decoration& deco, VertexId o, VertexId u) {
                 double k = 0;
                 for (DartId d : g.darts_at(o))
                   if (g.target(d) == u && face_length(*deco.rotation, d) == 3) k += 1;
                 return k;
               }});
  c.push_back({"subset_boundary", 1, false, true,
               [](const Graph& g, const Decoration& deco, VertexId o, VertexId u) {
                 const auto& s = *deco.subset;
                 return s[o] && !s[u] ? static_cast<double>(darts_between(g, o, u)) : 0.0;
               }});
  return c;
}

void require_decoration(const Graph& g, const PaymentFunction& f, const Decoration& d) {
  if (f.needs_rotation && !d.rotation) throw ValidationError(f.name + ": needs a rotation decoration");
  if (f.needs_subset && (!d.subset || static_cast<int>(d.subset->size()) != g.num_vertices()))
    throw ValidationError(f.name + ": needs a subset decoration");
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) { return splitmix64(master + splitmix64(stream)); }

DecoratedBall decorated_ball(const Graph& g, const Decoration& d, const std::vector<VertexId>& centres, int radius) {
  const std::vector<int> dist = bfs(g, centres);
  std::vector<VertexId> keep;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (dist[v] >= 0 && (radius < 0 || dist[v] <= radius)) keep.push_back(v);
  DecoratedBall b;
  if (d.rotation) {
    SubEmbedding sub = restrict_to_vertices(g, *d.rotation, keep);
    b.graph = std::move(sub.graph);
    b.decoration.rotation = std::move(sub.rot);
    b.vertex_map = std::move(sub.vertex_map);
  } else {
    InducedSubgraph sub = induced_subgraph(g, keep);
    b.graph = std::move(sub.graph);
    b.vertex_map = std::move(sub.vertex_map);
  }
  b.local.assign(g.num_vertices(), kNoVertex);
  for (VertexId i = 0; i < static_cast<VertexId>(b.vertex_map.size()); ++i) b.local[b.vertex_map[i]] = i;
  if (d.subset) {
    std::vector<bool> s;
    for (VertexId v : b.vertex_map) s.push_back((*d.subset)[v]);
    b.decoration.subset = std::move(s);
  }
  return b;
}

const std::vector<PaymentFunction>& payment_corpus() {
  static const std::vector<PaymentFunction> corpus = build_corpus();
  return corpus;
}

const PaymentFunction& payment(const std::string& name) {
  for (const auto& f : payment_corpus())
    if (f.name == name) return f;
  throw ValidationError("unknown payment function: " + name);
}

MtpResult mtp_check(const Graph& g, const PaymentFunction& f, const Decoration& d) {
  const int n = g.num_vertices();
  if (n == 0) throw ValidationError("mtp_check: empty graph");
  if (!is_connected(g)) throw ValidationError("mtp_check: graph must be connected");
  require_decoration(g, f, d);
  MtpResult r;
  for (VertexId o = 0; o < n; ++o)
    for (VertexId u = 0; u < n; ++u) {
      const double out = f.rule(g, d, o, u);
      if (!(out >= 0)) throw ValidationError(f.name + ": negative or undefined payment");
      r.lhs += out;
    }
  for (VertexId o = 0; o < n; ++o)
    for (VertexId u = 0; u < n; ++u) r.rhs += f.rule(g, d, u, o);
  r.lhs /= n;
  r.rhs /= n;
  return r;
}

std::string locality_check(const Graph& g, const PaymentFunction& f, const Decoration& d, std::uint64_t seed,
                           int pairs) {
  require_decoration(g, f, d);
  const int n = g.num_vertices();
  std::mt19937_64 rng(seed);
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<EdgeId> edge_order(g.num_edges());
  std::iota(edge_order.begin(), edge_order.end(), 0);
  std::shuffle(edge_order.begin(), edge_order.end(), rng);

  Graph h;
  for (VertexId v = 0; v < n; ++v) h.add_vertex("r" + std::to_string(v));
  std::vector<DartId> dart_map(g.num_darts());
  for (EdgeId e : edge_order) {
    const Edge& ed = g.edge(e);
    const bool flip = rng() & 1;
    const EdgeId ne = flip ? h.add_edge(perm[ed.v], perm[ed.u]) : h.add_edge(perm[ed.u], perm[ed.v]);
    dart_map[make_dart(e, 0)] = make_dart(ne, flip ? 1 : 0);
    dart_map[make_dart(e, 1)] = make_dart(ne, flip ? 0 : 1);
  }
  Decoration hd;
  if (d.rotation) {
    std::vector<std::vector<DartId>> orders(n);
    for (VertexId v = 0; v < n; ++v)
      for (DartId x : d.rotation->order(v)) orders[perm[v]].push_back(dart_map[x]);
    hd.rotation = RotationSystem(h, std::move(orders));
  }
  if (d.subset) {
    std::vector<bool> s(n);
    for (VertexId v = 0; v < n; ++v) s[perm[v]] = (*d.subset)[v];
    hd.subset = std::move(s);
  }

  std::vector<std::pair<VertexId, VertexId>> todo;
  if (static_cast<long>(n) * n <= pairs) {
    for (VertexId o = 0; o < n; ++o)
      for (VertexId u = 0; u < n; ++u) todo.emplace_back(o, u);
  } else {
    std::uniform_int_distribution<VertexId> pick(0, n - 1);
    for (int k = 0; k < pairs; ++k) {
      const VertexId o = pick(rng);
      // Half of the pairs are neighbours, where bounded rules pay.
      if (k % 2 == 0 && g.degree(o) > 0) {
        const auto& ds = g.darts_at(o);
        todo.emplace_back(o, g.target(ds[rng() % ds.size()]));
      } else {
        todo.emplace_back(o, pick(rng));
      }
    }
  }
  for (auto [o, u] : todo) {
    const double a = f.rule(g, d, o, u);
    const double b = f.rule(h, hd, perm[o], perm[u]);
    if (std::abs(a - b) > 1e-12)
      return f.name + ": relabelling changes f(" + g.label(o) + ", " + g.label(u) + ")";
    if (f.radius >= 0) {
      const DecoratedBall ball = decorated_ball(g, d, {o, u}, f.radius);
      const double c = f.rule(ball.graph, ball.decoration, ball.local[o], ball.local[u]);
      if (std::abs(a - c) > 1e-12)
        return f.name + ": f(" + g.label(o) + ", " + g.label(u) + ") depends on vertices beyond radius " +
               std::to_string(f.radius);
    }
  }
  return {};
}

SeededMtp mtp_over_embeddings(const Exhaustion& ex, const PaymentFunction& f, int seeds, std::uint64_t master_seed) {
  SeededMtp out;
  const Graph& g = ex.deepest().graph;
  double sum_l = 0, sum_r = 0, sum_d = 0, sum_d2 = 0;
  for (int s = 0; s < seeds; ++s) {
    Decoration deco;
    deco.rotation = random_one_acc_embedding(ex, derive_seed(master_seed, s)).rotation;
    if (f.needs_subset) {
      std::vector<bool> sub(g.num_vertices());
      for (VertexId v : ex.to_deepest(0)) sub[v] = true;
      deco.subset = std::move(sub);
    }
    const MtpResult r = mtp_check(g, f, deco);
    sum_l += r.lhs;
    sum_r += r.rhs;
    sum_d += r.difference();
    sum_d2 += r.difference() * r.difference();
    out.max_abs_diff = std::max(out.max_abs_diff, std::abs(r.difference()));
  }
  out.seeds = seeds;
  if (seeds > 0) {
    out.lhs_mean = sum_l / seeds;
    out.rhs_mean = sum_r / seeds;
    if (seeds > 1) {
      const double mean = sum_d / seeds;
      const double var = std::max(0.0, (sum_d2 - seeds * mean * mean) / (seeds - 1));
      out.diff_stderr = std::sqrt(var / seeds);
    }
  }
  return out;
}

std::uint64_t pair_type(const Graph& g, VertexId o, VertexId u, int radius, const RotationSystem* rot) {
  Decoration d;
  if (rot) d.rotation = *rot;
  const DecoratedBall b = decorated_ball(g, d, {o, u}, radius);
  const Graph& h = b.graph;
  const int n = h.num_vertices();
  const VertexId lo = b.local[o], lu = b.local[u];
  const std::vector<int> dist_o = bfs(h, {lo}), dist_u = bfs(h, {lu});
  std::vector<std::uint64_t> colour(n);
  for (VertexId v = 0; v < n; ++v) {
    std::uint64_t c = mix(mix(mix(1, dist_o[v] + 7), dist_u[v] + 11), g.degree(b.vertex_map[v]));
    if (rot) {
      std::vector<int> lens;
      for (DartId x : rot->order(b.vertex_map[v])) lens.push_back(face_length(*rot, x));
      std::sort(lens.begin(), lens.end());
      for (int len : lens) c = mix(c, len);
    }
    colour[v] = c;
  }
  int classes = static_cast<int>(std::set<std::uint64_t>(colour.begin(), colour.end()).size());
  for (int round = 0; round < n; ++round) {
    std::vector<std::uint64_t> next(n);
    for (VertexId v = 0; v < n; ++v) {
      std::vector<std::uint64_t> nb;
      for (DartId x : h.darts_at(v)) nb.push_back(colour[h.target(x)]);
      std::sort(nb.begin(), nb.end());
      std::uint64_t c = mix(colour[v], 0xabcdef);
      for (auto y : nb) c = mix(c, y);
      next[v] = c;
    }
    colour = std::move(next);
    const int now = static_cast<int>(std::set<std::uint64_t>(colour.begin(), colour.end()).size());
    if (now == classes && round > 0) break;
    classes = now;
  }
  std::vector<std::uint64_t> all = colour;
  std::sort(all.begin(), all.end());
  std::uint64_t t = mix(mix(n, h.num_edges()), colour[lo]);
  t = mix(t, colour[lu]);
  for (auto c : all) t = mix(t, c);
  return t;
}

double chi_square_p_value(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  if (statistic <= 0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

namespace {

std::vector<std::pair<std::uint64_t, std::uint64_t>> dart_types(const Graph& g, int radius) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> t(g.num_darts());
  for (DartId d = 0; d < g.num_darts(); ++d) {
    const VertexId o = g.source(d), u = g.target(d);
    t[d] = {pair_type(g, o, u, radius), pair_type(g, u, o, radius)};
  }
  return t;
}

}  // namespace

InvolutionResult involution_check(const Graph& g, int samples, std::uint64_t seed, int radius) {
  if (g.num_edges() == 0) throw ValidationError("involution_check: graph has no edges");
  const auto types = dart_types(g, radius);
  InvolutionResult r;
  r.samples = samples;
  r.dart_counts.assign(g.num_darts(), 0);
  int max_degree = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) max_degree = std::max(max_degree, g.degree(v));
  constexpr int kChunk = 4096;
  for (int start = 0, chunk = 0; start < samples; start += kChunk, ++chunk) {
    std::mt19937_64 rng(derive_seed(seed, chunk));
    std::uniform_int_distribution<VertexId> pick_root(0, g.num_vertices() - 1);
    const int stop = std::min(samples, start + kChunk);
    for (int k = start; k < stop; ++k) {
      // Degree-biased root by rejection, then a uniform dart at it.
      VertexId o;
      do {
        o = pick_root(rng);
      } while (std::uniform_int_distribution<int>(1, max_degree)(rng) > g.degree(o));
      const auto& ds = g.darts_at(o);
      const DartId d = ds[std::uniform_int_distribution<std::size_t>(0, ds.size() - 1)(rng)];
      ++r.dart_counts[d];
      ++r.pair_counts[types[d]];
    }
  }
  for (const auto& [key, count] : r.pair_counts) {
    const std::pair<std::uint64_t, std::uint64_t> swapped{key.second, key.first};
    if (!(key < swapped)) continue;  // each asymmetric pair once; diagonal skipped
    const auto it = r.pair_counts.find(swapped);
    const int other = it == r.pair_counts.end() ? 0 : it->second;
    r.chi2 += static_cast<double>(count - other) * (count - other) / (count + other);
    ++r.dof;
  }
  for (const auto& [key, count] : r.pair_counts) {
    const std::pair<std::uint64_t, std::uint64_t> swapped{key.second, key.first};
    if (swapped < key && !r.pair_counts.count(swapped)) {
      r.chi2 += count;
      ++r.dof;
    }
  }
  r.p_value = chi_square_p_value(r.chi2, r.dof);
  const double expected = static_cast<double>(samples) / g.num_darts();
  for (int c : r.dart_counts) r.dart_chi2 += (c - expected) * (c - expected) / expected;
  r.dart_p_value = chi_square_p_value(r.dart_chi2, g.num_darts() - 1);
  return r;
}

std::map<std::pair<std::uint64_t, std::uint64_t>, double> exact_pair_law(const Graph& g, int radius) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> law;
  const auto types = dart_types(g, radius);
  for (const auto& t : types) law[t] += 1.0 / g.num_darts();
  return law;
}

bool EndToEndReport::ok(double angle_tol, double tangency_tol) const {
  return acc == 1 && triangulation_error.empty() && converged && layout_ok && angle_residual < angle_tol &&
         tangency_residual < tangency_tol;
}

EndToEndReport end_to_end(const Exhaustion& ex, std::uint64_t seed, Geometry geo, double tol) {
  EndToEndReport r;
  const OneAccEmbedding emb = random_one_acc_embedding(ex, seed);
  r.acc = emb.report.acc;
  const Triangulation tri = triangulate_one_ended(ex.deepest(), emb.rotation);
  r.triangulation_error = check_triangulation(tri, ex.deepest().graph);
  r.vertices = tri.graph.num_vertices();
  BoundaryCondition bc;
  bc.value = geo == Geometry::Hyperbolic ? 0.8 : 1.0;
  PackOptions opts;
  opts.tol = tol;
  const Packing p = circle_pack(tri, geo, bc, opts);
  r.converged = p.converged;
  r.layout_ok = p.layout_ok;
  r.tangency_residual = tangency_residual(tri, p);
  const std::vector<bool> bmask = tri.boundary_mask();
  for (VertexId v = 0; v < tri.graph.num_vertices(); ++v)
    if (!bmask[v]) r.angle_residual = std::max(r.angle_residual, std::abs(angle_sum(tri, p.radii, geo, v) - kTwoPi));
  return r;
}

}  // namespace lfe
