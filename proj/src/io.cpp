#include "lfe/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace lfe {

namespace {

void check_version(const Json& j) {
  if (j.contains("format_version") && j.at("format_version").get<int>() != kFormatVersion)
    throw ValidationError("unsupported format_version " + j.at("format_version").dump());
}

Json versioned(Json j) {
  j["format_version"] = kFormatVersion;
  return j;
}

std::vector<VertexId> vertex_list(const Json& j, int n, const char* what) {
  std::vector<VertexId> out;
  for (const auto& x : j) {
    const VertexId v = x.get<VertexId>();
    if (v < 0 || v >= n) throw ValidationError(std::string(what) + ": vertex out of range");
    out.push_back(v);
  }
  return out;
}

}  // namespace

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return versioned({{"vertices", g.labels()}, {"edges", edges}});
}

Graph graph_from_json(const Json& j) {
  check_version(j);
  if (!j.contains("vertices") || !j.contains("edges")) throw ValidationError("graph JSON needs vertices and edges");
  Graph g;
  std::map<std::string, VertexId> by_label;
  for (const auto& v : j.at("vertices")) {
    const std::string label = v.is_string() ? v.get<std::string>() : v.dump();
    if (by_label.count(label)) throw ValidationError("duplicate vertex label " + label);
    by_label[label] = g.add_vertex(label);
  }
  auto endpoint = [&](const Json& x) {
    if (x.is_number_integer()) {
      const VertexId v = x.get<VertexId>();
      if (v < 0 || v >= g.num_vertices()) throw ValidationError("edge endpoint out of range");
      return v;
    }
    const auto it = by_label.find(x.get<std::string>());
    if (it == by_label.end()) throw ValidationError("unknown edge endpoint " + x.dump());
    return it->second;
  };
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw ValidationError("edges must be pairs");
    g.add_edge(endpoint(e[0]), endpoint(e[1]));
  }
  return g;
}

Json truncation_to_json(const TruncatedGraph& t) {
  Json j = graph_to_json(t.graph);
  j["boundary"] = t.boundary;
  return j;
}

Json exhaustion_to_json(const Exhaustion& ex) {
  Json j = truncation_to_json(ex.deepest());
  Json levels = Json::array();
  for (int i = 0; i + 1 < static_cast<int>(ex.levels.size()); ++i) levels.push_back(ex.to_deepest(i));
  j["levels"] = levels;
  return j;
}

Exhaustion exhaustion_from_json(const Json& j) {
  TruncatedGraph t;
  t.graph = graph_from_json(j);
  const int n = t.graph.num_vertices();
  if (j.contains("boundary")) t.boundary = vertex_list(j.at("boundary"), n, "boundary");
  std::sort(t.boundary.begin(), t.boundary.end());
  t.boundary.erase(std::unique(t.boundary.begin(), t.boundary.end()), t.boundary.end());
  std::vector<std::vector<VertexId>> levels;
  if (j.contains("levels"))
    for (const auto& lv : j.at("levels")) levels.push_back(vertex_list(lv, n, "levels"));
  Exhaustion ex = refine(t, levels);
  if (const std::string err = check_exhaustion(ex); !err.empty()) throw ValidationError("exhaustion: " + err);
  return ex;
}

std::string to_graph6(const Graph& g) {
  if (!g.is_simple()) throw ValidationError("graph6 needs a simple graph");
  const long n = g.num_vertices();
  std::string out;
  if (n < 63) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    throw ValidationError("graph6: too many vertices");
  }
  std::vector<int> bits;
  for (VertexId v = 1; v < n; ++v)
    for (VertexId u = 0; u < v; ++u) bits.push_back(g.has_edge(u, v) ? 1 : 0);
  while (bits.size() % 6) bits.push_back(0);
  for (std::size_t i = 0; i < bits.size(); i += 6) {
    int x = 0;
    for (int k = 0; k < 6; ++k) x = (x << 1) | bits[i + k];
    out.push_back(static_cast<char>(x + 63));
  }
  return out;
}

Graph from_graph6(const std::string& raw) {
  std::string s = raw;
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  if (s.rfind(">>graph6<<", 0) == 0) s = s.substr(10);
  if (s.empty()) throw ValidationError("graph6: empty input");
  for (char c : s)
    if (c < 63 || c > 126) throw ValidationError("graph6: invalid character");
  std::size_t pos = 0;
  long n = 0;
  if (s[0] != 126) {
    n = s[0] - 63;
    pos = 1;
  } else {
    if (s.size() < 4 || s[1] == 126) throw ValidationError("graph6: unsupported size prefix");
    for (int k = 1; k <= 3; ++k) n = (n << 6) | (s[k] - 63);
    pos = 4;
  }
  const std::size_t need = (static_cast<std::size_t>(n) * (n - 1) / 2 + 5) / 6;
  if (s.size() - pos != need) throw ValidationError("graph6: wrong length");
  Graph g;
  for (long v = 0; v < n; ++v) g.add_vertex(std::to_string(v));
  std::size_t bit = 0;
  for (VertexId v = 1; v < n; ++v)
    for (VertexId u = 0; u < v; ++u, ++bit) {
      const int x = s[pos + bit / 6] - 63;
      if ((x >> (5 - bit % 6)) & 1) g.add_edge(u, v);
    }
  return g;
}

Json rotation_to_json(const Graph& g, const RotationSystem& rot) {
  Json darts = Json::array(), nbrs = Json::array();
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    Json d = Json::array(), t = Json::array();
    for (DartId x : rot.order(v)) {
      d.push_back(x);
      t.push_back(g.target(x));
    }
    darts.push_back(d);
    nbrs.push_back(t);
  }
  return versioned({{"darts", darts}, {"neighbors", nbrs}});
}

RotationSystem rotation_from_json(const Graph& g, const Json& j) {
  check_version(j);
  std::vector<std::vector<DartId>> orders;
  for (const auto& row : j.at("darts")) orders.push_back(row.get<std::vector<DartId>>());
  if (static_cast<int>(orders.size()) != g.num_vertices()) throw ValidationError("rotation: wrong vertex count");
  for (const auto& row : orders)
    for (DartId d : row)
      if (d < 0 || d >= g.num_darts()) throw ValidationError("rotation: dart out of range");
  return RotationSystem(g, std::move(orders));
}

Json planarity_to_json(const Graph& g, const PlanarityResult& r) {
  Json j = versioned({{"planar", r.planar}});
  if (r.embedding) {
    j["embedding"] = rotation_to_json(g, *r.embedding);
    j["genus"] = euler_genus(g, *r.embedding);
  }
  if (r.witness) {
    const auto& w = *r.witness;
    Json paths = Json::array();
    for (const auto& p : w.paths) {
      std::vector<VertexId> verts;
      for (DartId d : p) verts.push_back(g.source(d));
      if (!p.empty()) verts.push_back(g.target(p.back()));
      paths.push_back(verts);
    }
    j["witness"] = {{"pattern", w.pattern == KuratowskiPattern::K5 ? "K5" : "K33"},
                    {"branch", w.branch},
                    {"pattern_edges", w.pattern_edges},
                    {"paths", paths},
                    {"verified", verify_subdivision(g, w)}};
  }
  return j;
}

Json block_cut_tree_to_json(const BlockCutTree& bct) {
  Json blocks = Json::array();
  for (int b = 0; b < bct.num_blocks(); ++b)
    blocks.push_back({{"edges", bct.block_edges[b]}, {"vertices", bct.block_vertices[b]}});
  Json tree = Json::array();
  for (auto [b, v] : bct.tree_edges) tree.push_back({{"block", b}, {"cut_vertex", v}});
  return versioned({{"blocks", blocks}, {"cut_vertices", bct.cut_vertices}, {"tree_edges", tree}});
}

Json tutte_tree_to_json(const TutteTree& tt) {
  Json nodes = Json::array();
  for (int x = 0; x < static_cast<int>(tt.nodes.size()); ++x) {
    const TutteNode& nd = tt.nodes[x];
    Json edges = Json::array();
    for (EdgeId e = 0; e < nd.graph.num_edges(); ++e) {
      Json ej = {{"u", nd.graph.edge(e).u}, {"v", nd.graph.edge(e).v}, {"virtual", nd.is_virtual(e)}};
      if (nd.is_virtual(e)) {
        ej["tree_edge"] = tt.tree_edge_of(x, e);
      } else {
        ej["origin"] = nd.edge_origin[e];
      }
      edges.push_back(ej);
    }
    nodes.push_back({{"tag", to_string(nd.tag)}, {"vertices", nd.vertex_origin}, {"edges", edges}});
  }
  Json links = Json::array();
  for (const auto& e : tt.edges) {
    Json ends = Json::array();
    for (auto [p, q] : e.endpoints) ends.push_back({p, q});
    links.push_back({{"a", e.a}, {"b", e.b}, {"edge_a", e.edge_a}, {"edge_b", e.edge_b}, {"endpoints", ends}});
  }
  return versioned({{"nodes", nodes}, {"tree_edges", links}, {"degenerate_digon", tt.degenerate_digon}});
}

Json witness_to_json(const Graph& deepest, const StarMinorWitness& w) {
  Json sets = Json::array();
  for (const auto& s : w.finite_branch_sets) {
    Json labels = Json::array();
    for (VertexId v : s) labels.push_back(deepest.label(v));
    sets.push_back(labels);
  }
  Json realizers = Json::array();
  for (auto [x, y] : w.edge_realizers)
    realizers.push_back({deepest.label(x), y == kNoVertex ? Json("infinity") : Json(deepest.label(y))});
  Json inf = Json::array();
  for (VertexId v : w.infinity_part) inf.push_back(deepest.label(v));
  return versioned({{"pattern", w.pattern == KuratowskiPattern::K5 ? "K5" : "K33"},
                    {"level", w.level},
                    {"apex_vertex", w.apex_vertex},
                    {"branch_sets", sets},
                    {"infinity_part", inf},
                    {"infinity_components", w.infinity_components.size()},
                    {"edge_realizers", realizers}});
}

Json embeddability_to_json(const Exhaustion& ex, const EmbeddabilityReport& r) {
  Json verdicts = Json::array();
  for (auto v : r.verdicts) verdicts.push_back(to_string(v));
  Json j = versioned({{"verdicts", verdicts},
                      {"first_obstructed", r.first_obstructed},
                      {"embeddable_so_far", r.embeddable_so_far()}});
  if (r.witness) {
    j["witness"] = witness_to_json(ex.deepest().graph, *r.witness);
    j["witness_verified"] = verify_star_minor(ex.deepest(), *r.witness).empty();
  }
  if (r.chain) {
    Json rots = Json::array();
    for (std::size_t i = 0; i < r.chain->rotations.size(); ++i)
      rots.push_back(rotation_to_json(ex.levels[i].graph, r.chain->rotations[i]));
    j["chain"] = {{"status", to_string(r.chain->status)},
                  {"rotations", rots},
                  {"infinite_face", r.chain->infinite_face},
                  {"embeddings_tried", r.chain->embeddings_tried}};
  }
  return j;
}

Json acc_to_json(const AccReport& r) { return versioned({{"per_level", r.per_level}, {"acc", r.acc}}); }

Json plan_to_json(const BlockEmbeddingPlan& plan) {
  Json blocks = Json::array();
  for (const auto& b : plan.blocks) {
    Json bj = {{"block", b.block},
               {"kind", b.kind == BlockKind::Finite ? "finite" : "infinite"},
               {"cut_infinity", b.cut_infinity},
               {"demands", b.demands},
               {"rotation", b.rotation.orders()},
               {"distinguished_face", b.distinguished_face}};
    if (b.kind == BlockKind::Finite) {
      bj["wired_embeddings"] = b.wired_embeddings;
      bj["wired_choice"] = b.wired_choice;
    } else {
      bj["core_sign"] = b.core_sign == 0 ? Json(nullptr) : Json(b.core_sign > 0 ? "+" : "-");
      bj["core_nodes"] = b.core_nodes;
      bj["node_choice"] = b.node_choice;
      bj["core_survivors"] = b.core_survivors;
      bj["core_enumerated"] = b.core_enumerated;
    }
    blocks.push_back(bj);
  }
  Json cuts = Json::array();
  for (const auto& c : plan.cuts)
    cuts.push_back({{"vertex", c.vertex}, {"block_order", c.block_order}, {"gap_after", c.gap_after}, {"order", c.order}});
  return versioned({{"seed", plan.seed}, {"blocks", blocks}, {"cut_vertices", cuts}});
}

Json triangulation_to_json(const Triangulation& tri) {
  Json roles = Json::array();
  for (auto r : tri.role) roles.push_back(to_string(r));
  return versioned({{"graph", graph_to_json(tri.graph)},
                    {"rotation", rotation_to_json(tri.graph, tri.rot)},
                    {"outer_face", tri.outer_face},
                    {"original_vertices", tri.original_vertices},
                    {"original_edges", tri.original_edges},
                    {"roles", roles},
                    {"collar", tri.collar}});
}

Json coords_to_json(const Triangulation& tri, const Packing& p) {
  Json verts = Json::array();
  for (VertexId v = 0; v < tri.graph.num_vertices(); ++v)
    verts.push_back({{"label", tri.graph.label(v)},
                     {"center", {p.centers[v].real(), p.centers[v].imag()}},
                     {"radius", p.radii[v]}});
  Json j = versioned({{"geometry", to_string(p.geometry)},
                      {"vertices", verts},
                      {"residual", p.residual},
                      {"sweeps", p.sweeps},
                      {"converged", p.converged}});
  j["model"] = p.geometry == Geometry::Hyperbolic ? "poincare" : "plane";
  return j;
}

Json allocations_to_json(const AllocationReport& r) {
  return versioned({{"voronoi", r.voronoi},
                    {"barycentric", r.barycentric},
                    {"barycentric_pieces", r.barycentric_pieces},
                    {"total_area", r.total_area},
                    {"voronoi_total", r.voronoi_total},
                    {"barycentric_total", r.barycentric_total},
                    {"voronoi_error", std::abs(r.voronoi_total - r.total_area)},
                    {"grid", r.grid}});
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << content;
}

Exhaustion read_input(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ValidationError("empty input file");
  if (text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ValidationError(std::string("JSON parse error: ") + e.what());
    }
    return exhaustion_from_json(j);
  }
  TruncatedGraph t;
  t.graph = from_graph6(text.substr(first));
  return single_level(t);
}

}  // namespace lfe
