#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lfe/generators.hpp"
#include "lfe/harness.hpp"
#include "lfe/io.hpp"

using namespace lfe;

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text << "\n";
  } else {
    write_file(c.out, text + "\n");
  }
}

void emit(const Common& c, const Json& j) { emit(c, j.dump(2)); }

double default_tolerance() {
  if (const char* env = std::getenv("LFE_TOL")) {
    try {
      const double t = std::stod(env);
      if (t > 0) return t;
    } catch (const std::exception&) {
    }
    throw ValidationError(std::string("LFE_TOL is not a positive number: ") + env);
  }
  return 1e-10;
}

Exhaustion first_levels(const Exhaustion& ex, int k) {
  if (k <= 0 || k >= static_cast<int>(ex.levels.size())) return ex;
  Exhaustion out;
  out.levels.assign(ex.levels.begin(), ex.levels.begin() + k);
  out.inclusions.assign(ex.inclusions.begin(), ex.inclusions.begin() + (k - 1));
  return out;
}

std::vector<std::string> witness_listing(const Graph& g, const StarMinorWitness& w) {
  std::vector<std::string> lines;
  for (std::size_t p = 0; p < w.finite_branch_sets.size(); ++p) {
    std::string line = "B" + std::to_string(p) + ":";
    if (static_cast<int>(p) == w.apex_vertex) {
      line += " infinity (" + std::to_string(w.infinity_part.size()) + " vertices beyond level " +
              std::to_string(w.level) + ")";
    } else {
      for (VertexId v : w.finite_branch_sets[p]) line += " " + g.label(v);
    }
    lines.push_back(line);
  }
  return lines;
}

/// A triangulation JSON, or a truncation that is embedded with the seed first.
Triangulation load_triangulation(const std::string& path, std::uint64_t seed) {
  const std::string text = read_file(path);
  if (text.find("\"outer_face\"") != std::string::npos) {
    const Json j = Json::parse(text);
    Triangulation tri;
    tri.graph = graph_from_json(j.at("graph"));
    tri.rot = rotation_from_json(tri.graph, j.at("rotation"));
    tri.outer_face = j.at("outer_face").get<int>();
    tri.original_vertices = j.value("original_vertices", 0);
    tri.original_edges = j.value("original_edges", 0);
    for (const auto& r : j.at("roles")) {
      const std::string s = r.get<std::string>();
      VertexRole role = VertexRole::Original;
      for (VertexRole x : {VertexRole::Original, VertexRole::FaceCentre, VertexRole::FaceRing, VertexRole::Collar})
        if (to_string(x) == s) role = x;
      tri.role.push_back(role);
    }
    tri.collar = j.value("collar", std::vector<VertexId>{});
    const int faces = static_cast<int>(tri.faces().size());
    if (tri.outer_face < 0 || tri.outer_face >= faces) throw ValidationError("outer_face out of range");
    return tri;
  }
  const Exhaustion ex = read_input(path);
  return triangulate_one_ended(ex.deepest(), random_one_acc_embedding(ex, seed).rotation);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally finite planar embeddings: analysis, sampling and circle packing"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--seed", common.seed, "Random seed")->capture_default_str();
  app.add_option("--out", common.out, "Output file (default stdout)");
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "svg", "graph6"}))
      ->capture_default_str();
  app.fallthrough();

  std::string file;

  auto* analyze = app.add_subcommand("analyze", "Planarity certificate and decompositions of a graph");
  bool planarity = false, witness = false, decompose = false;
  analyze->add_option("file", file, "Graph JSON, truncation JSON or graph6")->required();
  analyze->add_flag("--planarity", planarity, "Embedding or Kuratowski subdivision");
  analyze->add_flag("--witness", witness, "Include the Kuratowski witness");
  analyze->add_flag("--decompose", decompose, "Block-cut tree and Tutte trees of the blocks");

  auto* embeddable = app.add_subcommand("embeddable", "Wired planarity per level, *-minor witness or coherent chain");
  int levels = 0;
  bool ewitness = false;
  embeddable->add_option("file", file)->required();
  embeddable->add_flag("--witness", ewitness, "Include the witness and its branch-set listing");
  embeddable->add_option("--levels", levels, "Use only the first k levels");

  auto* embed = app.add_subcommand("embed", "Random rotation with one accumulation point");
  bool plan = false;
  embed->add_option("file", file)->required();
  embed->add_flag("--plan", plan, "Include the block embedding plan");

  auto* triangulate = app.add_subcommand("triangulate", "Embed, then triangulate into a disk");
  triangulate->add_option("file", file)->required();

  auto* pack = app.add_subcommand("pack", "Circle packing of a triangulation");
  std::string geometry = "hyperbolic", coords;
  std::optional<double> tol;
  double boundary = -1;
  std::int64_t max_sweeps = 1'000'000;
  int grid = 0;
  pack->add_option("file", file, "Triangulation JSON or a truncation")->required();
  pack->add_option("--geometry", geometry)->check(CLI::IsMember({"euclidean", "hyperbolic"}))->capture_default_str();
  pack->add_option("--tol", tol, "Angle-sum tolerance (default LFE_TOL or 1e-10)");
  pack->add_option("--max-sweeps", max_sweeps)->capture_default_str();
  pack->add_option("--boundary-radius", boundary, "Boundary radius (default 1 euclidean, 0.8 hyperbolic)");
  pack->add_option("--coords", coords, "Write the coordinates JSON here");
  pack->add_option("--allocations", grid, "Report Voronoi and barycentric allocations at this grid");

  auto* mtp = app.add_subcommand("mtp", "Mass transport and involution checks");
  std::string pay = "all";
  int samples = 0, seeds = 0;
  mtp->add_option("file", file)->required();
  mtp->add_option("--payment", pay, "Payment function name or all")->capture_default_str();
  mtp->add_option("--involution", samples, "Dart samples for the swap-symmetry test");
  mtp->add_option("--embeddings", seeds, "Average over this many one-acc decorations");

  auto* generate_cmd = app.add_subcommand("generate", "Built-in exhaustions");
  std::string name;
  int depth = 3, degree = 3;
  generate_cmd->add_option("name", name)->required()->check(CLI::IsMember(generator_names()));
  generate_cmd->add_option("--depth", depth)->capture_default_str();
  generate_cmd->add_option("--degree", degree)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*analyze) {
      const Exhaustion ex = read_input(file);
      const Graph& g = ex.deepest().graph;
      Json j = {{"format_version", kFormatVersion}, {"graph", graph_to_json(g)}};
      if (planarity || witness || !decompose) {
        PlanarityResult r = is_planar(g);
        if (!witness) r.witness.reset();
        j["planarity"] = planarity_to_json(g, r);
      }
      if (decompose) {
        const BlockCutTree bct = block_cut_tree(g);
        j["block_cut_tree"] = block_cut_tree_to_json(bct);
        Json trees = Json::array();
        for (int b = 0; b < bct.num_blocks(); ++b) {
          const InducedSubgraph sub = block_subgraph(g, bct, b);
          if (sub.graph.num_edges() < 2) continue;
          bool loop = false;
          for (const Edge& e : sub.graph.edges()) loop = loop || e.u == e.v;
          if (loop) continue;
          Json t = tutte_tree_to_json(tutte_decomposition(sub.graph));
          t["block"] = b;
          t["vertex_map"] = sub.vertex_map;
          t["edge_map"] = sub.edge_map;
          trees.push_back(t);
        }
        j["tutte_trees"] = trees;
      }
      emit(common, j);
    } else if (*embeddable) {
      const Exhaustion ex = first_levels(read_input(file), levels);
      EmbeddabilityOptions opts;
      opts.build_witness = ewitness;
      const EmbeddabilityReport r = locally_finite_embeddable(ex, opts);
      Json j = embeddability_to_json(ex, r);
      if (r.witness) j["listing"] = witness_listing(ex.deepest().graph, *r.witness);
      emit(common, j);
    } else if (*embed) {
      const Exhaustion ex = read_input(file);
      const OneAccEmbedding emb = random_one_acc_embedding(ex, common.seed);
      Json j = {{"format_version", kFormatVersion},
                {"seed", common.seed},
                {"rotation", rotation_to_json(ex.deepest().graph, emb.rotation)},
                {"acc", acc_to_json(emb.report)}};
      if (plan) j["plan"] = plan_to_json(emb.plan);
      emit(common, j);
    } else if (*triangulate) {
      const Exhaustion ex = read_input(file);
      const Triangulation tri = triangulate_one_ended(ex.deepest(), random_one_acc_embedding(ex, common.seed).rotation);
      if (common.format == "graph6") {
        emit(common, to_graph6(tri.graph));
      } else {
        Json j = triangulation_to_json(tri);
        j["check"] = check_triangulation(tri, ex.deepest().graph);
        emit(common, j);
      }
    } else if (*pack) {
      const Triangulation tri = load_triangulation(file, common.seed);
      const Geometry geo = geometry_from_string(geometry);
      BoundaryCondition bc;
      bc.value = boundary > 0 ? boundary : (geo == Geometry::Hyperbolic ? 0.8 : 1.0);
      PackOptions opts;
      opts.tol = tol ? *tol : default_tolerance();
      opts.max_sweeps = max_sweeps;
      const Packing p = circle_pack(tri, geo, bc, opts);
      Json j = {{"format_version", kFormatVersion},
                {"geometry", to_string(geo)},
                {"vertices", tri.graph.num_vertices()},
                {"converged", p.converged},
                {"sweeps", p.sweeps},
                {"angle_residual", p.residual},
                {"tangency_residual", tangency_residual(tri, p)},
                {"layout_ok", p.layout_ok}};
      if (grid > 0) j["allocations"] = allocations_to_json(allocations(p, tri, grid));
      if (!coords.empty()) write_file(coords, coords_to_json(tri, p).dump(2) + "\n");
      const bool svg_out = common.format == "svg" || (common.out.size() > 4 && common.out.ends_with(".svg"));
      if (svg_out) {
        emit(common, render_svg(p, tri));
        std::cerr << j.dump() << "\n";
      } else {
        emit(common, j);
      }
    } else if (*mtp) {
      const Exhaustion ex = read_input(file);
      const Graph& g = ex.deepest().graph;
      Decoration deco;
      std::vector<bool> sub(g.num_vertices());
      for (VertexId v : ex.to_deepest(0)) sub[v] = true;
      deco.subset = sub;
      try {
        deco.rotation = random_one_acc_embedding(ex, common.seed).rotation;
      } catch (const ValidationError&) {
        // Obstructed input: rotation-dependent payments are skipped.
      }
      Json results = Json::array();
      for (const auto& f : payment_corpus()) {
        if (pay != "all" && f.name != pay) continue;
        Json row = {{"payment", f.name}, {"radius", f.radius}};
        if (f.needs_rotation && !deco.rotation) {
          row["skipped"] = "no one-acc rotation";
        } else {
          const MtpResult r = mtp_check(g, f, deco);
          row["lhs"] = r.lhs;
          row["rhs"] = r.rhs;
          row["equal"] = std::abs(r.difference()) <= 1e-12;
          row["locality"] = locality_check(g, f, deco, common.seed);
          if (seeds > 0 && f.needs_rotation) {
            const SeededMtp s = mtp_over_embeddings(ex, f, seeds, common.seed);
            row["seeded"] = {{"lhs_mean", s.lhs_mean}, {"rhs_mean", s.rhs_mean}, {"diff_stderr", s.diff_stderr}};
          }
        }
        results.push_back(row);
      }
      if (pay != "all" && results.empty()) throw ValidationError("unknown payment function: " + pay);
      Json j = {{"format_version", kFormatVersion}, {"vertices", g.num_vertices()}, {"payments", results}};
      if (samples > 0) {
        const InvolutionResult r = involution_check(g, samples, common.seed);
        j["involution"] = {{"samples", r.samples}, {"chi2", r.chi2},           {"dof", r.dof},
                           {"p_value", r.p_value}, {"dart_p_value", r.dart_p_value}, {"pass", r.p_value > 0.01}};
      }
      emit(common, j);
    } else if (*generate_cmd) {
      const Exhaustion ex = generate(name, depth, degree);
      if (common.format == "graph6") {
        emit(common, to_graph6(ex.deepest().graph));
      } else {
        emit(common, exhaustion_to_json(ex));
      }
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const SizeGuardError& e) {
    std::cerr << "size guard: " << e.what() << "\n";
    return 3;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
