#include "lfe/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>

#include "lfe/one_acc.hpp"

namespace lfe {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

std::string to_string(VertexRole r) {
  switch (r) {
    case VertexRole::Original: return "original";
    case VertexRole::FaceCentre: return "face-centre";
    case VertexRole::FaceRing: return "face-ring";
    case VertexRole::Collar: return "collar";
  }
  return "unknown";
}

std::string to_string(Geometry g) { return g == Geometry::Euclidean ? "euclidean" : "hyperbolic"; }

Geometry geometry_from_string(const std::string& s) {
  if (s == "euclidean") return Geometry::Euclidean;
  if (s == "hyperbolic") return Geometry::Hyperbolic;
  throw ValidationError("unknown geometry: " + s);
}

std::vector<std::array<VertexId, 3>> Triangulation::triangles() const {
  std::vector<std::array<VertexId, 3>> out;
  const auto fs = faces();
  for (int f = 0; f < static_cast<int>(fs.size()); ++f) {
    if (f == outer_face) continue;
    const auto& d = fs[f].darts;
    out.push_back({graph.source(d[0]), graph.source(d[1]), graph.source(d[2])});
  }
  return out;
}

std::vector<bool> Triangulation::boundary_mask() const {
  std::vector<bool> mask(graph.num_vertices(), false);
  const auto fs = faces();
  for (DartId d : fs.at(outer_face).darts) mask[graph.source(d)] = true;
  return mask;
}

Triangulation triangulate_one_ended(const TruncatedGraph& t, const RotationSystem& rot) {
  const Graph& g = t.graph;
  if (!g.is_simple()) throw ValidationError("triangulate: the level must be a simple graph");
  const AccReport report = acc(t, rot);
  if (report.acc != 1) throw ValidationError("triangulate: acc is " + std::to_string(report.acc) + ", not 1");
  const int infinite = g.num_edges() == 0 ? -1 : infinite_face(t, rot).face;
  const auto faces = trace_faces(g, rot);

  Triangulation tri;
  tri.graph = g;
  tri.original_vertices = g.num_vertices();
  tri.original_edges = g.num_edges();
  tri.role.assign(g.num_vertices(), VertexRole::Original);
  Graph& h = tri.graph;
  std::set<std::string> labels(g.labels().begin(), g.labels().end());
  auto fresh = [&](std::string label, VertexRole role) {
    while (labels.count(label)) label += "'";
    labels.insert(label);
    tri.role.push_back(role);
    return h.add_vertex(label);
  };
  std::map<std::pair<VertexId, VertexId>, DartId> dart_of;
  for (DartId d = 0; d < g.num_darts(); ++d) dart_of[{g.source(d), g.target(d)}] = d;
  auto dart = [&](VertexId u, VertexId v) {
    const auto it = dart_of.find({u, v});
    if (it != dart_of.end()) return it->second;
    const DartId d = make_dart(h.add_edge(u, v), 0);
    dart_of[{u, v}] = d;
    dart_of[{v, u}] = reverse(d);
    return d;
  };
  std::vector<std::vector<DartId>> out_faces;
  auto triangle = [&](VertexId a, VertexId b, VertexId c) { out_faces.push_back({dart(a, b), dart(b, c), dart(c, a)}); };
  auto star = [&](const std::vector<VertexId>& cyc, const std::string& label) {
    const VertexId s = fresh(label, VertexRole::FaceCentre);
    for (std::size_t j = 0; j < cyc.size(); ++j) triangle(cyc[j], cyc[(j + 1) % cyc.size()], s);
  };
  // Ring inside the face whose corners are `corners` (sources of the walk
  // darts); corner i owns runs[i] new vertices. Returns the ring in order.
  auto ring = [&](const std::vector<VertexId>& corners, const std::vector<int>& runs, const std::string& prefix,
                  VertexRole role) {
    const std::size_t l = corners.size();
    std::vector<std::vector<VertexId>> run(l);
    std::vector<VertexId> q;
    for (std::size_t i = 0; i < l; ++i)
      for (int k = 0; k < runs[i]; ++k) {
        run[i].push_back(fresh(prefix + std::to_string(q.size()), role));
        q.push_back(run[i].back());
      }
    for (std::size_t i = 0; i < l; ++i) {
      const std::size_t n = (i + 1) % l;
      if (l > 1) triangle(corners[i], corners[n], run[i].back());
      VertexId prev = run[i].back();
      for (VertexId y : run[n]) {
        triangle(prev, corners[n], y);
        prev = y;
      }
    }
    return q;
  };

  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    const auto cyc = face_vertices(g, faces[f]);
    if (f == infinite) continue;
    const bool simple = std::set<VertexId>(cyc.begin(), cyc.end()).size() == cyc.size();
    if (simple && cyc.size() == 3) {
      out_faces.push_back(faces[f].darts);
    } else if (simple) {
      star(cyc, "+f" + std::to_string(f));
    } else {
      const auto q = ring(cyc, std::vector<int>(cyc.size(), 1), "+f" + std::to_string(f) + ".", VertexRole::FaceRing);
      star(q, "+f" + std::to_string(f));
    }
  }
  std::vector<VertexId> outer = infinite >= 0 ? face_vertices(g, faces[infinite]) : std::vector<VertexId>{0};
  std::vector<int> runs(outer.size(), 1);
  if (outer.size() == 1) runs = {3};
  if (outer.size() == 2) runs = {2, 1};
  tri.collar = ring(outer, runs, "+c", VertexRole::Collar);
  std::vector<DartId> rim;
  for (std::size_t j = 0; j < tri.collar.size(); ++j) rim.push_back(dart(tri.collar[j], tri.collar[(j + 1) % tri.collar.size()]));
  out_faces.push_back(rim);

  std::vector<DartId> succ(h.num_darts(), -1);
  for (const auto& f : out_faces)
    for (std::size_t j = 0; j < f.size(); ++j) {
      DartId& slot = succ[reverse(f[j])];
      if (slot >= 0) throw std::logic_error("triangulate: dart used by two faces");
      slot = f[(j + 1) % f.size()];
    }
  if (std::count(succ.begin(), succ.end(), -1)) throw std::logic_error("triangulate: dart left without a face");
  tri.rot = RotationSystem::from_successors(h, succ);
  const auto tf = trace_faces(h, tri.rot);
  const auto face_of = face_index_of_darts(tf, h.num_darts());
  tri.outer_face = face_of[rim.front()];
  return tri;
}

std::string check_triangulation(const Triangulation& tri, const Graph& input) {
  const Graph& h = tri.graph;
  if (!is_connected(h)) return "disconnected";
  if (euler_genus(h, tri.rot) != 0) return "not planar";
  if (!h.is_simple()) return "not simple";
  const auto fs = tri.faces();
  if (tri.outer_face < 0 || tri.outer_face >= static_cast<int>(fs.size())) return "outer face out of range";
  for (int f = 0; f < static_cast<int>(fs.size()); ++f)
    if (f != tri.outer_face && fs[f].length() != 3) return "face " + std::to_string(f) + " is not a triangle";
  if (tri.original_vertices != input.num_vertices() || tri.original_edges != input.num_edges()) return "input size changed";
  for (VertexId v = 0; v < input.num_vertices(); ++v)
    if (h.label(v) != input.label(v)) return "input label changed";
  for (EdgeId e = 0; e < input.num_edges(); ++e)
    if (h.edge(e).u != input.edge(e).u || h.edge(e).v != input.edge(e).v) return "input edge changed";
  for (EdgeId e = input.num_edges(); e < h.num_edges(); ++e)
    if (h.edge(e).u < input.num_vertices() && h.edge(e).v < input.num_vertices()) return "new edge between input vertices";
  return {};
}

double tangent_angle(Geometry geo, double r, double a, double b) {
  double s = 0;
  if (geo == Geometry::Euclidean) {
    s = a * b / ((r + a) * (r + b));
  } else {
    s = std::sinh(a) * std::sinh(b) / (std::sinh(r + a) * std::sinh(r + b));
  }
  return 2 * std::asin(std::sqrt(std::clamp(s, 0.0, 1.0)));
}

namespace {

struct Corners {
  std::vector<std::vector<std::pair<VertexId, VertexId>>> at;  // per vertex: the other two of each triangle
};

Corners corners_of(const Triangulation& tri) {
  Corners c;
  c.at.resize(tri.graph.num_vertices());
  for (const auto& t : tri.triangles())
    for (int k = 0; k < 3; ++k) c.at[t[k]].push_back({t[(k + 1) % 3], t[(k + 2) % 3]});
  return c;
}

double angle_sum_at(const Corners& c, const std::vector<double>& radii, Geometry geo, VertexId v) {
  double s = 0;
  for (auto [a, b] : c.at[v]) s += tangent_angle(geo, radii[v], radii[a], radii[b]);
  return s;
}

/// Radius at v giving angle sum `target` with the neighbours fixed.
double solve_exact(const Corners& c, const std::vector<double>& radii, Geometry geo, VertexId v, double target) {
  std::vector<double> r = radii;
  double lo = radii[v], hi = radii[v];
  auto sum = [&](double x) {
    r[v] = x;
    return angle_sum_at(c, r, geo, v);
  };
  while (sum(lo) < target && lo > 1e-300) lo /= 2;
  while (sum(hi) > target && hi < 1e300) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    const double mid = geo == Geometry::Euclidean ? std::sqrt(lo * hi) : (lo + hi) / 2;
    (sum(mid) > target ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

double uniform_neighbour(const Corners& c, const std::vector<double>& radii, Geometry geo, VertexId v, double target) {
  const double k = static_cast<double>(c.at[v].size());
  const double r = radii[v];
  const double theta = angle_sum_at(c, radii, geo, v);
  const double beta = std::sin(theta / (2 * k));
  const double delta = std::sin(target / (2 * k));
  if (geo == Geometry::Euclidean) {
    const double rho = beta * r / (1 - beta);
    return rho * (1 - delta) / delta;
  }
  const double den = 1 - beta * std::cosh(r);
  const double ratio = den > 0 ? beta * std::sinh(r) / den : 2.0;
  if (ratio >= 1 || delta <= 0) return solve_exact(c, radii, geo, v, target);
  const double rho = std::atanh(ratio);
  const double out = std::asinh(std::sinh(rho) / delta) - rho;
  return out > 0 && std::isfinite(out) ? out : solve_exact(c, radii, geo, v, target);
}

Point mobius_to_origin(Point u, Point z) { return (z - u) / (1.0 - std::conj(u) * z); }
Point mobius_from_origin(Point u, Point z) { return (z + u) / (1.0 + std::conj(u) * z); }

double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }

}  // namespace

double angle_sum(const Triangulation& tri, const std::vector<double>& radii, Geometry geo, VertexId v) {
  return angle_sum_at(corners_of(tri), radii, geo, v);
}

double distance(Geometry geo, Point a, Point b) {
  if (geo == Geometry::Euclidean) return std::abs(a - b);
  return 2 * std::atanh(std::min(1.0, std::abs(a - b) / std::abs(1.0 - std::conj(a) * b)));
}

namespace {

/// Inner face of least eccentricity in the dual graph without the outer
/// face; placement errors grow along BFS chains, so the chains are kept short.
int central_face(const std::vector<FaceWalk>& fs, const std::vector<int>& face_of, int outer) {
  const int nf = static_cast<int>(fs.size());
  int best = -1, best_ecc = nf + 1;
  std::vector<int> dist(nf);
  for (int s = 0; s < nf; ++s) {
    if (s == outer) continue;
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    std::queue<int> q;
    q.push(s);
    int ecc = 0;
    while (!q.empty() && ecc < best_ecc) {
      const int f = q.front();
      q.pop();
      ecc = std::max(ecc, dist[f]);
      for (DartId d : fs[f].darts) {
        const int g = face_of[reverse(d)];
        if (g == outer || dist[g] >= 0) continue;
        dist[g] = dist[f] + 1;
        q.push(g);
      }
    }
    if (ecc < best_ecc) {
      best_ecc = ecc;
      best = s;
    }
  }
  return best;
}

}  // namespace

std::vector<Point> layout(const Triangulation& tri, const std::vector<double>& radii, Geometry geo, int root_face) {
  const Graph& h = tri.graph;
  const auto fs = tri.faces();
  const auto face_of = face_index_of_darts(fs, h.num_darts());
  if (root_face < 0) root_face = central_face(fs, face_of, tri.outer_face);
  if (root_face < 0 || root_face == tri.outer_face || root_face >= static_cast<int>(fs.size()))
    throw ValidationError("layout: root face must be an inner face");
  std::vector<Point> pos(h.num_vertices());
  std::vector<bool> placed(h.num_vertices(), false);
  auto place_third = [&](VertexId u, VertexId v, VertexId w) {
    if (placed[w]) return;
    const double alpha = tangent_angle(geo, radii[u], radii[v], radii[w]);
    if (geo == Geometry::Euclidean) {
      const Point dir = (pos[v] - pos[u]) / std::abs(pos[v] - pos[u]);
      pos[w] = pos[u] + (radii[u] + radii[w]) * dir * std::polar(1.0, alpha);
    } else {
      const double phi = std::arg(mobius_to_origin(pos[u], pos[v]));
      pos[w] = mobius_from_origin(pos[u], std::polar(std::tanh((radii[u] + radii[w]) / 2), phi + alpha));
    }
    placed[w] = true;
  };
  const auto& rd = fs[root_face].darts;
  const VertexId a = h.source(rd[0]), b = h.source(rd[1]), c = h.source(rd[2]);
  pos[a] = 0;
  pos[b] = geo == Geometry::Euclidean ? radii[a] + radii[b] : std::tanh((radii[a] + radii[b]) / 2);
  placed[a] = placed[b] = true;
  place_third(a, b, c);
  std::vector<bool> done(fs.size(), false);
  done[root_face] = true;
  std::queue<int> q;
  q.push(root_face);
  while (!q.empty()) {
    const int f = q.front();
    q.pop();
    for (DartId d : fs[f].darts) {
      const int nf = face_of[reverse(d)];
      if (nf == tri.outer_face || done[nf]) continue;
      done[nf] = true;
      const auto& nd = fs[nf].darts;
      const std::size_t k = static_cast<std::size_t>(std::find(nd.begin(), nd.end(), reverse(d)) - nd.begin());
      place_third(h.source(nd[k]), h.source(nd[(k + 1) % 3]), h.source(nd[(k + 2) % 3]));
      q.push(nf);
    }
  }
  return pos;
}

Packing circle_pack(const Triangulation& tri, Geometry geo, const BoundaryCondition& bc, const PackOptions& opts) {
  const Graph& h = tri.graph;
  if (!h.is_simple()) throw ValidationError("circle_pack: triangulation must be simple");
  const auto fs = tri.faces();
  for (int f = 0; f < static_cast<int>(fs.size()); ++f)
    if (f != tri.outer_face && fs[f].length() != 3) throw ValidationError("circle_pack: input is not triangulated");
  if (euler_genus(h, tri.rot) != 0) throw ValidationError("circle_pack: rotation is not planar");
  const std::vector<bool> bmask = tri.boundary_mask();
  const Corners c = corners_of(tri);
  const int n = h.num_vertices();

  Packing p;
  p.geometry = geo;
  p.radii.assign(n, 1.0);
  std::vector<double> target(n, 2 * kPi);
  std::vector<bool> adjust(n, true);
  for (VertexId v = 0; v < n; ++v) {
    if (!bmask[v]) continue;
    const auto it = bc.per_vertex.find(v);
    const double value = it == bc.per_vertex.end() ? bc.value : it->second;
    if (bc.kind == BoundaryCondition::Kind::Radii) {
      if (!(value > 0)) throw ValidationError("circle_pack: boundary radii must be positive");
      p.radii[v] = value;
      adjust[v] = false;
    } else {
      if (!(value > 0)) throw ValidationError("circle_pack: boundary angle sums must be positive");
      target[v] = value;
    }
  }
  for (const auto& [v, value] : bc.per_vertex)
    if (v < 0 || v >= n || !bmask[v]) throw ValidationError("circle_pack: boundary condition on a non-boundary vertex");
  double scale = 0;
  for (VertexId v = 0; v < n; ++v)
    if (bmask[v]) scale += p.radii[v];

  auto residuals = [&](double& worst) {
    double total = 0;
    worst = 0;
    for (VertexId v = 0; v < n; ++v) {
      if (!adjust[v]) continue;
      const double e = std::abs(angle_sum_at(c, p.radii, geo, v) - target[v]);
      total += e;
      worst = std::max(worst, e);
    }
    return total;
  };
  residuals(p.residual);
  while (p.residual > opts.tol && p.sweeps < opts.max_sweeps) {
    std::vector<double> next = p.radii;
    for (VertexId v = 0; v < n; ++v)
      if (adjust[v]) next[v] = uniform_neighbour(c, p.radii, geo, v, target[v]);
    if (geo == Geometry::Euclidean && bc.kind == BoundaryCondition::Kind::AngleSums) {
      double now = 0;
      for (VertexId v = 0; v < n; ++v)
        if (bmask[v]) now += next[v];
      for (double& r : next) r *= scale / now;
    }
    p.radii = std::move(next);
    ++p.sweeps;
    p.residual_history.push_back(residuals(p.residual));
  }
  p.converged = p.residual <= opts.tol;
  p.centers = layout(tri, p.radii, geo, opts.root_face);
  p.layout_ok = true;
  for (const auto& t : tri.triangles()) {
    Point a = p.centers[t[0]], b = p.centers[t[1]], d = p.centers[t[2]];
    if (geo == Geometry::Hyperbolic) {
      a = poincare_to_klein(a);
      b = poincare_to_klein(b);
      d = poincare_to_klein(d);
    }
    if (!(cross(b - a, d - a) > 0)) p.layout_ok = false;
  }
  return p;
}

double tangency_residual(const Triangulation& tri, const Packing& p) {
  double worst = 0;
  for (const Edge& e : tri.graph.edges())
    worst = std::max(worst, std::abs(distance(p.geometry, p.centers[e.u], p.centers[e.v]) - p.radii[e.u] - p.radii[e.v]));
  return worst;
}

double hyperbolic_area(double alpha, double beta, double gamma) {
  if (!(alpha > 0 && beta > 0 && gamma > 0)) throw ValidationError("hyperbolic_area: angles must be positive");
  const double s = alpha + beta + gamma;
  if (!(s < kPi)) throw ValidationError("hyperbolic_area: angle sum must be below pi");
  return kPi - s;
}

double triangle_area(Geometry geo, Point a, Point b, Point c) {
  if (geo == Geometry::Euclidean) return std::abs(cross(b - a, c - a)) / 2;
  const double x = distance(geo, b, c), y = distance(geo, c, a), z = distance(geo, a, b);
  if (x <= 0 || y <= 0 || z <= 0) return 0;
  auto angle = [](double opp, double s1, double s2) {
    const double cosv = (std::cosh(s1) * std::cosh(s2) - std::cosh(opp)) / (std::sinh(s1) * std::sinh(s2));
    return std::acos(std::clamp(cosv, -1.0, 1.0));
  };
  const double s = angle(x, y, z) + angle(y, z, x) + angle(z, x, y);
  return std::max(0.0, kPi - s);
}

Point poincare_to_klein(Point p) { return 2.0 * p / (1.0 + std::norm(p)); }
Point klein_to_poincare(Point k) { return k / (1.0 + std::sqrt(std::max(0.0, 1.0 - std::norm(k)))); }

Point midpoint(Geometry geo, Point a, Point b) {
  if (geo == Geometry::Euclidean) return (a + b) / 2.0;
  const Point bp = mobius_to_origin(a, b);
  if (std::abs(bp) == 0) return a;
  const double d = distance(geo, a, b);
  return mobius_from_origin(a, bp / std::abs(bp) * std::tanh(d / 4));
}

Point centroid(Geometry geo, Point a, Point b, Point c) {
  if (geo == Geometry::Euclidean) return (a + b + c) / 3.0;
  const Point ka = poincare_to_klein(a), kb = poincare_to_klein(b);
  const Point ma = poincare_to_klein(midpoint(geo, b, c)), mb = poincare_to_klein(midpoint(geo, c, a));
  // Medians are straight in the Klein model: ka + s (ma - ka) = kb + t (mb - kb).
  const Point u = ma - ka, v = mb - kb;
  const double den = cross(u, v);
  if (den == 0) return a;
  const double s = cross(kb - ka, v) / den;
  return klein_to_poincare(ka + s * u);
}

AllocationReport allocations(const Packing& p, const Triangulation& tri, int grid) {
  if (!p.layout_ok) throw ValidationError("allocations: degenerate layout");
  if (grid < 1) throw ValidationError("allocations: grid must be positive");
  const Geometry geo = p.geometry;
  const int n = tri.graph.num_vertices();
  AllocationReport r;
  r.grid = grid;
  r.voronoi.assign(n, 0);
  r.barycentric.assign(n, 0);
  r.barycentric_pieces.assign(n, 0);
  const auto& z = p.centers;
  auto nearest = [&](Point x) {
    VertexId best = 0;
    double bd = distance(geo, x, z[0]);
    for (VertexId v = 1; v < n; ++v) {
      const double d = distance(geo, x, z[v]);
      if (d < bd) {
        bd = d;
        best = v;
      }
    }
    return best;
  };
  for (const auto& t : tri.triangles()) {
    const double area = triangle_area(geo, z[t[0]], z[t[1]], z[t[2]]);
    r.total_area += area;
    const Point g = centroid(geo, z[t[0]], z[t[1]], z[t[2]]);
    for (int k = 0; k < 3; ++k) {
      const VertexId v = t[k];
      const Point m1 = midpoint(geo, z[v], z[t[(k + 1) % 3]]);
      const Point m2 = midpoint(geo, z[v], z[t[(k + 2) % 3]]);
      r.barycentric[v] += geo == Geometry::Euclidean
                              ? area / 3
                              : triangle_area(geo, z[v], m1, g) + triangle_area(geo, z[v], g, m2);
      r.barycentric_pieces[v] += 2;
    }
    // Grid pieces are straight in the plane or the Klein model, so in both
    // cases they tile the triangle by geodesic triangles of exact area.
    std::array<Point, 3> k{z[t[0]], z[t[1]], z[t[2]]};
    if (geo == Geometry::Hyperbolic)
      for (auto& x : k) x = poincare_to_klein(x);
    std::vector<Point> node((grid + 1) * (grid + 1));
    auto at = [&](int i, int j) -> Point& { return node[i * (grid + 1) + j]; };
    for (int i = 0; i <= grid; ++i)
      for (int j = 0; i + j <= grid; ++j) {
        const Point x = k[0] + (k[1] - k[0]) * (double(i) / grid) + (k[2] - k[0]) * (double(j) / grid);
        at(i, j) = geo == Geometry::Hyperbolic ? klein_to_poincare(x) : x;
      }
    auto piece = [&](Point a, Point b, Point c) {
      const Point m = geo == Geometry::Hyperbolic
                          ? klein_to_poincare((poincare_to_klein(a) + poincare_to_klein(b) + poincare_to_klein(c)) / 3.0)
                          : (a + b + c) / 3.0;
      r.voronoi[nearest(m)] += triangle_area(geo, a, b, c);
    };
    for (int i = 0; i < grid; ++i)
      for (int j = 0; i + j < grid; ++j) {
        piece(at(i, j), at(i + 1, j), at(i, j + 1));
        if (i + j + 1 < grid) piece(at(i + 1, j), at(i + 1, j + 1), at(i, j + 1));
      }
  }
  for (VertexId v = 0; v < n; ++v) {
    r.voronoi_total += r.voronoi[v];
    r.barycentric_total += r.barycentric[v];
  }
  return r;
}

std::pair<Point, double> euclidean_circle(Point center, double hyperbolic_radius) {
  const double d = distance(Geometry::Hyperbolic, 0, center);
  const double s1 = std::tanh((d - hyperbolic_radius) / 2), s2 = std::tanh((d + hyperbolic_radius) / 2);
  const Point dir = std::abs(center) > 0 ? center / std::abs(center) : Point(1, 0);
  return {dir * ((s1 + s2) / 2), (s2 - s1) / 2};
}

std::string render_svg(const Packing& p, const Triangulation& tri, double size) {
  const int n = tri.graph.num_vertices();
  std::vector<Point> c(n);
  std::vector<double> rad(n);
  double lo_x = -1, hi_x = 1, lo_y = -1, hi_y = 1;
  if (p.geometry == Geometry::Euclidean) {
    lo_x = lo_y = 1e300;
    hi_x = hi_y = -1e300;
    for (VertexId v = 0; v < n; ++v) {
      c[v] = p.centers[v];
      rad[v] = p.radii[v];
      lo_x = std::min(lo_x, c[v].real() - rad[v]);
      hi_x = std::max(hi_x, c[v].real() + rad[v]);
      lo_y = std::min(lo_y, c[v].imag() - rad[v]);
      hi_y = std::max(hi_y, c[v].imag() + rad[v]);
    }
  } else {
    for (VertexId v = 0; v < n; ++v) std::tie(c[v], rad[v]) = euclidean_circle(p.centers[v], p.radii[v]);
  }
  const double span = std::max(hi_x - lo_x, hi_y - lo_y);
  const double k = 0.96 * size / span;
  const double ox = size / 2 - k * (lo_x + hi_x) / 2, oy = size / 2 + k * (lo_y + hi_y) / 2;
  auto map = [&](Point z) { return Point(ox + k * z.real(), oy - k * z.imag()); };

  std::ostringstream s;
  s.precision(10);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
    << size << ' ' << size << "\">\n";
  if (p.geometry == Geometry::Hyperbolic) {
    const Point o = map(0);
    s << "<circle cx=\"" << o.real() << "\" cy=\"" << o.imag() << "\" r=\"" << k
      << "\" fill=\"none\" stroke=\"#888\"/>\n";
  }
  for (VertexId v = 0; v < n; ++v) {
    const Point m = map(c[v]);
    s << "<circle cx=\"" << m.real() << "\" cy=\"" << m.imag() << "\" r=\"" << k * rad[v]
      << "\" fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"0.8\"/>\n";
  }
  for (const Edge& e : tri.graph.edges()) {
    const Point a = p.centers[e.u], b = p.centers[e.v];
    const Point ma = map(a), mb = map(b);
    const bool straight = p.geometry == Geometry::Euclidean || std::abs(cross(a, b)) < 1e-12;
    if (straight) {
      s << "<line x1=\"" << ma.real() << "\" y1=\"" << ma.imag() << "\" x2=\"" << mb.real() << "\" y2=\"" << mb.imag()
        << "\" stroke=\"#333\" stroke-width=\"0.6\"/>\n";
      continue;
    }
    // Circle through a, b and the inverse of a is orthogonal to the unit circle.
    const Point ai = a / std::norm(a);
    const Point m1 = map(ai);
    const double d = 2 * (ma.real() * (mb.imag() - m1.imag()) + mb.real() * (m1.imag() - ma.imag()) +
                          m1.real() * (ma.imag() - mb.imag()));
    const double ux = (std::norm(ma) * (mb.imag() - m1.imag()) + std::norm(mb) * (m1.imag() - ma.imag()) +
                       std::norm(m1) * (ma.imag() - mb.imag())) / d;
    const double uy = (std::norm(ma) * (m1.real() - mb.real()) + std::norm(mb) * (ma.real() - m1.real()) +
                       std::norm(m1) * (mb.real() - ma.real())) / d;
    const Point cc(ux, uy);
    const double rr = std::abs(ma - cc);
    const int sweep = cross(ma - cc, mb - cc) > 0 ? 1 : 0;
    s << "<path d=\"M " << ma.real() << ' ' << ma.imag() << " A " << rr << ' ' << rr << " 0 0 " << sweep << ' '
      << mb.real() << ' ' << mb.imag() << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"0.6\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace lfe
