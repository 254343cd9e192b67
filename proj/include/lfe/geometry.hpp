#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lfe/ends.hpp"
#include "lfe/rotation.hpp"

namespace lfe {

enum class VertexRole { Original, FaceCentre, FaceRing, Collar };
std::string to_string(VertexRole r);

/// A finite triangulated disk containing the input level. Vertices and
/// edges 0..original-1 are the input graph with its ids unchanged.
struct Triangulation {
  Graph graph;
  RotationSystem rot;
  int outer_face = -1;  // index into trace_faces(graph, rot)
  int original_vertices = 0;
  int original_edges = 0;
  std::vector<VertexRole> role;
  std::vector<VertexId> collar;  // outer ring in walk order

  std::vector<FaceWalk> faces() const { return trace_faces(graph, rot); }
  /// Vertex triples of the inner faces, in walk order.
  std::vector<std::array<VertexId, 3>> triangles() const;
  std::vector<bool> boundary_mask() const;
};

/// Simple faces of length above three get a centre vertex, faces that
/// revisit a vertex get a ring of new vertices around a centre, and the
/// infinite face gets one collar ring. Requires a simple graph and a
/// rotation with acc 1; throws ValidationError otherwise.
Triangulation triangulate_one_ended(const TruncatedGraph& t, const RotationSystem& rot);

/// Independent consistency check: planar, inner faces triangles, simple,
/// input preserved. Returns an empty string or the first violation.
std::string check_triangulation(const Triangulation& tri, const Graph& input);

enum class Geometry { Euclidean, Hyperbolic };
std::string to_string(Geometry g);
Geometry geometry_from_string(const std::string& s);

struct BoundaryCondition {
  enum class Kind { Radii, AngleSums };
  Kind kind = Kind::Radii;
  double value = 1.0;                    // every boundary vertex without an entry
  std::map<VertexId, double> per_vertex;
};

struct PackOptions {
  double tol = 1e-10;
  std::int64_t max_sweeps = 1'000'000;
  int root_face = -1;  // inner face placed first; -1 picks a central one
};

using Point = std::complex<double>;

struct Packing {
  Geometry geometry = Geometry::Euclidean;
  std::vector<double> radii;   // hyperbolic radii are intrinsic lengths
  std::vector<Point> centers;  // plane, or Poincare disk
  double residual = 0;         // max angle-sum error at adjusted vertices
  std::vector<double> residual_history;  // sum of errors after each sweep
  std::int64_t sweeps = 0;
  bool converged = false;
  bool layout_ok = false;      // every inner triangle positively oriented
};

/// Angle at the first vertex of a triangle of mutually tangent circles.
double tangent_angle(Geometry geo, double r, double a, double b);
/// Angle sum at v from the current radii (inner triangles only).
double angle_sum(const Triangulation& tri, const std::vector<double>& radii, Geometry geo, VertexId v);

/// Radii by synchronous uniform-neighbour sweeps, then a breadth-first layout
/// from the root face. Stops at tol or after max_sweeps (converged = false).
Packing circle_pack(const Triangulation& tri, Geometry geo, const BoundaryCondition& bc, const PackOptions& opts = {});

/// Positions from radii alone; exposed so layouts from different root faces can be compared.
std::vector<Point> layout(const Triangulation& tri, const std::vector<double>& radii, Geometry geo, int root_face);

/// Distance in the plane or in the Poincare disk.
double distance(Geometry geo, Point a, Point b);
/// Largest |d(c_u, c_v) - r_u - r_v| over edges.
double tangency_residual(const Triangulation& tri, const Packing& p);

/// pi - alpha - beta - gamma; ValidationError unless every angle is positive
/// and the sum is below pi.
double hyperbolic_area(double alpha, double beta, double gamma);
/// Area of the triangle on three points (geodesic in the hyperbolic case).
double triangle_area(Geometry geo, Point a, Point b, Point c);

/// Geodesic midpoint and the median intersection.
Point midpoint(Geometry geo, Point a, Point b);
Point centroid(Geometry geo, Point a, Point b, Point c);

Point poincare_to_klein(Point p);
Point klein_to_poincare(Point k);

struct AllocationReport {
  std::vector<double> voronoi;
  std::vector<double> barycentric;
  std::vector<int> barycentric_pieces;  // 2 per incident inner triangle
  double total_area = 0;                // sum of inner triangle areas
  double voronoi_total = 0;
  double barycentric_total = 0;
  int grid = 0;
};

/// Voronoi cells of the centres clipped to the triangulated region, by
/// splitting every triangle into grid^2 pieces assigned by their centroid,
/// and the barycentric allocation. ValidationError on a degenerate layout.
AllocationReport allocations(const Packing& p, const Triangulation& tri, int grid = 24);

/// Circles and edges; hyperbolic edges as arcs orthogonal to the unit circle.
std::string render_svg(const Packing& p, const Triangulation& tri, double size = 800);

/// Euclidean centre and radius of a hyperbolic circle in the Poincare disk.
std::pair<Point, double> euclidean_circle(Point center, double hyperbolic_radius);

}  // namespace lfe
