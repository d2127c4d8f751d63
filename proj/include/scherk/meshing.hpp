#pragma once

#include <array>
#include <string>
#include <vector>

#include "scherk/polygon.hpp"

namespace scherk {

// Geodesic through two interior points, extended to its ideal endpoints.
Geodesic geodesic_through(const InteriorPoint& p, const InteriorPoint& q);

struct BoundaryArc {
  enum class Kind { kSide, kChord };
  Kind kind;
  int index;          // parent edge index for sides, vertex index for chords
  std::string label;  // "A0", "B1", ... for sides; "g0", "g1", ... for chords
  InteriorPoint start, end;  // endpoints on the horocycle intersections
  Geodesic geodesic;         // full geodesic carrying the arc
  double domain_sign;        // sign of Geodesic::side on the domain interior
  double length;             // hyperbolic arc length
};

// Compact convex truncation of an ideal polygon: the geodesic sides cut at
// the level-scaled horocycles, closed up by the geodesic chords joining the
// two intersection points at each vertex.
class TruncatedDomain {
 public:
  TruncatedDomain(ScherkPolygon parent, int level, Decoration base);

  const ScherkPolygon& parent() const { return parent_; }
  int level() const { return level_; }
  const Decoration& base_decoration() const { return base_; }
  const Decoration& decoration() const { return dec_; }
  const std::vector<BoundaryArc>& arcs() const { return arcs_; }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }

  bool contains(Complex z, double tol = 0.0) const;
  // Distance to the supporting geodesics; equals the boundary distance on the
  // inside by convexity. exclude_arc skips one arc's geodesic.
  double clearance(Complex z, int exclude_arc = -1) const;
  double chord_clearance(Complex z) const;  // distance to chord geodesics only

  // Hyperbolic area by angle count (geodesic polygon Gauss-Bonnet).
  double area() const;

 private:
  ScherkPolygon parent_;
  int level_;
  Decoration base_;
  Decoration dec_;
  std::vector<BoundaryArc> arcs_;
};

// Truncation with the automatic pairwise-disjoint uniform base decoration.
TruncatedDomain truncate(const ScherkPolygon& g, int level);
TruncatedDomain truncate(const ScherkPolygon& g, int level, const Decoration& base);

struct TriMesh {
  std::vector<Complex> nodes;  // disk-model coordinates
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> node_marker;    // boundary arc id, or -1 for interior nodes
  std::vector<int> boundary_loop;  // ordered cycle of boundary node indices
  double target_h = 0;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
};

// Graded conforming Delaunay triangulation of the truncated domain with
// hyperbolic target edge length h; grading >= 1 concentrates nodes toward
// the chord arcs.
TriMesh triangulate(const TruncatedDomain& dom, double h, double grading = 2.0);

// Structured mesh of a half-plane axis rectangle [x0,x1] x [y0,y1], mapped
// into the disk model. Markers: bottom 0, right 1, top 2, left 3.
TriMesh structured_rectangle_mesh(double x0, double x1, double y0, double y1,
                                  int nx, int ny);

double hyperbolic_edge_length(const TriMesh& mesh, int i, int j);
// Smallest triangle angle of the mesh in the hyperbolic metric, degrees.
double min_hyperbolic_angle_deg(const TriMesh& mesh);
// Largest hyperbolic edge length.
double max_hyperbolic_edge(const TriMesh& mesh);

}  // namespace scherk
