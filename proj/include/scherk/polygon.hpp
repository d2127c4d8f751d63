#pragma once

#include <functional>
#include <string>
#include <vector>

#include "scherk/hypgeo.hpp"

namespace scherk {

// Ideal polygon with an even number of vertices and alternating boundary
// labels: edge j joins vertex j to vertex j+1 and carries +infinity (an
// A-side) when j is even and the first edge is an A-side.
class ScherkPolygon {
 public:
  ScherkPolygon(std::vector<BoundaryPoint> vertices, bool first_edge_is_a = true);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int k() const { return num_vertices() / 2; }
  const BoundaryPoint& vertex(int i) const;  // index taken mod 2k
  const std::vector<BoundaryPoint>& vertices() const { return vertices_; }

  bool first_edge_is_a() const { return first_a_; }
  bool edge_is_a(int j) const;          // edge j = (v_j, v_{j+1})
  std::string edge_label(int j) const;  // "A0", "B0", "A1", ...
  Geodesic edge_geodesic(int j) const;

  bool counterclockwise() const { return ccw_; }

  // A point strictly inside the polygon (foot of the origin on a diagonal).
  InteriorPoint interior_point() const;
  // Sign of Geodesic::side on the interior of the polygon, for edge j.
  double domain_side_sign(int j) const;

 private:
  std::vector<BoundaryPoint> vertices_;
  bool first_a_;
  bool ccw_;
};

enum class EdgeClass { kBoundaryA, kBoundaryB, kInterior };

// Simple closed ideal polygon whose vertices are among the parent's.
struct InscribedPolygon {
  std::vector<int> indices;        // strictly increasing parent indices
  std::vector<EdgeClass> classes;  // classes[t] labels edge (indices[t], indices[t+1 mod m])

  int size() const { return static_cast<int>(indices.size()); }
};

InscribedPolygon make_inscribed(const ScherkPolygon& parent, std::vector<int> indices);

struct Quantities {
  double a = 0, b = 0, perim = 0;
};

// Truncated side sums of an inscribed polygon under the given decoration
// (decoration indexed by parent vertex index).
Quantities quantities(const ScherkPolygon& parent, const InscribedPolygon& poly,
                      const Decoration& dec);

// Truncated side sums of the full polygon boundary.
Quantities quantities(const ScherkPolygon& g, const Decoration& dec);

// a(Gamma) - b(Gamma) at the unit decoration; horocycle independent.
double gamma_balance(const ScherkPolygon& g);

// Visits every cyclic vertex subset of size >= 3 except the full set, in
// lexicographic order of index sets. Guarded at 24 vertices.
void enumerate_inscribed(const ScherkPolygon& g,
                         const std::function<void(const InscribedPolygon&)>& visit);
std::vector<InscribedPolygon> enumerate_inscribed(const ScherkPolygon& g);

// True iff every vertex of the polygon meets exactly one boundary-A edge
// (side == 'A') resp. boundary-B edge (side == 'B').
bool is_alternating(const InscribedPolygon& poly, char side);

// Decoration-independent alternating sum for an attached quadrilateral
// (a0, b1, b2, a1): |a0 a1| - |a1 b2| + |b2 b1| - |b1 a0|.
double phi(const BoundaryPoint& a0, const BoundaryPoint& b1,
           const BoundaryPoint& b2, const BoundaryPoint& a1);

struct MarginEntry {
  std::vector<int> indices;  // vertex indices of the inscribed polygon
  char side = 'A';           // which inequality
  double margin = 0;         // |P| - 2a(P) or |P| - 2b(P)
};

struct AdmissibilityReport {
  bool balanced = false;
  double balance = 0;  // a(Gamma) - b(Gamma)
  bool admissible = false;

  std::vector<MarginEntry> violations;  // margin < -kEpsMargin
  std::vector<MarginEntry> equalities;  // |margin| <= kEpsMargin
  double min_margin_a = 0;  // over proper A-alternating inscribed polygons
  double min_margin_b = 0;
  bool has_alternating_a = false;
  bool has_alternating_b = false;

  long long enumerated = 0;
  long long checked_alternating = 0;
  long long auto_satisfied = 0;             // non-alternating polygons
  long long shared_vertex_interior = 0;     // consecutive interior edges met
  std::string strategy;                     // "exhaustive" or "alternating-dp"
};

enum class CheckStrategy { kAuto, kExhaustive, kAlternatingDp };

// Theorem-1 decision procedure. Polygons with at most kEnumGuardVertices
// vertices are checked by exhaustive enumeration; larger ones by an exact
// cyclic-subset minimization over alternating inscribed polygons (the only
// ones that are not automatically satisfied).
AdmissibilityReport check_admissibility(const ScherkPolygon& g,
                                        CheckStrategy strategy = CheckStrategy::kAuto);

// Smallest uniform decoration 2^-m (m >= 0 integer) whose horocycles are
// pairwise disjoint with truncated distances > slack.
Decoration disjoint_uniform_decoration(const ScherkPolygon& g, double slack = 0.05);

}  // namespace scherk
