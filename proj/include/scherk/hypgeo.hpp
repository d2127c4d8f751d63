#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "scherk/constants.hpp"
#include "scherk/errors.hpp"

namespace scherk {

using Complex = std::complex<double>;

// Ideal point on the boundary circle of the disk model, stored as an angle
// normalized to [0, 2*pi).
class BoundaryPoint {
 public:
  BoundaryPoint() : theta_(0.0) {}
  explicit BoundaryPoint(double theta);

  double theta() const { return theta_; }
  Complex unit() const;

  bool approx_equal(const BoundaryPoint& other, double eps = kEpsGeo) const;

 private:
  double theta_;
};

// Smallest angular separation of two ideal points, in [0, pi].
double angular_distance(const BoundaryPoint& p, const BoundaryPoint& q);

// Point strictly inside the unit disk.
class InteriorPoint {
 public:
  InteriorPoint() : z_(0.0, 0.0) {}
  explicit InteriorPoint(Complex z);
  InteriorPoint(double x, double y) : InteriorPoint(Complex(x, y)) {}

  Complex z() const { return z_; }
  double x() const { return z_.real(); }
  double y() const { return z_.imag(); }

 private:
  Complex z_;
};

double hyperbolic_distance(const InteriorPoint& p, const InteriorPoint& q);

// Moebius transformation z -> (a z + b) / (c z + d), optionally preceded by
// complex conjugation (anti-conformal maps, used for reflections). The
// determinant is normalized to 1 on construction.
class MoebiusMap {
 public:
  MoebiusMap();  // identity
  MoebiusMap(Complex a, Complex b, Complex c, Complex d, bool conjugate_first = false);

  static MoebiusMap identity();
  static MoebiusMap rotation(double phi);
  // Disk automorphism sending z0 to the origin.
  static MoebiusMap to_origin(const InteriorPoint& z0);
  // Standard map from the unit disk onto the upper half-plane,
  // z -> i (1 - z) / (1 + z); sends 1 -> 0, -1 -> infinity, 0 -> i.
  static MoebiusMap cayley();
  // Unique map sending the triple (z1, z2, z3) to (0, 1, infinity).
  static MoebiusMap three_point(Complex z1, Complex z2, Complex z3);
  // Reflection of the disk across the geodesic with ideal endpoints p, q.
  static MoebiusMap reflection(const BoundaryPoint& p, const BoundaryPoint& q);

  MoebiusMap inverse() const;
  bool anti() const { return conj_; }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }

  Complex apply(Complex z) const;
  // Homogeneous evaluation; safe when z maps to/through infinity.
  std::pair<Complex, Complex> apply_hom(Complex num, Complex den) const;
  // |f'(z)| (or |d f / d zbar| for anti maps).
  double deriv_abs(Complex z) const;

  BoundaryPoint apply(const BoundaryPoint& p) const;
  InteriorPoint apply(const InteriorPoint& p) const;

  friend MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g);  // f after g

 private:
  Complex a_, b_, c_, d_;
  bool conj_;
  void normalize();
};

MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g);

// Geodesic of the disk model given by two distinct ideal endpoints.
// Realized as either a circular arc orthogonal to the unit circle or a
// diameter.
class Geodesic {
 public:
  Geodesic(const BoundaryPoint& p, const BoundaryPoint& q);

  const BoundaryPoint& p() const { return p_; }
  const BoundaryPoint& q() const { return q_; }

  bool is_diameter() const { return diameter_; }
  Complex center() const { return center_; }  // valid when !is_diameter()
  double radius() const { return radius_; }

  // Signed side in disk coordinates: positive on one side, negative on the
  // other, ~0 on the geodesic. Sign convention is fixed per geodesic.
  double side(Complex z) const;
  // The side value of the disk center (origin).
  double side_of_origin() const { return side(Complex(0, 0)); }

  double distance(const InteriorPoint& z) const;
  // Perpendicular foot of z on the geodesic.
  InteriorPoint foot(const InteriorPoint& z) const;

 private:
  BoundaryPoint p_, q_;
  bool diameter_;
  Complex center_;
  double radius_;
  Complex tangent_;  // unit chord direction for the diameter case
};

// Per-vertex horocycle sizes. A size s is the Euclidean diameter of the
// horocycle after the vertex chart (rotate the vertex to angle 0, then the
// Cayley map: the vertex lands at x = 0 on the half-plane boundary). Size 1
// corresponds to the horocycle through the disk center.
class Decoration {
 public:
  Decoration() = default;
  explicit Decoration(std::vector<double> sizes);
  static Decoration unit(int n_vertices);
  static Decoration uniform(int n_vertices, double s);

  int size() const { return static_cast<int>(sizes_.size()); }
  double at(int vertex_index) const;
  Decoration scaled(double factor) const;
  const std::vector<double>& sizes() const { return sizes_; }

 private:
  std::vector<double> sizes_;
};

// Cross ratio (d1-d3)(d2-d4) / ((d2-d3)(d1-d4)) on unit-circle
// representatives; real for concircular points.
double cross_ratio(const BoundaryPoint& d1, const BoundaryPoint& d2,
                   const BoundaryPoint& d3, const BoundaryPoint& d4);

// Signed hyperbolic length of the geodesic [p, q] outside the two horocycles
// of sizes sp, sq; negative when the horocycles overlap, zero when tangent.
double truncated_distance(const BoundaryPoint& p, const BoundaryPoint& q,
                          double sp, double sq);

// Distance from an interior point to the horocycle at p of size sp, clamped
// at zero when the point lies inside the horodisk.
double truncated_distance_to_interior(const BoundaryPoint& p, double sp,
                                      const InteriorPoint& r);

// Transport of a horocycle through a Moebius map of the disk: returns the
// base point and size of the image horocycle.
std::pair<BoundaryPoint, double> transport_horocycle(const BoundaryPoint& p,
                                                     double s,
                                                     const MoebiusMap& m);

// Both intersection parameters of the horocycle at vertex v (size s) with the
// geodesic [v, w]: returns the intersection point (interior).
InteriorPoint horocycle_side_intersection(const BoundaryPoint& v,
                                          const BoundaryPoint& w, double s);

// Ideal quadrilateral attachment: returns (b1, b2) on the requested side of
// the geodesic [a0, a1] such that the quadrilateral (b1, b2, a1, a0) has cross
// ratio 2 and is invariant under the reflection across the geodesic through O
// orthogonal to [a0, a1]. b1 is adjacent to a0 along the circle.
enum class SideChoice {
  kTowardO,    // same side of [a0,a1] as O
  kOppositeO,  // opposite side from O
};
std::pair<BoundaryPoint, BoundaryPoint> make_regular_quadrilateral(
    const BoundaryPoint& a0, const BoundaryPoint& a1, const InteriorPoint& O,
    SideChoice side);

// Normalizing map sending a0 -> -1, a1 -> +1 on the half-plane boundary with
// the perpendicular geodesic through O mapped to the positive imaginary axis.
MoebiusMap normalize_side(const BoundaryPoint& a0, const BoundaryPoint& a1,
                          const InteriorPoint& O);

// Hyperbolic midpoint of the segment [p, q].
InteriorPoint hyperbolic_midpoint(const InteriorPoint& p, const InteriorPoint& q);

// Point at hyperbolic distance t from a along the segment [a, b] (t can
// exceed d(a,b); the geodesic is extended).
InteriorPoint point_along(const InteriorPoint& a, const InteriorPoint& b, double t);

}  // namespace scherk
