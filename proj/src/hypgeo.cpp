#include "scherk/hypgeo.hpp"

#include <algorithm>
#include <cmath>

namespace scherk {

namespace {

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

// Chart at a vertex: rotate the vertex to angle 0, then Cayley. The vertex
// lands at the half-plane boundary point 0.
MoebiusMap vertex_chart(double theta) {
  return compose(MoebiusMap::cayley(), MoebiusMap::rotation(-theta));
}

}  // namespace

// ---------------------------------------------------------------- BoundaryPoint

BoundaryPoint::BoundaryPoint(double theta) : theta_(wrap_angle(theta)) {
  require(std::isfinite(theta), ErrorCode::DomainError, "boundary angle not finite");
}

Complex BoundaryPoint::unit() const {
  return Complex(std::cos(theta_), std::sin(theta_));
}

bool BoundaryPoint::approx_equal(const BoundaryPoint& other, double eps) const {
  return angular_distance(*this, other) < eps;
}

double angular_distance(const BoundaryPoint& p, const BoundaryPoint& q) {
  double d = std::fabs(std::remainder(p.theta() - q.theta(), kTwoPi));
  return d;
}

// ---------------------------------------------------------------- InteriorPoint

InteriorPoint::InteriorPoint(Complex z) : z_(z) {
  require(std::isfinite(z.real()) && std::isfinite(z.imag()),
          ErrorCode::DomainError, "interior point not finite");
  require(std::abs(z) < 1.0 - kEpsGeo, ErrorCode::DomainError,
          "point not strictly inside the unit disk");
}

double hyperbolic_distance(const InteriorPoint& p, const InteriorPoint& q) {
  double num = std::norm(p.z() - q.z());
  double den = (1.0 - std::norm(p.z())) * (1.0 - std::norm(q.z()));
  return std::acosh(1.0 + 2.0 * num / den);
}

// ------------------------------------------------------------------ MoebiusMap

MoebiusMap::MoebiusMap() : a_(1), b_(0), c_(0), d_(1), conj_(false) {}

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d, bool conjugate_first)
    : a_(a), b_(b), c_(c), d_(d), conj_(conjugate_first) {
  normalize();
}

void MoebiusMap::normalize() {
  Complex det = a_ * d_ - b_ * c_;
  require(std::abs(det) > 1e-300, ErrorCode::DomainError, "degenerate Moebius map");
  Complex s = std::sqrt(det);
  a_ /= s;
  b_ /= s;
  c_ /= s;
  d_ /= s;
}

MoebiusMap MoebiusMap::identity() { return MoebiusMap(); }

MoebiusMap MoebiusMap::rotation(double phi) {
  Complex e(std::cos(phi / 2), std::sin(phi / 2));
  return MoebiusMap(e, 0, 0, std::conj(e));
}

MoebiusMap MoebiusMap::to_origin(const InteriorPoint& z0) {
  Complex z = z0.z();
  return MoebiusMap(1, -z, -std::conj(z), 1);
}

MoebiusMap MoebiusMap::cayley() { return MoebiusMap(Complex(0, -1), Complex(0, 1), 1, 1); }

MoebiusMap MoebiusMap::three_point(Complex z1, Complex z2, Complex z3) {
  // z -> ((z - z1)(z2 - z3)) / ((z - z3)(z2 - z1)) sends (z1,z2,z3) to (0,1,inf).
  Complex p = z2 - z3, q = z2 - z1;
  return MoebiusMap(p, -z1 * p, q, -z3 * q);
}

MoebiusMap MoebiusMap::reflection(const BoundaryPoint& p, const BoundaryPoint& q) {
  require(!p.approx_equal(q), ErrorCode::CoincidentPoints,
          "reflection axis endpoints coincide");
  // Midpoint of one boundary arc gives a third anchor point off the geodesic.
  double mid = p.theta() + 0.5 * std::remainder(q.theta() - p.theta(), kTwoPi);
  if (angular_distance(p, q) > kPi - kEpsGeo) mid = p.theta() + kPi / 2;
  MoebiusMap m = three_point(p.unit(), BoundaryPoint(mid).unit(), q.unit());
  // The geodesic [p,q] maps to the imaginary axis; conjugate z -> -conj(z).
  MoebiusMap n(-1, 0, 0, 1, /*conjugate_first=*/true);
  return compose(compose(m.inverse(), n), m);
}

MoebiusMap MoebiusMap::inverse() const {
  if (!conj_) return MoebiusMap(d_, -b_, -c_, a_);
  // f(z) = M conj(z); inverse is z -> conj(M^{-1}) conj(z).
  return MoebiusMap(std::conj(d_), std::conj(-b_), std::conj(-c_), std::conj(a_), true);
}

Complex MoebiusMap::apply(Complex z) const {
  Complex w = conj_ ? std::conj(z) : z;
  return (a_ * w + b_) / (c_ * w + d_);
}

std::pair<Complex, Complex> MoebiusMap::apply_hom(Complex num, Complex den) const {
  Complex n = conj_ ? std::conj(num) : num;
  Complex m = conj_ ? std::conj(den) : den;
  return {a_ * n + b_ * m, c_ * n + d_ * m};
}

double MoebiusMap::deriv_abs(Complex z) const {
  Complex w = conj_ ? std::conj(z) : z;
  double den = std::norm(c_ * w + d_);
  return 1.0 / den;  // |det| == 1 after normalization
}

BoundaryPoint MoebiusMap::apply(const BoundaryPoint& p) const {
  auto [n, m] = apply_hom(p.unit(), 1.0);
  require(std::abs(m) > 1e-300, ErrorCode::DomainError,
          "boundary point maps to infinity");
  Complex w = n / m;
  return BoundaryPoint(std::arg(w));
}

InteriorPoint MoebiusMap::apply(const InteriorPoint& p) const {
  Complex w = apply(p.z());
  // Guard against rounding drift just outside the disk.
  double r = std::abs(w);
  if (r >= 1.0 - kEpsGeo) w *= (1.0 - 2 * kEpsGeo) / r;
  return InteriorPoint(w);
}

MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g) {
  Complex ga = g.a_, gb = g.b_, gc = g.c_, gd = g.d_;
  if (f.conj_) {
    ga = std::conj(ga);
    gb = std::conj(gb);
    gc = std::conj(gc);
    gd = std::conj(gd);
  }
  return MoebiusMap(f.a_ * ga + f.b_ * gc, f.a_ * gb + f.b_ * gd,
                    f.c_ * ga + f.d_ * gc, f.c_ * gb + f.d_ * gd,
                    f.conj_ != g.conj_);
}

// -------------------------------------------------------------------- Geodesic

Geodesic::Geodesic(const BoundaryPoint& p, const BoundaryPoint& q) : p_(p), q_(q) {
  require(!p.approx_equal(q), ErrorCode::CoincidentPoints,
          "geodesic endpoints coincide");
  Complex u = p.unit(), v = q.unit();
  double det = u.real() * v.imag() - u.imag() * v.real();
  if (std::fabs(det) < 1e-9) {
    // Antipodal endpoints: the geodesic is a diameter.
    diameter_ = true;
    center_ = Complex(0, 0);
    radius_ = 0;
    tangent_ = u;
  } else {
    diameter_ = false;
    // Solve Re(c * conj(u)) = 1, Re(c * conj(v)) = 1.
    double cx = (v.imag() - u.imag()) / det;
    double cy = (u.real() - v.real()) / det;
    center_ = Complex(cx, cy);
    radius_ = std::sqrt(std::norm(center_) - 1.0);
    tangent_ = Complex(0, 0);
  }
}

double Geodesic::side(Complex z) const {
  if (diameter_) {
    return tangent_.real() * z.imag() - tangent_.imag() * z.real();
  }
  return std::norm(z - center_) - radius_ * radius_;
}

double Geodesic::distance(const InteriorPoint& z) const {
  double lam = 1.0 - std::norm(z.z());
  double s;
  if (diameter_) {
    s = 2.0 * std::fabs(tangent_.real() * z.y() - tangent_.imag() * z.x()) / lam;
  } else {
    s = std::fabs(std::norm(z.z() - center_) - radius_ * radius_) / (radius_ * lam);
  }
  return std::asinh(s);
}

InteriorPoint Geodesic::foot(const InteriorPoint& z) const {
  // Map (p, q) -> (0, inf); the geodesic becomes the positive imaginary axis
  // after an orientation fix, and the foot of w is i |w|.
  double mid = p_.theta() + 0.5 * std::remainder(q_.theta() - p_.theta(), kTwoPi);
  if (angular_distance(p_, q_) > kPi - kEpsGeo) mid = p_.theta() + kPi / 2;
  MoebiusMap m = MoebiusMap::three_point(p_.unit(), BoundaryPoint(mid).unit(), q_.unit());
  Complex w = m.apply(z.z());
  if (w.imag() < 0) {
    m = compose(MoebiusMap(-1, 0, 0, 1), m);
    w = -w;
  }
  Complex f(0.0, std::abs(w));
  Complex back = m.inverse().apply(f);
  double r = std::abs(back);
  if (r >= 1.0 - kEpsGeo) back *= (1.0 - 2 * kEpsGeo) / r;
  return InteriorPoint(back);
}

// ------------------------------------------------------------------ Decoration

Decoration::Decoration(std::vector<double> sizes) : sizes_(std::move(sizes)) {
  for (double s : sizes_)
    require(s > 0 && std::isfinite(s), ErrorCode::DomainError,
            "horocycle sizes must be positive");
}

Decoration Decoration::unit(int n) { return uniform(n, 1.0); }

Decoration Decoration::uniform(int n, double s) {
  require(n >= 0, ErrorCode::DomainError, "negative vertex count");
  return Decoration(std::vector<double>(static_cast<size_t>(n), s));
}

double Decoration::at(int vertex_index) const {
  require(vertex_index >= 0 && vertex_index < size(), ErrorCode::MissingDecoration,
          "no horocycle size for vertex " + std::to_string(vertex_index));
  return sizes_[static_cast<size_t>(vertex_index)];
}

Decoration Decoration::scaled(double factor) const {
  std::vector<double> s = sizes_;
  for (double& v : s) v *= factor;
  return Decoration(std::move(s));
}

// ------------------------------------------------------------------ operations

double cross_ratio(const BoundaryPoint& d1, const BoundaryPoint& d2,
                   const BoundaryPoint& d3, const BoundaryPoint& d4) {
  const BoundaryPoint* pts[4] = {&d1, &d2, &d3, &d4};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      require(!pts[i]->approx_equal(*pts[j]), ErrorCode::CoincidentPoints,
              "cross ratio of coincident points");
  Complex z1 = d1.unit(), z2 = d2.unit(), z3 = d3.unit(), z4 = d4.unit();
  Complex v = ((z1 - z3) * (z2 - z4)) / ((z2 - z3) * (z1 - z4));
  require(std::fabs(v.imag()) < 1e-10 * std::max(1.0, std::fabs(v.real())),
          ErrorCode::DomainError, "cross ratio not real");
  return v.real();
}

double truncated_distance(const BoundaryPoint& p, const BoundaryPoint& q,
                          double sp, double sq) {
  require(sp > 0 && sq > 0, ErrorCode::DomainError, "horocycle sizes must be positive");
  require(!p.approx_equal(q), ErrorCode::CoincidentPoints,
          "truncated distance between coincident ideal points");
  // Rotate the pair symmetrically about angle 0, keeping both away from pi,
  // then evaluate in the half-plane chart x = tan(theta/2).
  double d = std::remainder(q.theta() - p.theta(), kTwoPi);
  double phi_p = -d / 2, phi_q = d / 2;
  double xp = std::tan(phi_p / 2), xq = std::tan(phi_q / 2);
  // Horocycle sizes transported from the per-vertex chart into this chart.
  double tp = sp / (std::cos(phi_p / 2) * std::cos(phi_p / 2));
  double tq = sq / (std::cos(phi_q / 2) * std::cos(phi_q / 2));
  double dx = xq - xp;
  return std::log(dx * dx / (tp * tq));
}

double truncated_distance_to_interior(const BoundaryPoint& p, double sp,
                                      const InteriorPoint& r) {
  require(sp > 0, ErrorCode::DomainError, "horocycle size must be positive");
  MoebiusMap chart = vertex_chart(p.theta());
  Complex w = chart.apply(r.z());
  // Distance below the horoball Im(-1/w) >= 1/sp, clamped at the horocycle.
  double busemann = w.imag() / std::norm(w);
  double d = -std::log(sp * busemann);
  return std::max(0.0, d);
}

std::pair<BoundaryPoint, double> transport_horocycle(const BoundaryPoint& p,
                                                     double s,
                                                     const MoebiusMap& m) {
  BoundaryPoint p2 = m.apply(p);
  MoebiusMap t = compose(compose(vertex_chart(p2.theta()), m),
                         vertex_chart(p.theta()).inverse());
  double scale = t.deriv_abs(Complex(0, 0));
  return {p2, s * scale};
}

InteriorPoint horocycle_side_intersection(const BoundaryPoint& v,
                                          const BoundaryPoint& w, double s) {
  require(s > 0, ErrorCode::DomainError, "horocycle size must be positive");
  require(!v.approx_equal(w), ErrorCode::CoincidentPoints,
          "horocycle intersection with degenerate side");
  MoebiusMap chart = vertex_chart(v.theta());
  Complex z;
  if (angular_distance(v, w) > kPi - 1e-9) {
    // The side maps to the vertical axis; the horocycle tops out at height s.
    z = Complex(0.0, s);
  } else {
    auto [num, den] = chart.apply_hom(w.unit(), 1.0);
    double xw = (num / den).real();
    double g = xw / 2;
    double denom = s * s + 4 * g * g;
    z = Complex(2 * g * s * s / denom, 4 * g * g * s / denom);
  }
  Complex back = chart.inverse().apply(z);
  double r = std::abs(back);
  if (r >= 1.0 - kEpsGeo) back *= (1.0 - 2 * kEpsGeo) / r;
  return InteriorPoint(back);
}

MoebiusMap normalize_side(const BoundaryPoint& a0, const BoundaryPoint& a1,
                          const InteriorPoint& O) {
  require(!a0.approx_equal(a1), ErrorCode::DegenerateSide,
          "side endpoints coincide");
  // Stage 1: (a0, mid, a1) -> (0, 1, inf), oriented so the disk maps to the
  // upper half-plane.
  double mid = a0.theta() + 0.5 * std::remainder(a1.theta() - a0.theta(), kTwoPi);
  if (angular_distance(a0, a1) > kPi - kEpsGeo) mid = a0.theta() + kPi / 2;
  MoebiusMap s1 =
      MoebiusMap::three_point(a0.unit(), BoundaryPoint(mid).unit(), a1.unit());
  if (s1.apply(Complex(0, 0)).imag() < 0 || s1.apply(O.z()).imag() < 0) {
    double mid2 = mid + kPi;
    s1 = MoebiusMap::three_point(a0.unit(), BoundaryPoint(mid2).unit(), a1.unit());
  }
  require(s1.apply(O.z()).imag() > 0, ErrorCode::DomainError,
          "side normalization failed to orient the half-plane");
  // Stage 2: (0, inf) -> (-1, +1) keeping the half-plane.
  MoebiusMap s2(1, -1, 1, 1);
  MoebiusMap m = compose(s2, s1);
  // Stage 3: slide along the geodesic (-1, 1) until the foot of O is at i.
  Complex w = m.apply(O.z());
  double r = std::abs(w);
  require(r > kEpsGeo, ErrorCode::DomainError, "base point on the side geodesic");
  Complex foot = w / r;  // radial projection onto the unit semicircle
  double psi = std::arg(foot);
  require(psi > 0 && psi < kPi, ErrorCode::DomainError,
          "foot not on the upper semicircle");
  double th = -std::cos(psi) / (1.0 + std::sin(psi));
  double t2 = std::atanh(th);
  MoebiusMap slide(std::cosh(t2), std::sinh(t2), std::sinh(t2), std::cosh(t2));
  return compose(slide, m);
}

std::pair<BoundaryPoint, BoundaryPoint> make_regular_quadrilateral(
    const BoundaryPoint& a0, const BoundaryPoint& a1, const InteriorPoint& O,
    SideChoice side) {
  MoebiusMap m = normalize_side(a0, a1, O);
  double y = std::abs(m.apply(O.z()));
  require(std::fabs(std::log(y)) > 1e-9, ErrorCode::DomainError,
          "base point lies on the side geodesic");
  const double beta = 3.0 - 2.0 * std::sqrt(2.0);  // cross-ratio-2 solution
  bool o_outside = y > 1.0;  // O outside the unit semicircle region
  bool place_outside = (side == SideChoice::kTowardO) == o_outside;
  double b = place_outside ? 1.0 / beta : beta;
  MoebiusMap inv = m.inverse();
  auto to_boundary = [&inv](double x) {
    auto [num, den] = inv.apply_hom(Complex(x, 0), 1.0);
    return BoundaryPoint(std::arg(num / den));
  };
  BoundaryPoint b1 = to_boundary(-b);
  BoundaryPoint b2 = to_boundary(+b);
  return {b1, b2};
}

InteriorPoint hyperbolic_midpoint(const InteriorPoint& p, const InteriorPoint& q) {
  return point_along(p, q, 0.5 * hyperbolic_distance(p, q));
}

InteriorPoint point_along(const InteriorPoint& a, const InteriorPoint& b, double t) {
  MoebiusMap m = MoebiusMap::to_origin(a);
  Complex w = m.apply(b.z());
  double r = std::abs(w);
  require(r > kEpsGeo, ErrorCode::CoincidentPoints,
          "direction of a degenerate segment");
  double rho = std::tanh(t / 2);
  require(rho < 1.0 - kEpsGeo, ErrorCode::DomainError, "parameter too large");
  Complex z = w / r * rho;
  return m.inverse().apply(InteriorPoint(z));
}

}  // namespace scherk
