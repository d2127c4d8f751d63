#include "scherk/meshing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace scherk {

Geodesic geodesic_through(const InteriorPoint& p, const InteriorPoint& q) {
  MoebiusMap m = MoebiusMap::to_origin(p);
  Complex w = m.apply(q.z());
  double r = std::abs(w);
  require(r > kEpsGeo, ErrorCode::CoincidentPoints, "geodesic through equal points");
  Complex dir = w / r;
  MoebiusMap inv = m.inverse();
  BoundaryPoint e1(std::arg(inv.apply(dir * (1.0 - 1e-15))));
  BoundaryPoint e2(std::arg(inv.apply(-dir * (1.0 - 1e-15))));
  return Geodesic(e1, e2);
}

// ------------------------------------------------------------ TruncatedDomain

TruncatedDomain::TruncatedDomain(ScherkPolygon parent, int level, Decoration base)
    : parent_(std::move(parent)), level_(level), base_(std::move(base)), dec_() {
  require(level_ >= 0, ErrorCode::DomainError, "level must be nonnegative");
  int n = parent_.num_vertices();
  require(base_.size() == n, ErrorCode::MissingDecoration,
          "base decoration size mismatch");
  dec_ = base_.scaled(std::pow(2.0, -level_));

  // The base horocycles must be pairwise disjoint.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      require(truncated_distance(parent_.vertex(i), parent_.vertex(j), base_.at(i),
                                 base_.at(j)) > 0,
              ErrorCode::DecorationOverlap, "base horocycles intersect");

  // Horocycle intersections: entry[j] on side j near vertex j, exit[j] near
  // vertex j+1.
  std::vector<InteriorPoint> entry, exit;
  for (int j = 0; j < n; ++j) {
    entry.push_back(
        horocycle_side_intersection(parent_.vertex(j), parent_.vertex(j + 1), dec_.at(j)));
    exit.push_back(horocycle_side_intersection(parent_.vertex(j + 1), parent_.vertex(j),
                                               dec_.at((j + 1) % n)));
  }

  InteriorPoint inside = parent_.interior_point();
  for (int j = 0; j < n; ++j) {
    const InteriorPoint& s0 = entry[static_cast<size_t>(j)];
    const InteriorPoint& s1 = exit[static_cast<size_t>(j)];
    arcs_.push_back(BoundaryArc{BoundaryArc::Kind::kSide, j, parent_.edge_label(j),
                                s0, s1, parent_.edge_geodesic(j),
                                parent_.domain_side_sign(j),
                                hyperbolic_distance(s0, s1)});

    int v = (j + 1) % n;
    const InteriorPoint& c0 = exit[static_cast<size_t>(j)];
    const InteriorPoint& c1 = entry[static_cast<size_t>(v)];
    Geodesic cg = geodesic_through(c0, c1);
    double s = cg.side(inside.z());
    if (std::fabs(s) < 1e-12) {
      // Fall back to a probe near the cusp vertex: the domain is opposite.
      Complex cusp = parent_.vertex(v).unit() * (1.0 - 1e-9);
      s = -cg.side(cusp);
    }
    require(std::fabs(s) > 0, ErrorCode::DomainError, "cannot orient chord");
    arcs_.push_back(BoundaryArc{BoundaryArc::Kind::kChord, v,
                                "g" + std::to_string(v), c0, c1, cg,
                                s > 0 ? 1.0 : -1.0, hyperbolic_distance(c0, c1)});
  }
}

bool TruncatedDomain::contains(Complex z, double tol) const {
  for (const BoundaryArc& a : arcs_) {
    double s = a.geodesic.side(z) * a.domain_sign;
    if (s < 0) {
      if (tol <= 0) return false;
      if (a.geodesic.distance(InteriorPoint(z)) > tol) return false;
    }
  }
  return true;
}

double TruncatedDomain::clearance(Complex z, int exclude_arc) const {
  double best = std::numeric_limits<double>::infinity();
  InteriorPoint p(z);
  for (int i = 0; i < num_arcs(); ++i) {
    if (i == exclude_arc) continue;
    best = std::min(best, arcs_[static_cast<size_t>(i)].geodesic.distance(p));
  }
  return best;
}

double TruncatedDomain::chord_clearance(Complex z) const {
  double best = std::numeric_limits<double>::infinity();
  InteriorPoint p(z);
  for (const BoundaryArc& a : arcs_)
    if (a.kind == BoundaryArc::Kind::kChord)
      best = std::min(best, a.geodesic.distance(p));
  return best;
}

namespace {

// Unit tangent of the arc at an endpoint, pointing along the traversal
// direction (arc subtends less than pi of its circle).
Complex arc_tangent_at(const BoundaryArc& a, bool at_start) {
  Complex z = at_start ? a.start.z() : a.end.z();
  Complex chord = a.end.z() - a.start.z();
  Complex t;
  if (a.geodesic.is_diameter()) {
    t = chord;
  } else {
    t = Complex(0, 1) * (z - a.geodesic.center());
    if (t.real() * chord.real() + t.imag() * chord.imag() < 0) t = -t;
  }
  return t / std::abs(t);
}

}  // namespace

double TruncatedDomain::area() const {
  // Geodesic polygon: area = |sum of boundary turns| - 2 pi.
  double turn_sum = 0;
  int m = num_arcs();
  for (int i = 0; i < m; ++i) {
    const BoundaryArc& a = arcs_[static_cast<size_t>(i)];
    const BoundaryArc& b = arcs_[static_cast<size_t>((i + 1) % m)];
    Complex tin = arc_tangent_at(a, false);
    Complex tout = arc_tangent_at(b, true);
    double cross = tin.real() * tout.imag() - tin.imag() * tout.real();
    double dot = tin.real() * tout.real() + tin.imag() * tout.imag();
    turn_sum += std::atan2(cross, dot);
  }
  return std::fabs(turn_sum) - kTwoPi;
}

TruncatedDomain truncate(const ScherkPolygon& g, int level) {
  return truncate(g, level, disjoint_uniform_decoration(g));
}

TruncatedDomain truncate(const ScherkPolygon& g, int level, const Decoration& base) {
  return TruncatedDomain(g, level, base);
}

// -------------------------------------------------------------- triangulation

namespace {

double hyp_dist(Complex a, Complex b) {
  double num = std::norm(a - b);
  double den = (1.0 - std::norm(a)) * (1.0 - std::norm(b));
  return std::acosh(1.0 + 2.0 * num / den);
}

struct SizeField {
  const TruncatedDomain* dom;
  double h;
  double grading;
  double floor_size;

  // Local gauge: distance to the nearest boundary geodesic that is not the
  // closest arc or one of its two neighbors. In cusp corridors this is the
  // corridor width; near a single wall it stays large, so sizes do not
  // collapse against the boundary.
  double gauge(Complex z) const {
    const auto& arcs = dom->arcs();
    int m = static_cast<int>(arcs.size());
    InteriorPoint p(z);
    int nearest = 0;
    double dmin = std::numeric_limits<double>::infinity();
    std::vector<double> d(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      d[static_cast<size_t>(i)] = arcs[static_cast<size_t>(i)].geodesic.distance(p);
      if (d[static_cast<size_t>(i)] < dmin) {
        dmin = d[static_cast<size_t>(i)];
        nearest = i;
      }
    }
    double g = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (i == nearest || i == (nearest + 1) % m || i == (nearest + m - 1) % m)
        continue;
      g = std::min(g, d[static_cast<size_t>(i)]);
    }
    return g;
  }

  double operator()(Complex z) const {
    double s = h;
    double dch = dom->chord_clearance(z);
    s = std::min(s, h * std::max(1.0 / grading, std::min(1.0, dch)));
    s = std::min(s, 0.85 * gauge(z));
    return std::max(s, floor_size);
  }
};

Complex poincare_to_klein(Complex z) { return 2.0 * z / (1.0 + std::norm(z)); }

Complex klein_to_poincare(Complex k) {
  double n = std::norm(k);
  if (n >= 1.0) k /= std::sqrt(n) * (1 + 1e-12);
  return k / (1.0 + std::sqrt(std::max(0.0, 1.0 - std::norm(k))));
}

struct Delaunay {
  struct Tri {
    std::array<int, 3> v;
    std::array<int, 3> nbr;  // neighbor opposite v[i]; -1 on the hull
    bool alive = true;
  };

  std::vector<Complex> pts;
  std::vector<Tri> tris;
  std::set<std::pair<int, int>> constrained;
  int last_alive = 0;

  static double orient(Complex a, Complex b, Complex c) {
    return (b.real() - a.real()) * (c.imag() - a.imag()) -
           (b.imag() - a.imag()) * (c.real() - a.real());
  }

  bool in_circle(const Tri& t, Complex p) const {
    Complex a = pts[static_cast<size_t>(t.v[0])];
    Complex b = pts[static_cast<size_t>(t.v[1])];
    Complex c = pts[static_cast<size_t>(t.v[2])];
    double ax = a.real() - p.real(), ay = a.imag() - p.imag();
    double bx = b.real() - p.real(), by = b.imag() - p.imag();
    double cx = c.real() - p.real(), cy = c.imag() - p.imag();
    double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
                 (bx * bx + by * by) * (ax * cy - cx * ay) +
                 (cx * cx + cy * cy) * (ax * by - bx * ay);
    return det > 0;
  }

  void init_super() {
    pts.push_back(Complex(0.0, 16.0));
    pts.push_back(Complex(-16.0, -12.0));
    pts.push_back(Complex(16.0, -12.0));
    tris.push_back({{0, 1, 2}, {-1, -1, -1}, true});
  }

  bool tri_contains(int ti, Complex p) const {
    const Tri& t = tris[static_cast<size_t>(ti)];
    for (int e = 0; e < 3; ++e) {
      Complex a = pts[static_cast<size_t>(t.v[e])];
      Complex b = pts[static_cast<size_t>(t.v[(e + 1) % 3])];
      if (orient(a, b, p) < -1e-18) return false;
    }
    return true;
  }

  int locate(Complex p) const {
    // Walk from the most recent alive triangle.
    int cur = last_alive;
    if (cur >= static_cast<int>(tris.size()) || !tris[static_cast<size_t>(cur)].alive)
      cur = -1;
    if (cur >= 0) {
      for (int step = 0; step < 4096; ++step) {
        const Tri& t = tris[static_cast<size_t>(cur)];
        int next = -1;
        for (int e = 0; e < 3; ++e) {
          Complex a = pts[static_cast<size_t>(t.v[(e + 1) % 3])];
          Complex b = pts[static_cast<size_t>(t.v[(e + 2) % 3])];
          if (orient(a, b, p) < -1e-18) {
            next = t.nbr[e];
            break;
          }
        }
        if (next < 0) {
          if (tri_contains(cur, p)) return cur;
          break;
        }
        if (!tris[static_cast<size_t>(next)].alive) break;
        cur = next;
      }
    }
    for (int i = static_cast<int>(tris.size()) - 1; i >= 0; --i)
      if (tris[static_cast<size_t>(i)].alive && tri_contains(i, p)) return i;
    return -1;
  }

  static std::pair<int, int> edge_key(int a, int b) {
    return {std::min(a, b), std::max(a, b)};
  }

  // Inserts point p; returns its index, or -1 if it duplicates a node.
  int insert(Complex p) {
    int seed = locate(p);
    require(seed >= 0, ErrorCode::MeshFailure, "point location failed");

    // Grow the cavity of circumcircle violations without crossing
    // constrained edges.
    std::vector<int> cavity;
    std::set<int> in_cavity;
    std::vector<int> stack{seed};
    in_cavity.insert(seed);
    while (!stack.empty()) {
      int ti = stack.back();
      stack.pop_back();
      cavity.push_back(ti);
      const Tri t = tris[static_cast<size_t>(ti)];
      for (int e = 0; e < 3; ++e) {
        int nb = t.nbr[e];
        if (nb < 0 || in_cavity.count(nb)) continue;
        int u = t.v[(e + 1) % 3], v = t.v[(e + 2) % 3];
        if (constrained.count(edge_key(u, v))) continue;
        if (in_circle(tris[static_cast<size_t>(nb)], p)) {
          in_cavity.insert(nb);
          stack.push_back(nb);
        }
      }
    }

    // Collect the cavity boundary (edges whose twin is outside the cavity).
    struct BEdge {
      int u, v, outer;
    };
    std::vector<BEdge> boundary;
    for (int ti : cavity) {
      const Tri& t = tris[static_cast<size_t>(ti)];
      for (int e = 0; e < 3; ++e) {
        int nb = t.nbr[e];
        if (nb >= 0 && in_cavity.count(nb)) continue;
        boundary.push_back({t.v[(e + 1) % 3], t.v[(e + 2) % 3], nb});
      }
    }
    require(!boundary.empty(), ErrorCode::MeshFailure, "empty cavity boundary");

    int pi = static_cast<int>(pts.size());
    pts.push_back(p);
    for (int ti : cavity) tris[static_cast<size_t>(ti)].alive = false;

    // Fan the cavity boundary to p.
    std::map<std::pair<int, int>, std::pair<int, int>> open_edges;  // edge -> (tri, slot)
    std::vector<int> created;
    for (const BEdge& be : boundary) {
      Tri nt;
      nt.v = {pi, be.u, be.v};
      nt.nbr = {be.outer, -1, -1};
      int nti = static_cast<int>(tris.size());
      tris.push_back(nt);
      created.push_back(nti);
      if (be.outer >= 0) {
        Tri& ot = tris[static_cast<size_t>(be.outer)];
        for (int e = 0; e < 3; ++e) {
          int a = ot.v[(e + 1) % 3], b = ot.v[(e + 2) % 3];
          if (edge_key(a, b) == edge_key(be.u, be.v)) ot.nbr[e] = nti;
        }
      }
      // Stitch the two spoke edges (p, u) and (p, v).
      for (int e = 1; e <= 2; ++e) {
        Tri& cur = tris[static_cast<size_t>(nti)];
        int a = cur.v[(e + 1) % 3], b = cur.v[(e + 2) % 3];
        auto key = edge_key(a, b);
        auto it = open_edges.find(key);
        if (it == open_edges.end()) {
          open_edges[key] = {nti, e};
        } else {
          auto [oti, oe] = it->second;
          tris[static_cast<size_t>(nti)].nbr[e] = oti;
          tris[static_cast<size_t>(oti)].nbr[oe] = nti;
          open_edges.erase(it);
        }
      }
    }
    require(open_edges.empty(), ErrorCode::MeshFailure, "cavity fan failed to close");
    last_alive = created.back();
    return pi;
  }

  bool has_edge(int u, int v) const {
    for (const Tri& t : tris) {
      if (!t.alive) continue;
      for (int e = 0; e < 3; ++e) {
        int a = t.v[e], b = t.v[(e + 1) % 3];
        if ((a == u && b == v) || (a == v && b == u)) return true;
      }
    }
    return false;
  }
};

}  // namespace

namespace {

// Builds the constrained Delaunay triangulation of the given points (boundary
// loop first) and extracts the inside part.
TriMesh build_inside_mesh(const TruncatedDomain& dom, const std::vector<Complex>& bnodes,
                          const std::vector<int>& bmarkers,
                          const std::vector<Complex>& inodes, double h,
                          Delaunay* out_dt = nullptr,
                          std::vector<int>* out_bindex = nullptr) {
  int nb = static_cast<int>(bnodes.size());
  Delaunay dt;
  dt.init_super();
  std::vector<int> bindex(static_cast<size_t>(nb));
  for (int i = 0; i < nb; ++i)
    bindex[static_cast<size_t>(i)] = dt.insert(bnodes[static_cast<size_t>(i)]);
  for (int i = 0; i < nb; ++i) {
    int u = bindex[static_cast<size_t>(i)];
    int v = bindex[static_cast<size_t>((i + 1) % nb)];
    if (!dt.has_edge(u, v))
      fail(ErrorCode::MeshFailure, "boundary edge missing from Delaunay graph");
    dt.constrained.insert(Delaunay::edge_key(u, v));
  }
  for (const Complex& z : inodes) dt.insert(z);

  TriMesh mesh;
  mesh.target_h = h;
  std::vector<int> remap(dt.pts.size() + 4096, -1);
  auto extract = [&]() {
    remap.assign(dt.pts.size(), -1);
    mesh.nodes.clear();
    mesh.node_marker.clear();
    mesh.triangles.clear();
    mesh.boundary_loop.clear();
    for (int i = 0; i < nb; ++i) {
      remap[static_cast<size_t>(bindex[static_cast<size_t>(i)])] =
          static_cast<int>(mesh.nodes.size());
      mesh.nodes.push_back(bnodes[static_cast<size_t>(i)]);
      mesh.node_marker.push_back(bmarkers[static_cast<size_t>(i)]);
      mesh.boundary_loop.push_back(i);
    }
    for (const Delaunay::Tri& t : dt.tris) {
      if (!t.alive) continue;
      if (t.v[0] < 3 || t.v[1] < 3 || t.v[2] < 3) continue;  // super vertex
      Complex c = (dt.pts[static_cast<size_t>(t.v[0])] +
                   dt.pts[static_cast<size_t>(t.v[1])] +
                   dt.pts[static_cast<size_t>(t.v[2])]) /
                  3.0;
      if (!dom.contains(c, 1e-9)) continue;
      std::array<int, 3> tri{};
      for (int e = 0; e < 3; ++e) {
        int& r = remap[static_cast<size_t>(t.v[e])];
        if (r < 0) {
          r = static_cast<int>(mesh.nodes.size());
          mesh.nodes.push_back(dt.pts[static_cast<size_t>(t.v[e])]);
          mesh.node_marker.push_back(-1);
        }
        tri[static_cast<size_t>(e)] = r;
      }
      Complex a = mesh.nodes[static_cast<size_t>(tri[0])];
      Complex b = mesh.nodes[static_cast<size_t>(tri[1])];
      Complex cc = mesh.nodes[static_cast<size_t>(tri[2])];
      if (Delaunay::orient(a, b, cc) < 0) std::swap(tri[1], tri[2]);
      mesh.triangles.push_back(tri);
    }
    for (auto& t : mesh.triangles) {
      int mi = 0;
      for (int e = 1; e < 3; ++e)
        if (t[static_cast<size_t>(e)] < t[static_cast<size_t>(mi)]) mi = e;
      std::rotate(t.begin(), t.begin() + mi, t.end());
    }
    std::sort(mesh.triangles.begin(), mesh.triangles.end());
  };
  extract();
  if (out_dt) *out_dt = dt;
  if (out_bindex) *out_bindex = bindex;
  return mesh;
}

}  // namespace

TriMesh triangulate(const TruncatedDomain& dom, double h, double grading) {
  require(h > 0, ErrorCode::DomainError, "mesh size must be positive");
  require(grading >= 1, ErrorCode::DomainError, "grading must be >= 1");
  SizeField size{&dom, h, grading, 1e-3 * h};

  // Boundary subdivision: nodes per arc (excluding the start, which is the
  // previous arc's end).
  std::vector<Complex> bnodes;
  std::vector<int> bmarkers;
  int arc_id = 0;
  for (const BoundaryArc& arc : dom.arcs()) {
    double L = arc.length;
    require(L > 1e-12, ErrorCode::MeshFailure, "degenerate boundary arc");
    // Walk the arc with the local size, then spread the remainder evenly.
    std::vector<double> cuts;
    double t = 0;
    int guard = 0;
    while (guard++ < 200000) {
      Complex z = point_along(arc.start, arc.end, std::min(t, L)).z();
      double step = size(z);
      if (t + 1.45 * step >= L) break;
      t += step;
      cuts.push_back(t);
    }
    for (double c : cuts) {
      bnodes.push_back(point_along(arc.start, arc.end, c).z());
      bmarkers.push_back(arc_id);
    }
    // Arc end node: corners between a side and a chord carry the side marker.
    int next = (arc_id + 1) % dom.num_arcs();
    bool this_side = arc.kind == BoundaryArc::Kind::kSide;
    bnodes.push_back(arc.end.z());
    bmarkers.push_back(this_side ? arc_id : next);
    ++arc_id;
  }
  int nb = static_cast<int>(bnodes.size());
  require(nb >= 3, ErrorCode::MeshFailure, "too few boundary nodes");

  // Phase 1: constrained Delaunay of the boundary nodes plus size-driven
  // circumcenter refinement.
  Delaunay dt;
  std::vector<int> bindex;
  build_inside_mesh(dom, bnodes, bmarkers, {}, h, &dt, &bindex);

  auto inside_tri = [&](const Delaunay::Tri& t) {
    for (int e = 0; e < 3; ++e)
      if (t.v[e] < 3) return false;
    Complex c = (dt.pts[static_cast<size_t>(t.v[0])] + dt.pts[static_cast<size_t>(t.v[1])] +
                 dt.pts[static_cast<size_t>(t.v[2])]) /
                3.0;
    return dom.contains(c, 1e-9);
  };

  for (int pass = 0; pass < 100; ++pass) {
    int inserted = 0;
    int tcount = static_cast<int>(dt.tris.size());
    for (int ti = 0; ti < tcount; ++ti) {
      if (!dt.tris[static_cast<size_t>(ti)].alive) continue;
      Delaunay::Tri t = dt.tris[static_cast<size_t>(ti)];
      if (!inside_tri(t)) continue;
      Complex a = dt.pts[static_cast<size_t>(t.v[0])];
      Complex b = dt.pts[static_cast<size_t>(t.v[1])];
      Complex c = dt.pts[static_cast<size_t>(t.v[2])];
      double e01 = hyp_dist(a, b), e12 = hyp_dist(b, c), e20 = hyp_dist(c, a);
      double emax = std::max({e01, e12, e20});
      Complex centroid = (a + b + c) / 3.0;
      double local = size(centroid);
      if (emax <= 1.45 * local) continue;
      // Euclidean circumcenter in disk coordinates.
      double d = 2 * (a.real() * (b.imag() - c.imag()) +
                      b.real() * (c.imag() - a.imag()) +
                      c.real() * (a.imag() - b.imag()));
      if (std::fabs(d) < 1e-300) continue;
      double ux = (std::norm(a) * (b.imag() - c.imag()) +
                   std::norm(b) * (c.imag() - a.imag()) +
                   std::norm(c) * (a.imag() - b.imag())) /
                  d;
      double uy = (std::norm(a) * (c.real() - b.real()) +
                   std::norm(b) * (a.real() - c.real()) +
                   std::norm(c) * (b.real() - a.real())) /
                  d;
      Complex cand(ux, uy);
      if (std::abs(cand) >= 1.0 - 1e-9 || !dom.contains(cand, 0.0) ||
          dom.clearance(cand) < 0.75 * size(cand)) {
        // Fall back to the hyperbolic midpoint of the longest edge.
        Complex mu = a, mv = b;
        if (e12 >= e01 && e12 >= e20) {
          mu = b;
          mv = c;
        } else if (e20 >= e01 && e20 >= e12) {
          mu = c;
          mv = a;
        }
        cand = point_along(InteriorPoint(mu), InteriorPoint(mv), 0.5 * hyp_dist(mu, mv)).z();
        if (!dom.contains(cand, 0.0) || dom.clearance(cand) < 0.70 * size(cand))
          continue;
      }
      double local_c = size(cand);
      bool crowded = false;
      for (int e = 0; e < 3 && !crowded; ++e)
        if (hyp_dist(cand, dt.pts[static_cast<size_t>(t.v[e])]) < 0.50 * local_c)
          crowded = true;
      if (crowded) continue;
      dt.insert(cand);
      ++inserted;
    }
    if (inserted == 0) break;
  }

  // Rebuild with the refined point set: every interior point used by an
  // inside triangle of the refined Delaunay.
  std::vector<Complex> inodes;
  {
    std::set<int> taken;
    for (const Delaunay::Tri& t : dt.tris) {
      if (!t.alive || !inside_tri(t)) continue;
      for (int e = 0; e < 3; ++e) {
        int v = t.v[e];
        if (v < 3 + nb) continue;  // super or boundary
        if (taken.insert(v).second) inodes.push_back(dt.pts[static_cast<size_t>(v)]);
      }
    }
  }
  TriMesh phase1 = build_inside_mesh(dom, bnodes, bmarkers, inodes, h);

  // Phase 2: Laplacian smoothing of interior nodes in Klein coordinates
  // (convexity keeps averages inside the domain), then a final rebuild.
  std::vector<Complex> smoothed;
  {
    int n = phase1.num_nodes();
    std::vector<std::set<int>> nbrs(static_cast<size_t>(n));
    for (const auto& t : phase1.triangles) {
      for (int e = 0; e < 3; ++e) {
        int u = t[static_cast<size_t>(e)], v = t[static_cast<size_t>((e + 1) % 3)];
        nbrs[static_cast<size_t>(u)].insert(v);
        nbrs[static_cast<size_t>(v)].insert(u);
      }
    }
    std::vector<Complex> pos = phase1.nodes;
    for (int sweep = 0; sweep < 3; ++sweep) {
      std::vector<Complex> next = pos;
      for (int i = 0; i < n; ++i) {
        if (phase1.node_marker[static_cast<size_t>(i)] >= 0) continue;
        if (nbrs[static_cast<size_t>(i)].empty()) continue;
        Complex acc(0, 0);
        for (int j : nbrs[static_cast<size_t>(i)])
          acc += poincare_to_klein(pos[static_cast<size_t>(j)]);
        acc /= static_cast<double>(nbrs[static_cast<size_t>(i)].size());
        Complex cand = klein_to_poincare(acc);
        if (dom.contains(cand, 0.0) && dom.clearance(cand) > 0.35 * size(cand))
          next[static_cast<size_t>(i)] = cand;
      }
      pos.swap(next);
    }
    for (int i = nb; i < n; ++i) smoothed.push_back(pos[static_cast<size_t>(i)]);
  }

  TriMesh out = build_inside_mesh(dom, bnodes, bmarkers, smoothed, h);
  require(!out.triangles.empty(), ErrorCode::MeshFailure, "no interior triangles");
  return out;
}

TriMesh structured_rectangle_mesh(double x0, double x1, double y0, double y1,
                                  int nx, int ny) {
  require(x1 > x0 && y1 > y0 && nx >= 1 && ny >= 1, ErrorCode::DomainError,
          "bad rectangle mesh parameters");
  MoebiusMap back = MoebiusMap::cayley().inverse();
  TriMesh mesh;
  mesh.target_h = std::max((x1 - x0) / nx, (y1 - y0) / ny) / y0;
  auto id = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      double x = x0 + (x1 - x0) * i / nx;
      double y = y0 + (y1 - y0) * j / ny;
      Complex z = back.apply(Complex(x, y));
      double r = std::abs(z);
      if (r >= 1.0 - kEpsGeo) z *= (1.0 - 2 * kEpsGeo) / r;
      mesh.nodes.push_back(z);
      int marker = -1;
      if (j == 0) marker = 0;
      else if (i == nx) marker = 1;
      else if (j == ny) marker = 2;
      else if (i == 0) marker = 3;
      mesh.node_marker.push_back(marker);
    }
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      int p00 = id(i, j), p10 = id(i + 1, j), p01 = id(i, j + 1), p11 = id(i + 1, j + 1);
      mesh.triangles.push_back({p00, p10, p11});
      mesh.triangles.push_back({p00, p11, p01});
    }
  }
  for (auto& t : mesh.triangles) {
    Complex a = mesh.nodes[static_cast<size_t>(t[0])];
    Complex b = mesh.nodes[static_cast<size_t>(t[1])];
    Complex c = mesh.nodes[static_cast<size_t>(t[2])];
    if (Delaunay::orient(a, b, c) < 0) std::swap(t[1], t[2]);
  }
  // Boundary loop: bottom, right, top (reversed), left (reversed).
  for (int i = 0; i <= nx; ++i) mesh.boundary_loop.push_back(id(i, 0));
  for (int j = 1; j <= ny; ++j) mesh.boundary_loop.push_back(id(nx, j));
  for (int i = nx - 1; i >= 0; --i) mesh.boundary_loop.push_back(id(i, ny));
  for (int j = ny - 1; j >= 1; --j) mesh.boundary_loop.push_back(id(0, j));
  return mesh;
}

double hyperbolic_edge_length(const TriMesh& mesh, int i, int j) {
  return hyp_dist(mesh.nodes[static_cast<size_t>(i)], mesh.nodes[static_cast<size_t>(j)]);
}

double min_hyperbolic_angle_deg(const TriMesh& mesh) {
  double worst = 180.0;
  for (const auto& t : mesh.triangles) {
    double a = hyperbolic_edge_length(mesh, t[1], t[2]);
    double b = hyperbolic_edge_length(mesh, t[2], t[0]);
    double c = hyperbolic_edge_length(mesh, t[0], t[1]);
    double abc[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
    for (auto& s : abc) {
      double cosv = (std::cosh(s[1]) * std::cosh(s[2]) - std::cosh(s[0])) /
                    (std::sinh(s[1]) * std::sinh(s[2]));
      cosv = std::clamp(cosv, -1.0, 1.0);
      worst = std::min(worst, std::acos(cosv) * 180.0 / kPi);
    }
  }
  return worst;
}

double max_hyperbolic_edge(const TriMesh& mesh) {
  double best = 0;
  for (const auto& t : mesh.triangles)
    for (int e = 0; e < 3; ++e)
      best = std::max(best, hyperbolic_edge_length(mesh, t[static_cast<size_t>(e)],
                                                   t[static_cast<size_t>((e + 1) % 3)]));
  return best;
}

}  // namespace scherk
