#include "scherk/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <cstdio>
#include <cstdlib>

namespace scherk {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double lambda_at(Complex z) { return 2.0 / (1.0 - std::norm(z)); }

struct TriGeom {
  std::array<int, 3> v;
  double area;                       // Euclidean area in disk coordinates
  std::array<Complex, 3> grad;       // hat-function gradients (constant)
  std::array<double, 3> lambda_q;    // conformal factor at edge midpoints
};

std::vector<TriGeom> precompute(const TriMesh& mesh) {
  std::vector<TriGeom> out;
  out.reserve(mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    Complex a = mesh.nodes[static_cast<size_t>(t[0])];
    Complex b = mesh.nodes[static_cast<size_t>(t[1])];
    Complex c = mesh.nodes[static_cast<size_t>(t[2])];
    double det = (b.real() - a.real()) * (c.imag() - a.imag()) -
                 (b.imag() - a.imag()) * (c.real() - a.real());
    require(det > 1e-300, ErrorCode::SingularSystem, "degenerate or flipped triangle");
    TriGeom g;
    g.v = t;
    g.area = det / 2;
    // grad of hat at vertex i: perpendicular of the opposite edge / det.
    auto perp = [det](Complex e) { return Complex(-e.imag(), e.real()) / det; };
    g.grad = {perp(c - b), perp(a - c), perp(b - a)};
    g.lambda_q = {lambda_at(0.5 * (a + b)), lambda_at(0.5 * (b + c)),
                  lambda_at(0.5 * (c + a))};
    out.push_back(g);
  }
  return out;
}

void check_not_degenerate(const TriMesh& mesh) {
  for (const auto& t : mesh.triangles) {
    double a = hyperbolic_edge_length(mesh, t[1], t[2]);
    double b = hyperbolic_edge_length(mesh, t[2], t[0]);
    double c = hyperbolic_edge_length(mesh, t[0], t[1]);
    double abc[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
    for (auto& s : abc) {
      double cosv = (std::cosh(s[1]) * std::cosh(s[2]) - std::cosh(s[0])) /
                    (std::sinh(s[1]) * std::sinh(s[2]));
      cosv = std::clamp(cosv, -1.0, 1.0);
      require(std::acos(cosv) > kPi / 180.0, ErrorCode::SingularSystem,
              "triangle with hyperbolic angle below one degree");
    }
  }
}

}  // namespace

double area_energy(const TriMesh& mesh, const std::vector<double>& u) {
  std::vector<TriGeom> geo = precompute(mesh);
  double total = 0;
  for (const TriGeom& g : geo) {
    Complex grad(0, 0);
    for (int i = 0; i < 3; ++i)
      grad += u[static_cast<size_t>(g.v[static_cast<size_t>(i)])] *
              g.grad[static_cast<size_t>(i)];
    double g2 = std::norm(grad);
    for (double lq : g.lambda_q)
      total += g.area / 3.0 * lq * std::sqrt(lq * lq + g2);
  }
  return total;
}

std::vector<double> area_gradient(const TriMesh& mesh, const std::vector<double>& u) {
  std::vector<TriGeom> geo = precompute(mesh);
  std::vector<double> out(u.size(), 0.0);
  for (const TriGeom& g : geo) {
    Complex grad(0, 0);
    for (int i = 0; i < 3; ++i)
      grad += u[static_cast<size_t>(g.v[static_cast<size_t>(i)])] *
              g.grad[static_cast<size_t>(i)];
    double g2 = std::norm(grad);
    double coef = 0;
    for (double lq : g.lambda_q) coef += g.area / 3.0 * lq / std::sqrt(lq * lq + g2);
    for (int i = 0; i < 3; ++i) {
      double dot = grad.real() * g.grad[static_cast<size_t>(i)].real() +
                   grad.imag() * g.grad[static_cast<size_t>(i)].imag();
      out[static_cast<size_t>(g.v[static_cast<size_t>(i)])] += coef * dot;
    }
  }
  return out;
}

std::vector<double> dirichlet_values(const TruncatedDomain& dom, const TriMesh& mesh,
                                     const BoundaryData& bd) {
  std::vector<double> values(static_cast<size_t>(mesh.num_nodes()), kNaN);
  auto side_value = [&bd](const BoundaryArc& arc) {
    auto it = bd.label_overrides.find(arc.label);
    if (it != bd.label_overrides.end()) return it->second;
    return arc.label[0] == 'A' ? bd.a_value : bd.b_value;
  };
  // Pass 1: side markers carry their cap value (corners included).
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    int m = mesh.node_marker[static_cast<size_t>(i)];
    if (m < 0) continue;
    const BoundaryArc& arc = dom.arcs()[static_cast<size_t>(m)];
    if (arc.kind == BoundaryArc::Kind::kSide) values[static_cast<size_t>(i)] = side_value(arc);
  }
  // Pass 2: chord nodes.
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    int m = mesh.node_marker[static_cast<size_t>(i)];
    if (m < 0) continue;
    const BoundaryArc& arc = dom.arcs()[static_cast<size_t>(m)];
    if (arc.kind != BoundaryArc::Kind::kChord) continue;
    auto it = bd.label_overrides.find(arc.label);
    if (it != bd.label_overrides.end()) {
      values[static_cast<size_t>(i)] = it->second;
      continue;
    }
    if (bd.chord_mode == BoundaryData::ChordMode::kConstant) {
      values[static_cast<size_t>(i)] = bd.chord_value;
      continue;
    }
    // Interpolate by arclength between the adjacent side values.
    int na = dom.num_arcs();
    const BoundaryArc& prev = dom.arcs()[static_cast<size_t>((m + na - 1) % na)];
    const BoundaryArc& next = dom.arcs()[static_cast<size_t>((m + 1) % na)];
    double v0 = side_value(prev), v1 = side_value(next);
    double t = hyperbolic_distance(arc.start,
                                   InteriorPoint(mesh.nodes[static_cast<size_t>(i)])) /
               arc.length;
    values[static_cast<size_t>(i)] = v0 + (v1 - v0) * std::clamp(t, 0.0, 1.0);
  }
  return values;
}

Solution solve(std::shared_ptr<const TriMesh> mesh, std::vector<double> dirichlet,
               const SolveParams& params) {
  const TriMesh& m = *mesh;
  require(dirichlet.size() == static_cast<size_t>(m.num_nodes()),
          ErrorCode::DomainError, "dirichlet array size mismatch");
  check_not_degenerate(m);
  std::vector<TriGeom> geo = precompute(m);

  int n = m.num_nodes();
  std::vector<int> free_index(static_cast<size_t>(n), -1);
  std::vector<int> free_nodes;
  for (int i = 0; i < n; ++i) {
    if (std::isnan(dirichlet[static_cast<size_t>(i)])) {
      free_index[static_cast<size_t>(i)] = static_cast<int>(free_nodes.size());
      free_nodes.push_back(i);
    }
  }
  int nf = static_cast<int>(free_nodes.size());
  require(nf > 0, ErrorCode::DomainError, "no free nodes to solve for");

  std::vector<double> u(static_cast<size_t>(n), 0.0);
  double mean_bc = 0;
  int nbc = 0;
  for (int i = 0; i < n; ++i) {
    if (!std::isnan(dirichlet[static_cast<size_t>(i)])) {
      u[static_cast<size_t>(i)] = dirichlet[static_cast<size_t>(i)];
      mean_bc += dirichlet[static_cast<size_t>(i)];
      ++nbc;
    }
  }
  if (nbc > 0) mean_bc /= nbc;
  for (int i : free_nodes) u[static_cast<size_t>(i)] = mean_bc;

  auto energy_of = [&](const std::vector<double>& w) {
    double total = 0;
    for (const TriGeom& g : geo) {
      Complex grad(0, 0);
      for (int i = 0; i < 3; ++i)
        grad += w[static_cast<size_t>(g.v[static_cast<size_t>(i)])] *
                g.grad[static_cast<size_t>(i)];
      double g2 = std::norm(grad);
      for (double lq : g.lambda_q)
        total += g.area / 3.0 * lq * std::sqrt(lq * lq + g2);
    }
    return total;
  };

  Eigen::VectorXd grad_free(nf);
  Eigen::SparseMatrix<double> hess(nf, nf);
  std::vector<Eigen::Triplet<double>> trips;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;

  double energy = energy_of(u);
  int iterations = 0;
  double residual = 0;
  bool converged = false;
  for (int it = 0; it < params.max_iterations; ++it) {
    // Assemble the reduced gradient and Hessian.
    grad_free.setZero();
    trips.clear();
    for (const TriGeom& g : geo) {
      Complex grad(0, 0);
      for (int i = 0; i < 3; ++i)
        grad += u[static_cast<size_t>(g.v[static_cast<size_t>(i)])] *
                g.grad[static_cast<size_t>(i)];
      double g2 = std::norm(grad);
      double c1 = 0, c3 = 0;
      for (double lq : g.lambda_q) {
        double s = std::sqrt(lq * lq + g2);
        c1 += g.area / 3.0 * lq / s;
        c3 += g.area / 3.0 * lq / (s * s * s);
      }
      for (int i = 0; i < 3; ++i) {
        int vi = g.v[static_cast<size_t>(i)];
        int fi = free_index[static_cast<size_t>(vi)];
        Complex bi = g.grad[static_cast<size_t>(i)];
        double gdot_i = grad.real() * bi.real() + grad.imag() * bi.imag();
        if (fi >= 0) grad_free(fi) += c1 * gdot_i;
        for (int j = 0; j < 3; ++j) {
          int vj = g.v[static_cast<size_t>(j)];
          int fj = free_index[static_cast<size_t>(vj)];
          if (fi < 0 || fj < 0) continue;
          Complex bj = g.grad[static_cast<size_t>(j)];
          double gdot_j = grad.real() * bj.real() + grad.imag() * bj.imag();
          double hij = c1 * (bi.real() * bj.real() + bi.imag() * bj.imag()) -
                       c3 * gdot_i * gdot_j;
          trips.emplace_back(fi, fj, hij);
        }
      }
    }
    residual = grad_free.norm();
    if (std::getenv("SCHERK_SOLVER_TRACE"))
      std::fprintf(stderr, "  it %d residual %.3e energy %.12f\n", it, residual, energy);
    if (residual <= params.tol * (1.0 + std::fabs(energy))) {
      converged = true;
      break;
    }

    hess.setFromTriplets(trips.begin(), trips.end());
    ldlt.compute(hess);
    require(ldlt.info() == Eigen::Success, ErrorCode::SingularSystem,
            "Hessian factorization failed");
    Eigen::VectorXd step = ldlt.solve(-grad_free);
    require(ldlt.info() == Eigen::Success, ErrorCode::SingularSystem,
            "Hessian solve failed");

    // Armijo backtracking on the convex energy. Once the predicted decrease
    // sinks below the energy evaluation noise, the full Newton step is taken
    // outright (quadratic endgame).
    double slope = grad_free.dot(step);
    bool endgame = -slope <= 1e-13 * (1.0 + std::fabs(energy));
    double alpha = 1.0;
    std::vector<double> trial = u;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (int i = 0; i < nf; ++i)
        trial[static_cast<size_t>(free_nodes[static_cast<size_t>(i)])] =
            u[static_cast<size_t>(free_nodes[static_cast<size_t>(i)])] + alpha * step(i);
      double etrial = energy_of(trial);
      if (endgame || etrial <= energy + 1e-4 * alpha * slope) {
        u = trial;
        energy = etrial;
        accepted = true;
        break;
      }
      alpha /= 2;
    }
    ++iterations;
    require(accepted, ErrorCode::NonConvergence, "line search failed to descend");
  }
  require(converged, ErrorCode::NonConvergence,
          "Newton iteration cap reached before convergence");

  Solution sol;
  sol.mesh = std::move(mesh);
  sol.u = std::move(u);
  sol.dirichlet = std::move(dirichlet);
  sol.residual = residual;
  sol.iterations = iterations;
  sol.energy = energy;

  // Discrete maximum principle audit.
  double bc_min = std::numeric_limits<double>::infinity();
  double bc_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (std::isnan(sol.dirichlet[static_cast<size_t>(i)])) continue;
    bc_min = std::min(bc_min, sol.dirichlet[static_cast<size_t>(i)]);
    bc_max = std::max(bc_max, sol.dirichlet[static_cast<size_t>(i)]);
  }
  double viol = 0;
  for (int i : free_nodes) {
    viol = std::max(viol, sol.u[static_cast<size_t>(i)] - bc_max);
    viol = std::max(viol, bc_min - sol.u[static_cast<size_t>(i)]);
  }
  sol.max_principle_violation = std::max(viol, 0.0);
  return sol;
}

Solution solve(std::shared_ptr<const TruncatedDomain> dom,
               std::shared_ptr<const TriMesh> mesh, const BoundaryData& bd,
               const SolveParams& params) {
  std::vector<double> values = dirichlet_values(*dom, *mesh, bd);
  Solution sol = solve(std::move(mesh), std::move(values), params);
  sol.domain = std::move(dom);
  return sol;
}

double barrier_h(double x, double y) {
  require(x > 0 && y > 0, ErrorCode::DomainError, "barrier defined for x > 0, y > 0");
  return std::log((std::hypot(x, y) + y) / x);
}

std::pair<double, double> barrier_h_gradient(double x, double y) {
  require(x > 0 && y > 0, ErrorCode::DomainError, "barrier defined for x > 0, y > 0");
  double r = std::hypot(x, y);
  return {x / (r * (r + y)) - 1.0 / x, 1.0 / r};
}

int locate_triangle(const TriMesh& mesh, Complex z) {
  for (int ti = 0; ti < mesh.num_triangles(); ++ti) {
    const auto& t = mesh.triangles[static_cast<size_t>(ti)];
    Complex a = mesh.nodes[static_cast<size_t>(t[0])];
    Complex b = mesh.nodes[static_cast<size_t>(t[1])];
    Complex c = mesh.nodes[static_cast<size_t>(t[2])];
    auto orient = [](Complex p, Complex q, Complex r) {
      return (q.real() - p.real()) * (r.imag() - p.imag()) -
             (q.imag() - p.imag()) * (r.real() - p.real());
    };
    double d = orient(a, b, c);
    double w0 = orient(a, b, z), w1 = orient(b, c, z), w2 = orient(c, a, z);
    double tol = -1e-12 * d;
    if (w0 >= tol && w1 >= tol && w2 >= tol) return ti;
  }
  return -1;
}

std::optional<double> interpolate(const TriMesh& mesh, const std::vector<double>& u,
                                  Complex z) {
  int ti = locate_triangle(mesh, z);
  if (ti < 0) return std::nullopt;
  const auto& t = mesh.triangles[static_cast<size_t>(ti)];
  Complex a = mesh.nodes[static_cast<size_t>(t[0])];
  Complex b = mesh.nodes[static_cast<size_t>(t[1])];
  Complex c = mesh.nodes[static_cast<size_t>(t[2])];
  auto orient = [](Complex p, Complex q, Complex r) {
    return (q.real() - p.real()) * (r.imag() - p.imag()) -
           (q.imag() - p.imag()) * (r.real() - p.real());
  };
  double d = orient(a, b, c);
  double l0 = orient(b, c, z) / d;
  double l1 = orient(c, a, z) / d;
  double l2 = orient(a, b, z) / d;
  return l0 * u[static_cast<size_t>(t[0])] + l1 * u[static_cast<size_t>(t[1])] +
         l2 * u[static_cast<size_t>(t[2])];
}

int default_level_for_n(int n) {
  require(n >= 1, ErrorCode::DomainError, "cap value must be positive");
  return static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))) + 2;
}

std::vector<Solution> scherk_sequence(const ScherkPolygon& g,
                                      const std::vector<int>& n_list,
                                      const InteriorPoint& O,
                                      const SequenceParams& params) {
  if (params.require_admissible)
    require(check_admissibility(g).admissible, ErrorCode::NotAdmissible,
            "polygon fails the admissibility conditions");
  for (size_t i = 1; i < n_list.size(); ++i)
    require(n_list[i] > n_list[i - 1], ErrorCode::DomainError,
            "cap values must increase");
  Decoration base = disjoint_uniform_decoration(g);
  std::vector<Solution> out;
  for (int n : n_list) {
    int level = default_level_for_n(n);
    auto dom = std::make_shared<TruncatedDomain>(truncate(g, level, base));
    auto mesh = std::make_shared<TriMesh>(triangulate(*dom, params.mesh_h, params.grading));
    BoundaryData bd;
    if (params.symmetric) {
      bd.a_value = n;
      bd.b_value = -n;
      bd.chord_mode = BoundaryData::ChordMode::kInterpolate;
    } else {
      bd.a_value = n;
      bd.b_value = 0;
      bd.chord_mode = BoundaryData::ChordMode::kConstant;
      bd.chord_value = 0;
    }
    Solution sol = solve(dom, mesh, bd, params.solve_params);
    std::optional<double> at_o = interpolate(*sol.mesh, sol.u, O.z());
    require(at_o.has_value(), ErrorCode::DomainError,
            "base point outside the truncated domain");
    for (double& v : sol.u) v -= *at_o;
    for (double& v : sol.dirichlet) v -= *at_o;  // NaN stays NaN
    sol.cap_n = n;
    out.push_back(std::move(sol));
  }
  return out;
}

// ------------------------------------------------------------ divergence probe

namespace {

double rms_distance_to_geodesic(const std::vector<Complex>& pts, double ta, double tb) {
  if (std::fabs(std::remainder(ta - tb, kTwoPi)) < 1e-6) return 1e9;
  Geodesic geod{BoundaryPoint(ta), BoundaryPoint(tb)};
  double acc = 0;
  for (Complex z : pts) {
    double d = geod.distance(InteriorPoint(z));
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(pts.size()));
}

FittedGeodesic fit_geodesic(std::vector<Complex> pts, const ScherkPolygon& g,
                            double ta, double tb) {
  auto descend = [&pts](double& ta_, double& tb_) {
    double window = 0.3;
    for (int round = 0; round < 12; ++round) {
      for (int coord = 0; coord < 2; ++coord) {
        double& t = coord == 0 ? ta_ : tb_;
        double lo = t - window, hi = t + window;
        for (int it = 0; it < 40; ++it) {
          double m1 = lo + (hi - lo) * 0.382;
          double m2 = lo + (hi - lo) * 0.618;
          double f1 = rms_distance_to_geodesic(pts, coord == 0 ? m1 : ta_,
                                               coord == 0 ? tb_ : m1);
          double f2 = rms_distance_to_geodesic(pts, coord == 0 ? m2 : ta_,
                                               coord == 0 ? tb_ : m2);
          if (f1 < f2)
            hi = m2;
          else
            lo = m1;
        }
        t = 0.5 * (lo + hi);
      }
      window *= 0.5;
    }
  };
  descend(ta, tb);
  FittedGeodesic fit;
  fit.theta_a = BoundaryPoint(ta).theta();
  fit.theta_b = BoundaryPoint(tb).theta();
  fit.rms = rms_distance_to_geodesic(pts, ta, tb);
  fit.support = static_cast<int>(pts.size());
  for (int i = 0; i < g.num_vertices(); ++i) {
    if (angular_distance(BoundaryPoint(fit.theta_a), g.vertex(i)) < 0.05)
      fit.vertex_a = i;
    if (angular_distance(BoundaryPoint(fit.theta_b), g.vertex(i)) < 0.05)
      fit.vertex_b = i;
  }
  return fit;
}

}  // namespace

DivergenceReport divergence_probe(const std::vector<Solution>& seq, double threshold) {
  DivergenceReport rep;
  rep.threshold = threshold;
  require(seq.size() >= 2, ErrorCode::DomainError, "need at least two solutions");
  const Solution& prev = seq[seq.size() - 2];
  const Solution& last = seq.back();
  require(last.domain != nullptr, ErrorCode::DomainError,
          "divergence probe needs domain metadata");
  const TriMesh& mesh = *last.mesh;

  // Skip the layer along the polygon sides (the capped data force a
  // difference of n2 - n1 on the walls of every run) and the cusp corridors
  // where the transition profile is not resolved by the mesh.
  const TruncatedDomain& dom0 = *last.domain;
  auto side_clearances = [&dom0](Complex z) {
    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    for (const BoundaryArc& a : dom0.arcs()) {
      if (a.kind != BoundaryArc::Kind::kSide) continue;
      double d = a.geodesic.distance(InteriorPoint(z));
      if (d < best) {
        second = best;
        best = d;
      } else {
        second = std::min(second, d);
      }
    }
    return std::pair<double, double>{best, second};
  };
  auto side_clearance = [&side_clearances](Complex z) {
    return side_clearances(z).first;
  };

  std::vector<bool> marked(static_cast<size_t>(mesh.num_nodes()), false);
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    if (mesh.node_marker[static_cast<size_t>(i)] >= 0) continue;
    Complex z = mesh.nodes[static_cast<size_t>(i)];
    auto [c1, c2] = side_clearances(z);
    if (c1 < 0.5 * mesh.target_h || c2 < 1.5 * mesh.target_h) continue;
    std::optional<double> up = interpolate(*prev.mesh, prev.u, z);
    if (!up) continue;
    if (std::fabs(last.u[static_cast<size_t>(i)] - *up) > threshold)
      marked[static_cast<size_t>(i)] = true;
  }

  // Prune isolated spikes: a genuine divergence region is connected, while
  // under-resolved steep spots mark single nodes.
  std::vector<std::vector<int>> nbrs(static_cast<size_t>(mesh.num_nodes()));
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      int u = t[static_cast<size_t>(e)], v = t[static_cast<size_t>((e + 1) % 3)];
      nbrs[static_cast<size_t>(u)].push_back(v);
      nbrs[static_cast<size_t>(v)].push_back(u);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < mesh.num_nodes(); ++i) {
      if (!marked[static_cast<size_t>(i)]) continue;
      int count = 0;
      for (int j : nbrs[static_cast<size_t>(i)])
        if (marked[static_cast<size_t>(j)]) ++count;
      if (count < 2) {
        marked[static_cast<size_t>(i)] = false;
        changed = true;
      }
    }
  }
  for (int i = 0; i < mesh.num_nodes(); ++i)
    if (marked[static_cast<size_t>(i)]) rep.marked_nodes.push_back(i);
  if (rep.marked_nodes.empty()) return rep;
  rep.empty = false;

  // Interface samples: midpoints of edges crossing the marked set, away from
  // the domain boundary. Midpoints straddle the region boundary instead of
  // sitting one element inside it.
  std::vector<Complex> pts;
  std::set<std::pair<int, int>> seen;
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      int u = t[static_cast<size_t>(e)], v = t[static_cast<size_t>((e + 1) % 3)];
      if (marked[static_cast<size_t>(u)] == marked[static_cast<size_t>(v)]) continue;
      if (!seen.insert({std::min(u, v), std::max(u, v)}).second) continue;
      if (mesh.node_marker[static_cast<size_t>(u)] >= 0 ||
          mesh.node_marker[static_cast<size_t>(v)] >= 0)
        continue;
      Complex z = 0.5 * (mesh.nodes[static_cast<size_t>(u)] +
                         mesh.nodes[static_cast<size_t>(v)]);
      if (side_clearance(z) < 0.75 * mesh.target_h) continue;
      pts.push_back(z);
    }
  }

  // Assign frontier points to the nearest candidate vertex-pair geodesic,
  // then refine each sufficiently supported cluster.
  const ScherkPolygon& g = dom0.parent();
  int n = g.num_vertices();
  struct Candidate {
    int i, j;
    std::vector<Complex> members;
  };
  std::vector<Candidate> cands;
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent around the wrap
      cands.push_back({i, j, {}});
    }
  double assign_radius = 2.5 * mesh.target_h;
  for (Complex z : pts) {
    double best = assign_radius;
    int best_c = -1;
    for (size_t c = 0; c < cands.size(); ++c) {
      Geodesic geod(g.vertex(cands[c].i), g.vertex(cands[c].j));
      double d = geod.distance(InteriorPoint(z));
      if (d < best) {
        best = d;
        best_c = static_cast<int>(c);
      }
    }
    if (best_c >= 0) cands[static_cast<size_t>(best_c)].members.push_back(z);
  }
  size_t min_support = std::max<size_t>(12, pts.size() / 4);
  for (const Candidate& c : cands) {
    if (c.members.size() < min_support) continue;
    // Both endpoints must be pinned down: require the support to spread
    // along the candidate geodesic, measured by the arclength parameter of
    // the projections.
    MoebiusMap chart = MoebiusMap::three_point(
        g.vertex(c.i).unit(),
        BoundaryPoint(g.vertex(c.i).theta() +
                      0.5 * std::remainder(g.vertex(c.j).theta() -
                                               g.vertex(c.i).theta(),
                                           kTwoPi))
            .unit(),
        g.vertex(c.j).unit());
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (Complex z : c.members) {
      double t = std::log(std::abs(chart.apply(z)));
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    if (hi - lo < 2.6) continue;
    rep.interior_geodesics.push_back(fit_geodesic(c.members, g,
                                                  g.vertex(c.i).theta(),
                                                  g.vertex(c.j).theta()));
  }
  return rep;
}

}  // namespace scherk
