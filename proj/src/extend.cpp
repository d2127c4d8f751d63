#include "scherk/extend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scherk {

namespace {

// Signed angular direction from p toward q along the shorter arc.
double toward(const BoundaryPoint& p, const BoundaryPoint& q) {
  return std::remainder(q.theta() - p.theta(), kTwoPi) > 0 ? 1.0 : -1.0;
}

struct QuadOnSide {
  BoundaryPoint b1, b2;  // b1 adjacent to the side start, b2 to the side end
};

QuadOnSide attach_regular(const ScherkPolygon& d, const InteriorPoint& O, int side) {
  auto [b1, b2] = make_regular_quadrilateral(d.vertex(side), d.vertex(side + 1), O,
                                             SideChoice::kOppositeO);
  return {b1, b2};
}

// phi of the quadrilateral attached to an even side (shared vertex at the
// side end): phi(a0, b1, b2, a1).
double phi_even(const ScherkPolygon& d, int side, const QuadOnSide& q) {
  return phi(d.vertex(side), q.b1, q.b2, d.vertex(side + 1));
}

// phi of the quadrilateral attached to an odd side (shared vertex at the side
// start), mirrored so the moved vertex enters with the same signs.
double phi_odd(const ScherkPolygon& d, int side, const QuadOnSide& q) {
  return phi(d.vertex(side + 1), q.b2, q.b1, d.vertex(side));
}

// Moves q.b1 toward the side start until the mirrored phi reaches `target`.
QuadOnSide equalize_odd(const ScherkPolygon& d, int side, QuadOnSide q, double target) {
  if (target <= 0) return q;
  BoundaryPoint shared = d.vertex(side);
  double dir = toward(q.b1, shared);
  double gap = angular_distance(q.b1, shared);
  auto value = [&](double t) {
    QuadOnSide moved = q;
    moved.b1 = BoundaryPoint(q.b1.theta() + dir * t);
    return phi_odd(d, side, moved) - target;
  };
  double lo = 0, hi = std::min(gap * 0.5, 1e-3);
  int guard = 0;
  while (value(hi) < 0 && guard++ < 200) {
    lo = hi;
    hi = std::min(hi * 2, gap * (1 - 1e-9));
    if (hi >= gap * (1 - 1e-9) && value(hi) < 0)
      fail(ErrorCode::Overshoot, "phi target unreachable before the shared vertex");
  }
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    (value(mid) < 0 ? lo : hi) = mid;
  }
  q.b1 = BoundaryPoint(q.b1.theta() + dir * 0.5 * (lo + hi));
  return q;
}

struct BuiltChild {
  ScherkPolygon polygon;
  std::vector<double> phis;
};

// Attaches quadrilaterals to all sides, perturbing per adjacent disjoint pair
// (sides 2j and 2j+1 share vertex 2j+1).
BuiltChild build_child(const ScherkPolygon& d, const InteriorPoint& O, double tau) {
  int n = d.num_vertices();
  std::vector<QuadOnSide> quads(static_cast<size_t>(n));
  std::vector<double> phis(static_cast<size_t>(n), 0.0);
  for (int j = 0; j < n; j += 2) {
    QuadOnSide even = attach_regular(d, O, j);
    QuadOnSide odd = attach_regular(d, O, j + 1);
    if (tau > 0) {
      auto [b1e, b2e] = perturb_quadrilateral(d.vertex(j), d.vertex(j + 1), even.b1,
                                              even.b2, tau);
      even.b1 = b1e;
      even.b2 = b2e;
      double target = phi_even(d, j, even);
      require(target > 0, ErrorCode::DomainError, "perturbation did not raise phi");
      odd = equalize_odd(d, j + 1, odd, target);
    }
    phis[static_cast<size_t>(j)] = phi_even(d, j, even);
    phis[static_cast<size_t>(j + 1)] = phi_odd(d, j + 1, odd);
    quads[static_cast<size_t>(j)] = even;
    quads[static_cast<size_t>(j + 1)] = odd;
  }
  std::vector<BoundaryPoint> verts;
  verts.reserve(static_cast<size_t>(3 * n));
  for (int j = 0; j < n; ++j) {
    verts.push_back(d.vertex(j));
    verts.push_back(quads[static_cast<size_t>(j)].b1);
    verts.push_back(quads[static_cast<size_t>(j)].b2);
  }
  // Old side labels split as (L, not L, L), so the first child edge keeps the
  // label of the first parent edge.
  return {ScherkPolygon(std::move(verts), d.edge_is_a(0)), std::move(phis)};
}

}  // namespace

double boundary_distance(const ScherkPolygon& g, const InteriorPoint& O) {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.num_vertices(); ++j)
    best = std::min(best, g.edge_geodesic(j).distance(O));
  return best;
}

std::pair<BoundaryPoint, BoundaryPoint> perturb_quadrilateral(
    const BoundaryPoint& a0, const BoundaryPoint& a1, const BoundaryPoint& b1,
    const BoundaryPoint& b2, double tau) {
  require(tau >= 0, ErrorCode::DomainError, "tau must be nonnegative");
  (void)a0;
  if (tau == 0) return {b1, b2};
  double gap = angular_distance(b2, a1);
  require(tau < gap, ErrorCode::Overshoot, "perturbed vertex would pass a1");
  BoundaryPoint moved(b2.theta() + toward(b2, a1) * tau);
  return {b1, moved};
}

PairAttachment attach_pair(const ScherkPolygon& d, const InteriorPoint& O,
                           int pair_index, double tau) {
  int n = d.num_vertices();
  require(pair_index >= 0 && 2 * pair_index + 1 < n, ErrorCode::DomainError,
          "pair index out of range");
  int se = 2 * pair_index;      // even side, shared vertex at its end
  int so = 2 * pair_index + 1;  // odd side, shared vertex at its start
  QuadOnSide even = attach_regular(d, O, se);
  QuadOnSide odd = attach_regular(d, O, so);
  double target = 0;
  if (tau > 0) {
    auto [b1e, b2e] =
        perturb_quadrilateral(d.vertex(se), d.vertex(se + 1), even.b1, even.b2, tau);
    even.b1 = b1e;
    even.b2 = b2e;
    target = phi_even(d, se, even);
    odd = equalize_odd(d, so, odd, target);
  }
  std::vector<BoundaryPoint> verts;
  for (int j = 0; j < n; ++j) {
    verts.push_back(d.vertex(j));
    if (j == se) {
      verts.push_back(even.b1);
      verts.push_back(even.b2);
    } else if (j == so) {
      verts.push_back(odd.b1);
      verts.push_back(odd.b2);
    }
  }
  PairAttachment out{ScherkPolygon(std::move(verts), d.edge_is_a(0)),
                     phi_even(d, se, even)};
  return out;
}

ExtensionStep extend_once(const ScherkPolygon& d, const InteriorPoint& O, double tau) {
  AdmissibilityReport parent_report = check_admissibility(d);
  require(parent_report.admissible, ErrorCode::NotAdmissibleParent,
          "extension parent fails the admissibility conditions");
  double parent_dist = boundary_distance(d, O);

  double t = tau;
  while (true) {
    bool retryable = t > 0;
    try {
      BuiltChild built = build_child(d, O, t);
      AdmissibilityReport rep = check_admissibility(built.polygon);
      if (t > 0 && !rep.admissible) {
        if (t / 2 < kTauMin)
          fail(ErrorCode::NoAdmissibleTau, "tau backoff exhausted");
        t /= 2;
        continue;
      }
      ExtensionStep step{d,
                         std::move(built.polygon),
                         t,
                         std::move(built.phis),
                         0.0,
                         std::move(rep)};
      step.step_distance = boundary_distance(step.child, O) - parent_dist;
      return step;
    } catch (const Error& e) {
      if (!retryable || e.code() == ErrorCode::NoAdmissibleTau ||
          e.code() == ErrorCode::NotAdmissibleParent)
        throw;
      if (t / 2 < kTauMin) fail(ErrorCode::NoAdmissibleTau, "tau backoff exhausted");
      t /= 2;
    }
  }
}

ExhaustionTrace exhaust(const ScherkPolygon& d0, const InteriorPoint& O,
                        int n_steps, double tau0) {
  require(n_steps >= 1, ErrorCode::DomainError, "need at least one step");
  ExhaustionTrace trace;
  trace.base_point = O;
  trace.domains.push_back(d0);
  trace.distances.push_back(boundary_distance(d0, O));
  for (int n = 0; n < n_steps; ++n) {
    double tau_n = tau0 * std::pow(2.0, -n);
    ExtensionStep step = extend_once(trace.domains.back(), O, tau_n);
    trace.tau_schedule.push_back(step.tau);
    trace.distances.push_back(boundary_distance(step.child, O));
    trace.domains.push_back(step.child);
    trace.steps.push_back(std::move(step));
    require(trace.distances[trace.distances.size() - 1] >
                trace.distances[trace.distances.size() - 2],
            ErrorCode::DomainError, "boundary distance failed to increase");
  }
  return trace;
}

double asymptotic_side_step(const ScherkPolygon& parent, int side,
                            const ScherkPolygon& child, const InteriorPoint& O) {
  require(child.num_vertices() == 3 * parent.num_vertices(), ErrorCode::DomainError,
          "child is not an all-sides extension of the parent");
  MoebiusMap m = normalize_side(parent.vertex(side), parent.vertex(side + 1), O);
  // Probe far along the perpendicular axis, on the domain side.
  double y0 = std::abs(m.apply(O.z()));
  double h = y0 > 1 ? std::exp(8.0) : std::exp(-8.0);
  Complex probe_hp(0.0, h);
  Complex probe = m.inverse().apply(probe_hp);
  double r = std::abs(probe);
  if (r >= 1.0 - kEpsGeo) probe *= (1.0 - 2 * kEpsGeo) / r;
  InteriorPoint x(probe);

  double old_dist = parent.edge_geodesic(side).distance(x);
  double best = std::numeric_limits<double>::infinity();
  for (int e = 3 * side; e < 3 * side + 3; ++e)
    best = std::min(best, child.edge_geodesic(e).distance(x));
  return best - old_dist;
}

}  // namespace scherk
