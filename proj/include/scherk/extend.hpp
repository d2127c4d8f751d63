#pragma once

#include <vector>

#include "scherk/polygon.hpp"

namespace scherk {

// One domain-extension step: regular quadrilaterals attached to every side of
// the parent, with the tau-perturbation applied per adjacent pair of sides.
struct ExtensionStep {
  ScherkPolygon parent;
  ScherkPolygon child;
  double tau = 0;                  // requested magnitude (after backoff)
  std::vector<double> phi_values;  // one per attached quadrilateral
  double step_distance = 0;        // dist(O, child boundary) - dist(O, parent boundary)
  AdmissibilityReport child_report;
};

struct ExhaustionTrace {
  std::vector<ScherkPolygon> domains;  // D_0 subset D_1 subset ...
  InteriorPoint base_point;
  std::vector<double> distances;     // dist(O, boundary of D_n)
  std::vector<double> tau_schedule;  // tau used per step
  std::vector<ExtensionStep> steps;
};

// Minimum distance from O to the side geodesics of the polygon.
double boundary_distance(const ScherkPolygon& g, const InteriorPoint& O);

// Moves b2 along the circle toward a1 by boundary angle tau (b1 fixed).
// Throws Overshoot if the motion would reach or pass a1.
std::pair<BoundaryPoint, BoundaryPoint> perturb_quadrilateral(
    const BoundaryPoint& a0, const BoundaryPoint& a1, const BoundaryPoint& b1,
    const BoundaryPoint& b2, double tau);

// Attaches perturbed quadrilaterals E_tau, E'_tau to the two sides meeting at
// vertex 2*pair_index + 1, reproducing the two-quadrilateral extended domain.
// The perturbations move the two new vertices adjacent to the shared vertex
// toward it, with matched alternating sums (phi values).
struct PairAttachment {
  ScherkPolygon polygon;
  double phi_value = 0;  // common phi of the two perturbed quadrilaterals
};
PairAttachment attach_pair(const ScherkPolygon& d, const InteriorPoint& O,
                           int pair_index, double tau);

// Attaches a quadrilateral to every side of an admissible polygon and
// certifies the child; retries with tau/2 down to kTauMin on failure.
// tau == 0 builds the unperturbed child without requiring strict
// admissibility of the result (its equality cases are reported).
ExtensionStep extend_once(const ScherkPolygon& d, const InteriorPoint& O, double tau);

// Iterates extend_once with the geometric schedule tau_n = tau0 * 2^-n.
ExhaustionTrace exhaust(const ScherkPolygon& d0, const InteriorPoint& O,
                        int n_steps, double tau0);

// Far-field outward step of one side: the limit, along the perpendicular axis
// through O, of dist(x, new sides) - dist(x, old side) for the three sides
// replacing `side` in the child. Approaches ln(1 + sqrt 2) for the
// unperturbed regular quadrilateral.
double asymptotic_side_step(const ScherkPolygon& parent, int side,
                            const ScherkPolygon& child, const InteriorPoint& O);

}  // namespace scherk
