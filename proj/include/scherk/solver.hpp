#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scherk/meshing.hpp"

namespace scherk {

// Per-marker Dirichlet prescription for a truncated Scherk domain: constant
// cap values on the A- and B-sides, chords either linearly interpolated along
// arclength between the adjacent side values or held at a constant.
struct BoundaryData {
  double a_value = 0;
  double b_value = 0;
  enum class ChordMode { kInterpolate, kConstant };
  ChordMode chord_mode = ChordMode::kInterpolate;
  double chord_value = 0;
  std::map<std::string, double> label_overrides;  // by arc label, e.g. {"A0", 0}
};

// Lowers a BoundaryData prescription to per-node Dirichlet values; NaN marks
// free (interior) nodes.
std::vector<double> dirichlet_values(const TruncatedDomain& dom, const TriMesh& mesh,
                                     const BoundaryData& bd);

struct SolveParams {
  int max_iterations = 200;
  double tol = kTolSolve;  // |grad| <= tol * (1 + |energy|)
};

struct Solution {
  std::shared_ptr<const TruncatedDomain> domain;  // null for synthetic meshes
  std::shared_ptr<const TriMesh> mesh;
  std::vector<double> u;
  std::vector<double> dirichlet;  // NaN on free nodes
  double residual = 0;
  int iterations = 0;
  double energy = 0;
  double max_principle_violation = 0;
  int cap_n = 0;  // cap value for sequence runs (0 otherwise)
};

// Discrete area of the graph of u over the meshed domain, in disk
// coordinates: sum over triangles of quadrature of sqrt(lambda^4 +
// lambda^2 |grad u|^2), lambda = 2 / (1 - |z|^2).
double area_energy(const TriMesh& mesh, const std::vector<double>& u);
// Gradient of the discrete area with respect to all nodal values (no
// boundary-condition elimination).
std::vector<double> area_gradient(const TriMesh& mesh, const std::vector<double>& u);

// Damped Newton minimization of the discrete area with the given Dirichlet
// values (NaN = free).
Solution solve(std::shared_ptr<const TriMesh> mesh, std::vector<double> dirichlet,
               const SolveParams& params = {});
Solution solve(std::shared_ptr<const TruncatedDomain> dom,
               std::shared_ptr<const TriMesh> mesh, const BoundaryData& bd,
               const SolveParams& params = {});

// Lemma-1 barrier on the half-plane quadrant: h(x, y) = ln((sqrt(x^2+y^2)+y)/x).
double barrier_h(double x, double y);
// Euclidean half-plane gradient of the barrier.
std::pair<double, double> barrier_h_gradient(double x, double y);

// P1 point location and interpolation.
int locate_triangle(const TriMesh& mesh, Complex z);
std::optional<double> interpolate(const TriMesh& mesh, const std::vector<double>& u,
                                  Complex z);

// Truncation level coupled to the cap value.
int default_level_for_n(int n);

struct SequenceParams {
  double mesh_h = 0.15;
  double grading = 2.0;
  bool symmetric = true;  // +n/-n caps; false gives the (n, 0) variant
  bool require_admissible = true;
  SolveParams solve_params;
};

// Solves the capped problems for each n, renormalized so u(O) = 0.
std::vector<Solution> scherk_sequence(const ScherkPolygon& g,
                                      const std::vector<int>& n_list,
                                      const InteriorPoint& O,
                                      const SequenceParams& params = {});

struct FittedGeodesic {
  double theta_a = 0, theta_b = 0;  // fitted ideal endpoints
  double rms = 0;                   // fit residual (hyperbolic distance)
  int vertex_a = -1, vertex_b = -1;  // matched polygon vertices, -1 if none
  int support = 0;                   // number of fitted points
};

struct DivergenceReport {
  bool empty = true;
  std::vector<int> marked_nodes;  // indices into the last solution's mesh
  std::vector<FittedGeodesic> interior_geodesics;
  double threshold = 0;
};

// Marks where the difference of the last two renormalized solutions exceeds
// the threshold and fits ideal geodesics to the interior region boundary.
DivergenceReport divergence_probe(const std::vector<Solution>& seq, double threshold);

}  // namespace scherk
