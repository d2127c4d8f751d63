#include "scherk/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scherk {

namespace {

double unit_edge_length(const BoundaryPoint& p, const BoundaryPoint& q) {
  return truncated_distance(p, q, 1.0, 1.0);
}

// Pairwise unit-decoration lengths, cached per polygon during checks.
std::vector<std::vector<double>> length_table(const ScherkPolygon& g) {
  int n = g.num_vertices();
  std::vector<std::vector<double>> len(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      len[i][j] = len[j][i] = unit_edge_length(g.vertex(i), g.vertex(j));
  return len;
}

}  // namespace

// --------------------------------------------------------------- ScherkPolygon

ScherkPolygon::ScherkPolygon(std::vector<BoundaryPoint> vertices, bool first_edge_is_a)
    : vertices_(std::move(vertices)), first_a_(first_edge_is_a) {
  int n = num_vertices();
  require(n >= 4, ErrorCode::DomainError, "polygon needs at least 4 ideal vertices");
  require(n % 2 == 0, ErrorCode::DomainError, "polygon needs an even vertex count");
  double total = 0;
  for (int i = 0; i < n; ++i) {
    double gap = vertices_[(i + 1) % n].theta() - vertices_[i].theta();
    gap = std::fmod(gap, kTwoPi);
    if (gap < 0) gap += kTwoPi;
    require(gap > kEpsGeo && gap < kTwoPi - kEpsGeo, ErrorCode::CoincidentPoints,
            "consecutive vertices coincide");
    total += gap;
  }
  // Single winding: the gap sum is 2*pi (counterclockwise) or (n-1)*2*pi.
  long winds = std::lround(total / kTwoPi);
  require(std::fabs(total - winds * kTwoPi) < 1e-6, ErrorCode::DomainError,
          "vertex angles are inconsistent");
  require(winds == 1 || winds == n - 1, ErrorCode::DomainError,
          "vertices are not strictly cyclically ordered");
  ccw_ = (winds == 1);
}

const BoundaryPoint& ScherkPolygon::vertex(int i) const {
  int n = num_vertices();
  int j = ((i % n) + n) % n;
  return vertices_[static_cast<size_t>(j)];
}

bool ScherkPolygon::edge_is_a(int j) const {
  int n = num_vertices();
  int e = ((j % n) + n) % n;
  return (e % 2 == 0) == first_a_;
}

std::string ScherkPolygon::edge_label(int j) const {
  int n = num_vertices();
  int e = ((j % n) + n) % n;
  return std::string(edge_is_a(e) ? "A" : "B") + std::to_string(e / 2);
}

Geodesic ScherkPolygon::edge_geodesic(int j) const {
  return Geodesic(vertex(j), vertex(j + 1));
}

InteriorPoint ScherkPolygon::interior_point() const {
  // The foot of the origin on a diagonal always lies strictly inside the
  // convex hull of the vertices.
  Geodesic diag(vertex(0), vertex(num_vertices() / 2));
  return diag.foot(InteriorPoint(0, 0));
}

double ScherkPolygon::domain_side_sign(int j) const {
  Geodesic g = edge_geodesic(j);
  InteriorPoint p = interior_point();
  double s = g.side(p.z());
  if (std::fabs(s) > 1e-9) return s > 0 ? 1.0 : -1.0;
  // The reference diagonal happens to graze this edge; probe another one.
  Geodesic diag(vertex(1), vertex(1 + num_vertices() / 2));
  s = g.side(diag.foot(InteriorPoint(0, 0)).z());
  require(std::fabs(s) > 1e-9, ErrorCode::DomainError,
          "cannot orient edge against the polygon interior");
  return s > 0 ? 1.0 : -1.0;
}

// ------------------------------------------------------------ InscribedPolygon

InscribedPolygon make_inscribed(const ScherkPolygon& parent, std::vector<int> indices) {
  int n = parent.num_vertices();
  int m = static_cast<int>(indices.size());
  require(m >= 3, ErrorCode::DomainError, "inscribed polygon needs >= 3 vertices");
  require(m < n, ErrorCode::DomainError, "inscribed polygon must be proper");
  for (int t = 0; t < m; ++t) {
    require(indices[t] >= 0 && indices[t] < n, ErrorCode::DomainError,
            "inscribed index out of range");
    if (t > 0)
      require(indices[t] > indices[t - 1], ErrorCode::DomainError,
              "inscribed indices must be strictly increasing");
  }
  InscribedPolygon poly;
  poly.indices = std::move(indices);
  poly.classes.resize(static_cast<size_t>(m));
  for (int t = 0; t < m; ++t) {
    int i = poly.indices[static_cast<size_t>(t)];
    int j = poly.indices[static_cast<size_t>((t + 1) % m)];
    bool adjacent = (i + 1) % n == j;
    if (!adjacent)
      poly.classes[static_cast<size_t>(t)] = EdgeClass::kInterior;
    else
      poly.classes[static_cast<size_t>(t)] =
          parent.edge_is_a(i) ? EdgeClass::kBoundaryA : EdgeClass::kBoundaryB;
  }
  return poly;
}

Quantities quantities(const ScherkPolygon& parent, const InscribedPolygon& poly,
                      const Decoration& dec) {
  Quantities q;
  int m = poly.size();
  for (int t = 0; t < m; ++t) {
    int i = poly.indices[static_cast<size_t>(t)];
    int j = poly.indices[static_cast<size_t>((t + 1) % m)];
    double len = truncated_distance(parent.vertex(i), parent.vertex(j),
                                    dec.at(i), dec.at(j));
    q.perim += len;
    if (poly.classes[static_cast<size_t>(t)] == EdgeClass::kBoundaryA) q.a += len;
    if (poly.classes[static_cast<size_t>(t)] == EdgeClass::kBoundaryB) q.b += len;
  }
  return q;
}

Quantities quantities(const ScherkPolygon& g, const Decoration& dec) {
  Quantities q;
  int n = g.num_vertices();
  for (int j = 0; j < n; ++j) {
    double len = truncated_distance(g.vertex(j), g.vertex(j + 1), dec.at(j),
                                    dec.at((j + 1) % n));
    q.perim += len;
    (g.edge_is_a(j) ? q.a : q.b) += len;
  }
  return q;
}

double gamma_balance(const ScherkPolygon& g) {
  int n = g.num_vertices();
  double a = 0, b = 0;
  for (int j = 0; j < n; ++j) {
    double len = unit_edge_length(g.vertex(j), g.vertex(j + 1));
    (g.edge_is_a(j) ? a : b) += len;
  }
  return a - b;
}

void enumerate_inscribed(const ScherkPolygon& g,
                         const std::function<void(const InscribedPolygon&)>& visit) {
  int n = g.num_vertices();
  require(n <= kEnumGuardVertices, ErrorCode::TooLarge,
          "exhaustive enumeration guarded at " +
              std::to_string(kEnumGuardVertices) + " vertices");
  std::vector<int> stack;
  stack.reserve(static_cast<size_t>(n));
  // Depth-first inclusion in increasing index order yields lexicographic
  // order on index sets.
  std::function<void(int)> rec = [&](int next) {
    int m = static_cast<int>(stack.size());
    if (m >= 3 && m < n) visit(make_inscribed(g, stack));
    if (m == n) return;
    for (int i = next; i < n; ++i) {
      stack.push_back(i);
      rec(i + 1);
      stack.pop_back();
    }
  };
  rec(0);
}

std::vector<InscribedPolygon> enumerate_inscribed(const ScherkPolygon& g) {
  std::vector<InscribedPolygon> out;
  enumerate_inscribed(g, [&out](const InscribedPolygon& p) { out.push_back(p); });
  return out;
}

bool is_alternating(const InscribedPolygon& poly, char side) {
  require(side == 'A' || side == 'B', ErrorCode::DomainError, "side must be A or B");
  EdgeClass want = side == 'A' ? EdgeClass::kBoundaryA : EdgeClass::kBoundaryB;
  int m = poly.size();
  for (int t = 0; t < m; ++t) {
    int incident = 0;
    if (poly.classes[static_cast<size_t>((t + m - 1) % m)] == want) ++incident;
    if (poly.classes[static_cast<size_t>(t)] == want) ++incident;
    if (incident != 1) return false;
  }
  return true;
}

double phi(const BoundaryPoint& a0, const BoundaryPoint& b1,
           const BoundaryPoint& b2, const BoundaryPoint& a1) {
  return unit_edge_length(a0, a1) - unit_edge_length(a1, b2) +
         unit_edge_length(b2, b1) - unit_edge_length(b1, a0);
}

// ---------------------------------------------------------------- admissibility

namespace {

void record_margin(AdmissibilityReport& rep, const std::vector<int>& indices,
                   char side, double margin) {
  ++rep.checked_alternating;
  if (side == 'A') {
    rep.has_alternating_a = true;
    rep.min_margin_a = std::min(rep.min_margin_a, margin);
  } else {
    rep.has_alternating_b = true;
    rep.min_margin_b = std::min(rep.min_margin_b, margin);
  }
  if (margin < -kEpsMargin)
    rep.violations.push_back({indices, side, margin});
  else if (margin <= kEpsMargin)
    rep.equalities.push_back({indices, side, margin});
}

void check_exhaustive(const ScherkPolygon& g, AdmissibilityReport& rep) {
  rep.strategy = "exhaustive";
  auto len = length_table(g);
  enumerate_inscribed(g, [&](const InscribedPolygon& poly) {
    ++rep.enumerated;
    int m = poly.size();
    // Flag polygons with two interior edges at a common vertex.
    for (int t = 0; t < m; ++t) {
      if (poly.classes[static_cast<size_t>(t)] == EdgeClass::kInterior &&
          poly.classes[static_cast<size_t>((t + 1) % m)] == EdgeClass::kInterior) {
        ++rep.shared_vertex_interior;
        break;
      }
    }
    bool alt_a = is_alternating(poly, 'A');
    bool alt_b = is_alternating(poly, 'B');
    if (!alt_a && !alt_b) {
      ++rep.auto_satisfied;
      return;
    }
    double perim = 0, a = 0, b = 0;
    for (int t = 0; t < m; ++t) {
      int i = poly.indices[static_cast<size_t>(t)];
      int j = poly.indices[static_cast<size_t>((t + 1) % m)];
      double l = len[static_cast<size_t>(i)][static_cast<size_t>(j)];
      perim += l;
      if (poly.classes[static_cast<size_t>(t)] == EdgeClass::kBoundaryA) a += l;
      if (poly.classes[static_cast<size_t>(t)] == EdgeClass::kBoundaryB) b += l;
    }
    if (alt_a) record_margin(rep, poly.indices, 'A', perim - 2 * a);
    if (alt_b) record_margin(rep, poly.indices, 'B', perim - 2 * b);
  });
}

// Exact minimization of |P| - 2a(P) over proper A-alternating (resp.
// B-alternating) inscribed polygons. Such a polygon is the cyclic union of a
// subset of the k same-letter parent edges, so the margin is a sum of
// transition weights around the chosen cycle and the minimum is found by
// dynamic programming over cyclic orders with one letter-edge excluded.
struct DpResult {
  double min_margin = std::numeric_limits<double>::infinity();
  std::vector<int> argmin_edges;  // chosen letter-edge ordinals
  bool any = false;
};

DpResult alternating_min_margin(const ScherkPolygon& g, char side,
                                const std::vector<std::vector<double>>& len) {
  int n = g.num_vertices();
  int k = n / 2;
  std::vector<int> start(static_cast<size_t>(k)), end(static_cast<size_t>(k));
  {
    int c = 0;
    for (int j = 0; j < n; ++j) {
      if (g.edge_is_a(j) == (side == 'A')) {
        start[static_cast<size_t>(c)] = j;
        end[static_cast<size_t>(c)] = (j + 1) % n;
        ++c;
      }
    }
  }
  auto edge_len = [&](int e) {
    return len[static_cast<size_t>(start[static_cast<size_t>(e)])]
              [static_cast<size_t>(end[static_cast<size_t>(e)])];
  };
  auto w = [&](int i, int j) {
    return len[static_cast<size_t>(end[static_cast<size_t>(i)])]
              [static_cast<size_t>(start[static_cast<size_t>(j)])] -
           0.5 * (edge_len(i) + edge_len(j));
  };

  DpResult result;
  if (k < 3) return result;  // no proper alternating polygons
  std::vector<double> dp(static_cast<size_t>(k));
  std::vector<int> parent(static_cast<size_t>(k));
  std::vector<int> order(static_cast<size_t>(k - 1));
  // Every proper subset avoids some letter edge s; minimize over cycles in
  // the remaining linear order.
  for (int s = 0; s < k; ++s) {
    for (int i = 0; i < k - 1; ++i) order[static_cast<size_t>(i)] = (s + 1 + i) % k;
    for (int p = 0; p < k - 2; ++p) {
      int up = order[static_cast<size_t>(p)];
      for (int q = p + 1; q < k - 1; ++q) {
        int uq = order[static_cast<size_t>(q)];
        double best = w(up, uq);
        int from = p;
        for (int r = p + 1; r < q; ++r) {
          double cand = dp[static_cast<size_t>(r)] +
                        w(order[static_cast<size_t>(r)], uq);
          if (cand < best) {
            best = cand;
            from = r;
          }
        }
        dp[static_cast<size_t>(q)] = best;
        parent[static_cast<size_t>(q)] = from;
        double cycle = best + w(uq, up);
        if (cycle < result.min_margin) {
          result.min_margin = cycle;
          result.any = true;
          result.argmin_edges.clear();
          int cur = q;
          while (cur != p) {
            result.argmin_edges.push_back(order[static_cast<size_t>(cur)]);
            cur = parent[static_cast<size_t>(cur)];
          }
          result.argmin_edges.push_back(up);
          std::sort(result.argmin_edges.begin(), result.argmin_edges.end());
        }
      }
    }
  }
  return result;
}

std::vector<int> edges_to_vertex_indices(const std::vector<int>& edges,
                                         const std::vector<int>& start,
                                         const std::vector<int>& end) {
  std::vector<int> idx;
  for (int e : edges) {
    idx.push_back(start[static_cast<size_t>(e)]);
    idx.push_back(end[static_cast<size_t>(e)]);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

void check_dp(const ScherkPolygon& g, AdmissibilityReport& rep) {
  rep.strategy = "alternating-dp";
  auto len = length_table(g);
  int n = g.num_vertices();
  int k = n / 2;
  for (char side : {'A', 'B'}) {
    DpResult r = alternating_min_margin(g, side, len);
    if (!r.any) continue;
    std::vector<int> start(static_cast<size_t>(k)), end(static_cast<size_t>(k));
    int c = 0;
    for (int j = 0; j < n; ++j) {
      if (g.edge_is_a(j) == (side == 'A')) {
        start[static_cast<size_t>(c)] = j;
        end[static_cast<size_t>(c)] = (j + 1) % n;
        ++c;
      }
    }
    std::vector<int> witness = edges_to_vertex_indices(r.argmin_edges, start, end);
    if (side == 'A') {
      rep.min_margin_a = r.min_margin;
      rep.has_alternating_a = true;
    } else {
      rep.min_margin_b = r.min_margin;
      rep.has_alternating_b = true;
    }
    rep.checked_alternating += (1LL << k) - k - 1;
    if (r.min_margin < -kEpsMargin)
      rep.violations.push_back({witness, side, r.min_margin});
    else if (r.min_margin <= kEpsMargin)
      rep.equalities.push_back({witness, side, r.min_margin});
  }
}

}  // namespace

AdmissibilityReport check_admissibility(const ScherkPolygon& g, CheckStrategy strategy) {
  AdmissibilityReport rep;
  rep.balance = gamma_balance(g);
  rep.balanced = std::fabs(rep.balance) < kEpsMargin;
  rep.min_margin_a = std::numeric_limits<double>::infinity();
  rep.min_margin_b = std::numeric_limits<double>::infinity();
  bool exhaustive = strategy == CheckStrategy::kExhaustive ||
                    (strategy == CheckStrategy::kAuto &&
                     g.num_vertices() <= kEnumGuardVertices);
  if (exhaustive)
    check_exhaustive(g, rep);
  else
    check_dp(g, rep);
  rep.admissible = rep.balanced && rep.violations.empty() && rep.equalities.empty();
  return rep;
}

Decoration disjoint_uniform_decoration(const ScherkPolygon& g, double slack) {
  int n = g.num_vertices();
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      worst = std::min(worst, truncated_distance(g.vertex(i), g.vertex(j), 1, 1));
  int m = 0;
  while (worst + 2 * m * std::log(2.0) <= slack && m < 60) ++m;
  return Decoration::uniform(n, std::pow(2.0, -m));
}

}  // namespace scherk
