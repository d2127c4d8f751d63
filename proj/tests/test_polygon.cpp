#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "scherk/polygon.hpp"
#include "test_util.hpp"

using namespace scherk;
using scherk_test::Rng;

namespace {

ScherkPolygon symmetric_square(bool first_a = true) {
  std::vector<BoundaryPoint> v{BoundaryPoint(0), BoundaryPoint(kPi / 2),
                               BoundaryPoint(kPi), BoundaryPoint(3 * kPi / 2)};
  return ScherkPolygon(std::move(v), first_a);
}

// The paper's extended polygon: regular quadrilaterals E and E' attached to
// two adjacent sides [a4, a1] and [a1, a2] of the symmetric ideal square.
// Vertex order: (a1, b3, b4, a2, a3, a4, b1, b2) with first edge (a1, b3) a
// B-side.
ScherkPolygon paper_d0() {
  BoundaryPoint a1(0), a2(kPi / 2), a3(kPi), a4(3 * kPi / 2);
  InteriorPoint O(0, 0);
  auto [b1, b2] = make_regular_quadrilateral(a4, a1, O, SideChoice::kOppositeO);
  auto [b3, b4] = make_regular_quadrilateral(a1, a2, O, SideChoice::kOppositeO);
  std::vector<BoundaryPoint> v{a1, b3, b4, a2, a3, a4, b1, b2};
  return ScherkPolygon(std::move(v), /*first_edge_is_a=*/false);
}

ScherkPolygon random_polygon(Rng& rng, int n, double min_gap = 0.15) {
  while (true) {
    std::vector<double> gaps(static_cast<size_t>(n));
    double total = 0;
    for (double& g : gaps) {
      g = rng.uniform(min_gap, 1.0);
      total += g;
    }
    std::vector<BoundaryPoint> v;
    double t = rng.uniform(0, kTwoPi);
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      v.emplace_back(t);
      double step = gaps[static_cast<size_t>(i)] / total * kTwoPi;
      t += step;
      if (step < 0.05) ok = false;
    }
    if (!ok) continue;
    return ScherkPolygon(std::move(v), rng.uniform() < 0.5);
  }
}

Decoration random_decoration(Rng& rng, int n) {
  std::vector<double> s(static_cast<size_t>(n));
  for (double& x : s) x = rng.uniform(0.1, 5.0);
  return Decoration(std::move(s));
}

}  // namespace

TEST_CASE("polygon construction and labels") {
  ScherkPolygon sq = symmetric_square();
  CHECK(sq.num_vertices() == 4);
  CHECK(sq.k() == 2);
  CHECK(sq.edge_is_a(0));
  CHECK(!sq.edge_is_a(1));
  CHECK(sq.edge_label(0) == "A0");
  CHECK(sq.edge_label(1) == "B0");
  CHECK(sq.edge_label(2) == "A1");
  CHECK(sq.edge_label(3) == "B1");
  CHECK(sq.counterclockwise());

  // Clockwise input is accepted.
  std::vector<BoundaryPoint> v{BoundaryPoint(3 * kPi / 2), BoundaryPoint(kPi),
                               BoundaryPoint(kPi / 2), BoundaryPoint(0)};
  ScherkPolygon cw(std::move(v), true);
  CHECK(!cw.counterclockwise());

  // Coincident vertices are rejected.
  CHECK_THROWS_AS(ScherkPolygon({BoundaryPoint(0), BoundaryPoint(1),
                                 BoundaryPoint(2), BoundaryPoint(3),
                                 BoundaryPoint(4), BoundaryPoint(4 + 1e-14)},
                                true),
                  Error);
  // Odd vertex count.
  CHECK_THROWS_AS(ScherkPolygon({BoundaryPoint(0), BoundaryPoint(1),
                                 BoundaryPoint(2), BoundaryPoint(3),
                                 BoundaryPoint(4), BoundaryPoint(5),
                                 BoundaryPoint(6), BoundaryPoint(6.2),
                                 BoundaryPoint(0.5), BoundaryPoint(1.5)},
                                true),
                  Error);
  // Not cyclically ordered.
  CHECK_THROWS_AS(ScherkPolygon({BoundaryPoint(0), BoundaryPoint(2),
                                 BoundaryPoint(1), BoundaryPoint(3)},
                                true),
                  Error);
}

TEST_CASE("interior point is inside every edge half-plane") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    ScherkPolygon g = random_polygon(rng, 2 * rng.uniform_int(2, 5));
    InteriorPoint p = g.interior_point();
    for (int j = 0; j < g.num_vertices(); ++j) {
      Geodesic e = g.edge_geodesic(j);
      CHECK(e.side(p.z()) * g.domain_side_sign(j) > 0);
    }
  }
}

TEST_CASE("gamma balance: symmetric polygons balance to zero") {
  for (int k = 2; k <= 6; ++k) {
    std::vector<BoundaryPoint> v;
    for (int i = 0; i < 2 * k; ++i) v.emplace_back(kTwoPi * i / (2.0 * k));
    ScherkPolygon g(std::move(v), true);
    CHECK(std::fabs(gamma_balance(g)) < 1e-12);
  }
}

TEST_CASE("gamma balance: perturbed square is unbalanced but decoration independent") {
  std::vector<BoundaryPoint> v{BoundaryPoint(0.3), BoundaryPoint(kPi / 2),
                               BoundaryPoint(kPi), BoundaryPoint(3 * kPi / 2)};
  ScherkPolygon g(std::move(v), true);
  double bal = gamma_balance(g);
  CHECK(std::fabs(bal) > 1e-3);
  Rng rng(32);
  for (int i = 0; i < 20; ++i) {
    Decoration dec = random_decoration(rng, 4);
    Quantities q = quantities(g, dec);
    CHECK(q.a - q.b == doctest::Approx(bal).epsilon(1e-10));
  }
}

TEST_CASE("gamma balance is invariant under Moebius maps with transported decorations") {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    ScherkPolygon g = random_polygon(rng, 6);
    MoebiusMap m = scherk_test::random_automorphism(rng);
    std::vector<BoundaryPoint> mapped;
    std::vector<double> sizes;
    for (int i = 0; i < 6; ++i) {
      auto [p2, s2] = transport_horocycle(g.vertex(i), 1.0, m);
      mapped.push_back(p2);
      sizes.push_back(s2);
    }
    ScherkPolygon g2(mapped, g.first_edge_is_a());
    Quantities q2 = quantities(g2, Decoration(sizes));
    CHECK(q2.a - q2.b == doctest::Approx(gamma_balance(g)).epsilon(1e-9));
  }
}

TEST_CASE("quantities of the regular quadrilateral with step-by-step decoration") {
  BoundaryPoint a0(3 * kPi / 2), a1(0);
  InteriorPoint O(0, 0);
  auto [b1, b2] = make_regular_quadrilateral(a0, a1, O, SideChoice::kOppositeO);
  // Standalone Scherk quadrilateral (b1, b2, a1, a0); A-sides are (b2, a1)
  // and (a0, b1).
  ScherkPolygon e({b1, b2, a1, a0}, /*first_edge_is_a=*/false);
  // Step-by-step horocycles: unit at a0, a1; solve the outer sides.
  double len = truncated_distance(a0, a1, 1, 1);
  double sb1 = std::exp(truncated_distance(a0, b1, 1, 1) - len);
  double sb2 = std::exp(truncated_distance(a1, b2, 1, 1) - len);
  Decoration dec({sb1, sb2, 1.0, 1.0});  // indexed by (b1, b2, a1, a0)
  Quantities q = quantities(e, dec);
  CHECK(q.a == doctest::Approx(q.b).epsilon(1e-10));
  CHECK(q.perim == doctest::Approx(4 * len).epsilon(1e-9));
  CHECK(q.perim - 2 * q.a == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(q.perim - 2 * q.b == doctest::Approx(0.0).epsilon(1e-10));
  // All four side lengths are the common value.
  for (int j = 0; j < 4; ++j) {
    double l = truncated_distance(e.vertex(j), e.vertex(j + 1), dec.at(j),
                                  dec.at((j + 1) % 4));
    CHECK(l == doctest::Approx(len).epsilon(1e-9));
  }
}

TEST_CASE("uniform decoration scaling shifts the perimeter by the closed form") {
  Rng rng(34);
  ScherkPolygon g = random_polygon(rng, 8);
  auto polys = enumerate_inscribed(g);
  const InscribedPolygon& p =
      polys[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(polys.size()) - 1))];
  double c = 1.7;
  Quantities q1 = quantities(g, p, Decoration::unit(8));
  Quantities q2 = quantities(g, p, Decoration::uniform(8, c));
  // Each edge loses ln c per endpoint.
  CHECK(q1.perim - q2.perim ==
        doctest::Approx(2.0 * p.size() * std::log(c)).epsilon(1e-10));
}

TEST_CASE("enumeration counts and order") {
  ScherkPolygon sq = symmetric_square();
  auto poly4 = enumerate_inscribed(sq);
  CHECK(poly4.size() == 4);  // C(4,3), full set excluded
  CHECK(poly4[0].indices == std::vector<int>{0, 1, 2});
  CHECK(poly4[1].indices == std::vector<int>{0, 1, 3});
  CHECK(poly4[2].indices == std::vector<int>{0, 2, 3});
  CHECK(poly4[3].indices == std::vector<int>{1, 2, 3});

  std::vector<BoundaryPoint> hexv;
  for (int i = 0; i < 6; ++i) hexv.emplace_back(kTwoPi * i / 6.0);
  ScherkPolygon hex(std::move(hexv), true);
  CHECK(enumerate_inscribed(hex).size() == 41);  // 20 + 15 + 6
}

TEST_CASE("enumeration guard") {
  std::vector<BoundaryPoint> v;
  for (int i = 0; i < 26; ++i) v.emplace_back(kTwoPi * i / 26.0);
  ScherkPolygon big(std::move(v), true);
  CHECK_THROWS_AS(enumerate_inscribed(big), Error);
}

TEST_CASE("edge classes match independent adjacency recomputation") {
  Rng rng(35);
  ScherkPolygon g = random_polygon(rng, 8);
  enumerate_inscribed(g, [&](const InscribedPolygon& p) {
    int m = p.size();
    for (int t = 0; t < m; ++t) {
      int i = p.indices[static_cast<size_t>(t)];
      int j = p.indices[static_cast<size_t>((t + 1) % m)];
      EdgeClass expect = EdgeClass::kInterior;
      for (int e = 0; e < 8; ++e) {
        if (e == i && (e + 1) % 8 == j)
          expect = g.edge_is_a(e) ? EdgeClass::kBoundaryA : EdgeClass::kBoundaryB;
      }
      CHECK(p.classes[static_cast<size_t>(t)] == expect);
    }
  });
}

TEST_CASE("is_alternating: parity and matching characterization") {
  Rng rng(36);
  ScherkPolygon g = random_polygon(rng, 10);
  enumerate_inscribed(g, [&](const InscribedPolygon& p) {
    if (p.size() % 2 == 1) {
      CHECK(!is_alternating(p, 'A'));
      CHECK(!is_alternating(p, 'B'));
    }
    for (char side : {'A', 'B'}) {
      // Independent characterization: the vertex set is a disjoint union of
      // same-letter parent edges.
      std::set<int> verts(p.indices.begin(), p.indices.end());
      std::set<int> covered;
      for (int e = 0; e < 10; ++e) {
        if (g.edge_is_a(e) != (side == 'A')) continue;
        int u = e, w = (e + 1) % 10;
        if (verts.count(u) && verts.count(w)) {
          covered.insert(u);
          covered.insert(w);
        }
      }
      CHECK(is_alternating(p, side) == (covered == verts));
    }
  });
}

TEST_CASE("admissibility: symmetric square is strictly admissible") {
  AdmissibilityReport rep = check_admissibility(symmetric_square());
  CHECK(rep.balanced);
  CHECK(rep.admissible);
  CHECK(rep.violations.empty());
  CHECK(rep.equalities.empty());
  CHECK(rep.enumerated == 4);
  CHECK(rep.checked_alternating == 0);  // triangles are never alternating
  CHECK(rep.auto_satisfied == 4);
  CHECK(rep.strategy == "exhaustive");
}

TEST_CASE("admissibility: the extended polygon has exactly the four equality cases") {
  ScherkPolygon d0 = paper_d0();
  AdmissibilityReport rep = check_admissibility(d0);
  CHECK(rep.balanced);
  CHECK(!rep.admissible);  // equality cases block strict admissibility
  CHECK(rep.violations.empty());
  REQUIRE(rep.equalities.size() == 4);
  for (const auto& e : rep.equalities) CHECK(std::fabs(e.margin) <= 1e-10);

  // Expected polygons: boundaries of E, E' and their complements, in the
  // vertex order (a1, b3, b4, a2, a3, a4, b1, b2).
  std::set<std::vector<int>> expect{{0, 5, 6, 7},         // E
                                    {0, 1, 2, 3},         // E'
                                    {0, 1, 2, 3, 4, 5},   // D0 minus E
                                    {0, 3, 4, 5, 6, 7}};  // D0 minus E'
  std::set<std::vector<int>> got;
  for (const auto& e : rep.equalities) got.insert(e.indices);
  CHECK(got == expect);
}

TEST_CASE("alternating margins are decoration independent") {
  Rng rng(37);
  ScherkPolygon g = paper_d0();
  auto polys = enumerate_inscribed(g);
  for (const auto& p : polys) {
    for (char side : {'A', 'B'}) {
      if (!is_alternating(p, side)) continue;
      Quantities u = quantities(g, p, Decoration::unit(8));
      double base = side == 'A' ? u.perim - 2 * u.a : u.perim - 2 * u.b;
      for (int i = 0; i < 20; ++i) {
        Decoration dec = random_decoration(rng, 8);
        Quantities q = quantities(g, p, dec);
        double margin = side == 'A' ? q.perim - 2 * q.a : q.perim - 2 * q.b;
        CHECK(margin == doctest::Approx(base).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("admissibility verdict is Moebius equivariant") {
  Rng rng(38);
  for (int trial = 0; trial < 10; ++trial) {
    ScherkPolygon g = random_polygon(rng, 8);
    AdmissibilityReport r1 = check_admissibility(g);
    MoebiusMap m = scherk_test::random_automorphism(rng);
    std::vector<BoundaryPoint> mv;
    for (int i = 0; i < 8; ++i) mv.push_back(m.apply(g.vertex(i)));
    ScherkPolygon g2(std::move(mv), g.first_edge_is_a());
    AdmissibilityReport r2 = check_admissibility(g2);
    CHECK(r1.admissible == r2.admissible);
    CHECK(r1.balance == doctest::Approx(r2.balance).epsilon(1e-9));
    if (r1.has_alternating_a && r2.has_alternating_a)
      CHECK(r1.min_margin_a == doctest::Approx(r2.min_margin_a).epsilon(1e-9));
    if (r1.has_alternating_b && r2.has_alternating_b)
      CHECK(r1.min_margin_b == doctest::Approx(r2.min_margin_b).epsilon(1e-9));
  }
}

TEST_CASE("alternating-dp agrees with exhaustive enumeration") {
  Rng rng(39);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 * rng.uniform_int(3, 6);
    ScherkPolygon g = random_polygon(rng, n, 0.05);
    AdmissibilityReport ex = check_admissibility(g, CheckStrategy::kExhaustive);
    AdmissibilityReport dp = check_admissibility(g, CheckStrategy::kAlternatingDp);
    CHECK(ex.has_alternating_a == dp.has_alternating_a);
    CHECK(ex.has_alternating_b == dp.has_alternating_b);
    if (ex.has_alternating_a)
      CHECK(ex.min_margin_a == doctest::Approx(dp.min_margin_a).epsilon(1e-11));
    if (ex.has_alternating_b)
      CHECK(ex.min_margin_b == doctest::Approx(dp.min_margin_b).epsilon(1e-11));
    CHECK(ex.admissible == dp.admissible);
  }
  // Also on the equality-rich extended polygon.
  AdmissibilityReport ex = check_admissibility(paper_d0(), CheckStrategy::kExhaustive);
  AdmissibilityReport dp = check_admissibility(paper_d0(), CheckStrategy::kAlternatingDp);
  CHECK(dp.min_margin_a == doctest::Approx(ex.min_margin_a).epsilon(1e-12));
  CHECK(dp.min_margin_b == doctest::Approx(ex.min_margin_b).epsilon(1e-12));
  CHECK(std::fabs(dp.min_margin_a) <= 1e-10);
}

TEST_CASE("Remark-8 style decoration schedule satisfies the raw inequalities") {
  // On strictly admissible polygons, every proper inscribed polygon reaches
  // the raw inequalities (2) after shrinking horocycles at vertices missing
  // the letter edge; alternating ones carry positive margins outright.
  Rng rng(40);
  int found_admissible = 0;
  int guard = 0;
  while (found_admissible < 3 && guard++ < 500) {
    ScherkPolygon g = random_polygon(rng, 8, 0.25);
    AdmissibilityReport rep = check_admissibility(g);
    if (!rep.violations.empty() || !rep.equalities.empty()) continue;
    ++found_admissible;
    enumerate_inscribed(g, [&](const InscribedPolygon& p) {
      for (char side : {'A', 'B'}) {
        std::vector<double> sizes(8, 1.0);
        bool ok = false;
        for (int halvings = 0; halvings < 300; ++halvings) {
          Quantities q = quantities(g, p, Decoration(sizes));
          double margin = side == 'A' ? q.perim - 2 * q.a : q.perim - 2 * q.b;
          if (margin > 0) {
            ok = true;
            break;
          }
          EdgeClass want = side == 'A' ? EdgeClass::kBoundaryA : EdgeClass::kBoundaryB;
          int m = p.size();
          bool shrank = false;
          for (int t = 0; t < m; ++t) {
            bool touched =
                p.classes[static_cast<size_t>(t)] == want ||
                p.classes[static_cast<size_t>((t + m - 1) % m)] == want;
            if (!touched) {
              sizes[static_cast<size_t>(p.indices[static_cast<size_t>(t)])] /= 2;
              shrank = true;
            }
          }
          if (!shrank) break;  // alternating: margin is decoration independent
        }
        CHECK(ok);
      }
    });
  }
  CHECK(found_admissible == 3);
}

TEST_CASE("phi vanishes on regular quadrilaterals and grows with the perturbation") {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    BoundaryPoint a0 = scherk_test::random_boundary(rng);
    BoundaryPoint a1(a0.theta() + rng.uniform(0.5, 2.5));
    InteriorPoint O = scherk_test::random_interior(rng, 0.6);
    if (Geodesic(a0, a1).distance(O) < 0.05) continue;
    auto [b1, b2] = make_regular_quadrilateral(a0, a1, O, SideChoice::kOppositeO);
    CHECK(std::fabs(phi(a0, b1, b2, a1)) < 1e-10);

    // Moving b2 toward a1 strictly increases phi on a grid.
    double gap = angular_distance(b2, a1);
    double dir = std::remainder(a1.theta() - b2.theta(), kTwoPi) > 0 ? 1.0 : -1.0;
    double prev = 0;
    for (double frac : {0.01, 0.02, 0.04, 0.08}) {
      BoundaryPoint b2t(b2.theta() + dir * frac * gap);
      double val = phi(a0, b1, b2t, a1);
      CHECK(val > prev);
      prev = val;
    }
  }
}

TEST_CASE("phi is decoration independent") {
  Rng rng(42);
  BoundaryPoint a0(0.2), b1(1.1), b2(2.0), a1(3.4);
  for (int i = 0; i < 20; ++i) {
    double s0 = rng.uniform(0.1, 4.0), s1 = rng.uniform(0.1, 4.0),
           s2 = rng.uniform(0.1, 4.0), s3 = rng.uniform(0.1, 4.0);
    double v = truncated_distance(a0, a1, s0, s3) -
               truncated_distance(a1, b2, s3, s2) +
               truncated_distance(b2, b1, s2, s1) -
               truncated_distance(b1, a0, s1, s0);
    CHECK(v == doctest::Approx(phi(a0, b1, b2, a1)).epsilon(1e-10));
  }
}

TEST_CASE("disjoint uniform decoration") {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    ScherkPolygon g = random_polygon(rng, 8, 0.05);
    Decoration dec = disjoint_uniform_decoration(g);
    int n = g.num_vertices();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        CHECK(truncated_distance(g.vertex(i), g.vertex(j), dec.at(i), dec.at(j)) > 0);
  }
}
