#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "torihull/errors.hpp"
#include "torihull/toric_hull.hpp"

namespace torihull {
namespace {

using testing::Rng;

TorusPoint p1(double a) { return TorusPoint({a}); }

FinitePointSet roots_of_unity(int count) {
  FinitePointSet s;
  for (int l = 0; l < count; ++l) s.push_back(p1(kTwoPi * l / count));
  return s;
}

LabeledSet fig1b() { return LabeledSet::singletons({p1(-kPi / 2), p1(0.0), p1(3 * kPi / 4)}); }

// Hull anchored at an arbitrary rotation b, without any admissibility check.
ToricHull hull_at(const LabeledSet& e, const TorusPoint& b) {
  std::vector<AngleVector> chart;
  for (const auto& z : rotate(e.points, b)) chart.push_back(z.angles());
  return ToricHull::anchored(b, Polytope::hull_of(chart));
}

// A rotation placing -1 at fraction t of the widest gap of every coordinate.
TorusPoint rotation_in_gap(const GapStructure& gs, Rng& rng) {
  std::vector<double> b;
  for (const auto& cg : gs.coords) {
    const std::size_t g = cg.maximal.front();
    const double t = testing::uniform(rng, 0.05, 0.95);
    b.push_back(kPi - (cg.starts[g] + t * cg.lengths[g]));
  }
  return TorusPoint(std::move(b));
}

// Random union of small clusters, each labelled as one component.
LabeledSet random_clustered(Rng& rng, std::size_t d, int clusters) {
  LabeledSet e;
  for (int c = 1; c <= clusters; ++c) {
    const TorusPoint centre = testing::random_point(rng, d);
    for (const auto& p : testing::random_cluster(rng, centre, 3, 0.05)) {
      e.points.push_back(p);
      e.components.push_back(c);
    }
  }
  return e;
}

TEST(VerySimple, Examples) {
  EXPECT_TRUE(is_very_simple({p1(0.0)}));
  EXPECT_FALSE(is_very_simple({p1(kPi)}));
  EXPECT_TRUE(is_very_simple({TorusPoint({3 * kPi / 4, 0.0})}, 0.0));
  EXPECT_FALSE(is_very_simple({TorusPoint({3 * kPi / 4, 0.0})}, 1.0));
}

TEST(Simple, FiniteSetsAreSimple) {
  FinitePointSet deg;
  for (int i = 0; i < 360; ++i) deg.push_back(p1(kTwoPi * i / 360.0));
  EXPECT_TRUE(is_simple(LabeledSet::singletons(deg)));
  LabeledSet sampled = LabeledSet::singletons(deg);
  sampled.mesh = kTwoPi / 360.0;
  EXPECT_FALSE(is_simple(sampled));
}

TEST(Simple, VerySimpleImpliesSimple) {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    const auto pts = testing::random_set(rng, 5, 1 + t % 3);
    if (is_very_simple(pts)) EXPECT_TRUE(is_simple(LabeledSet::singletons(pts)));
  }
}

TEST(GapStructure, GapsSumToFullTurn) {
  Rng rng(22);
  for (int t = 0; t < 200; ++t) {
    const auto pts = testing::random_set(rng, 1 + t % 9, 1 + t % 4);
    const GapStructure gs = gap_structure(pts, 1e-9);
    for (const auto& cg : gs.coords) {
      double total = 0.0;
      for (double l : cg.lengths) total += l;
      EXPECT_NEAR(total, kTwoPi, 1e-10);
      EXPECT_GT(cg.max_gap, 0.0);
    }
  }
}

TEST(AdmissiblePoints, Examples) {
  const auto single = admissible_points(LabeledSet::singletons({p1(0.0)}));
  ASSERT_EQ(single.representatives.size(), 1u);
  EXPECT_EQ(principal_arg(mul(single.representatives[0], p1(0.0)))[0], 0.0);
  EXPECT_EQ(single.chart_diameter[0], 0.0);

  const auto three = admissible_points(LabeledSet::singletons({p1(-1.0), p1(0.0), p1(1.0)}));
  ASSERT_EQ(three.representatives.size(), 1u);
  EXPECT_NEAR(torus_dist(three.representatives[0], p1(0.0)), 0.0, 1e-15);
  EXPECT_NEAR(three.chart_diameter[0], 2.0, 1e-15);

  const auto four = admissible_points(LabeledSet::singletons(roots_of_unity(4)));
  EXPECT_EQ(four.representatives.size(), 4u);
}

TEST(AdmissiblePoints, DiameterIdentityAndAdmissibility) {
  Rng rng(23);
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = 1 + t % 3;
    const LabeledSet e = LabeledSet::singletons(testing::random_set(rng, 2 + t % 6, d));
    const auto ap = admissible_points(e);
    for (const auto& b : ap.representatives) {
      const auto moved = rotate(e.points, b);
      EXPECT_TRUE(is_very_simple(moved));
      EXPECT_TRUE(is_admissible(e.points, b, 1e-9));
      for (std::size_t j = 0; j < d; ++j) {
        double lo = kPi, hi = -kPi;
        for (const auto& z : moved) {
          lo = std::min(lo, z[j]);
          hi = std::max(hi, z[j]);
        }
        EXPECT_NEAR(hi - lo, ap.chart_diameter[j], 1e-12);
      }
    }
  }
}

TEST(AdmissiblePoints, CapExceeded) {
  FinitePointSet grid;
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) grid.push_back(TorusPoint({kTwoPi * a / 8, kTwoPi * b / 8}));
  }
  Tolerances tol;
  tol.combination_cap = 32;
  EXPECT_THROW(admissible_points(LabeledSet::singletons(grid), tol), CapExceededError);
  EXPECT_EQ(admissible_points(LabeledSet::singletons(grid)).representatives.size(), 64u);
}

TEST(PhaseShifts, Examples) {
  const LabeledSet two = LabeledSet::singletons({p1(kPi / 2), p1(-kPi / 2)});
  const auto same = phase_shifts(two, p1(0.0), p1(0.0));
  EXPECT_EQ(same, (std::vector<AngleVector>{{0.0}, {0.0}}));
  EXPECT_EQ(phase_shifts(two, p1(0.0), p1(kPi / 4)), (std::vector<AngleVector>{{0.0}, {0.0}}));
  const LabeledSet one = LabeledSet::singletons({p1(3 * kPi / 4)});
  EXPECT_EQ(phase_shifts(one, p1(0.0), p1(kPi / 2)), (std::vector<AngleVector>{{-kTwoPi}}));
}

TEST(PhaseShifts, RejectsInconsistentComponent) {
  LabeledSet e;
  e.points = {p1(0.0), p1(kPi - 0.1)};
  e.components = {1, 1};
  EXPECT_THROW(phase_shifts(e, p1(0.0), p1(0.5)), InputError);
}

TEST(Genericity, Examples) {
  const auto roots = check_generic(LabeledSet::singletons(roots_of_unity(4)));
  EXPECT_FALSE(roots.generic);
  ASSERT_TRUE(roots.witness.has_value());
  EXPECT_NE(roots.witness->shift_a, roots.witness->shift_b);

  EXPECT_FALSE(is_generic(fig1b()));
  EXPECT_TRUE(is_generic(LabeledSet::singletons({p1(-1.0), p1(0.0), p1(1.0)})));
  EXPECT_TRUE(is_generic(LabeledSet::singletons({p1(2.0)})));
}

TEST(Genericity, ParallelScanAgreesWithSerial) {
  Rng rng(24);
  Tolerances par;
  par.threads = 4;
  for (int k = 2; k <= 6; ++k) {
    const LabeledSet e = LabeledSet::singletons(roots_of_unity(2 * k));
    const auto a = check_generic(e);
    const auto b = check_generic(e, par);
    EXPECT_EQ(a.generic, b.generic);
    ASSERT_TRUE(a.witness && b.witness);
    EXPECT_EQ(a.witness->c, b.witness->c);
  }
  for (int t = 0; t < 50; ++t) {
    const LabeledSet e = random_clustered(rng, 2, 3);
    EXPECT_EQ(is_generic(e), is_generic(e, par));
  }
}

TEST(ConvexHull, Examples) {
  const ToricHull single = convex_hull_simple(LabeledSet::singletons({p1(1.3)}));
  ASSERT_FALSE(single.is_full());
  EXPECT_EQ(single.chart().vertices().size(), 1u);
  EXPECT_NEAR(single.distance_to(p1(1.3)), 0.0, 1e-15);

  const ToricHull arc = convex_hull_simple(LabeledSet::singletons({p1(-1.0), p1(0.0), p1(1.0)}));
  ASSERT_FALSE(arc.is_full());
  EXPECT_EQ(arc.chart().vertices().size(), 2u);
  EXPECT_TRUE(arc.contains(p1(0.7)));
  EXPECT_FALSE(arc.contains(p1(kPi)));
  EXPECT_NEAR(arc.distance_to(p1(kPi)), kPi - 1.0, 1e-12);

  EXPECT_TRUE(convex_hull_simple(LabeledSet::singletons(roots_of_unity(4))).is_full());

  LabeledSet sampled = LabeledSet::singletons(roots_of_unity(360));
  sampled.mesh = kTwoPi / 360.0;
  EXPECT_THROW(convex_hull_simple(sampled), InputError);
}

TEST(ConvexHull, ContainsGeneratingSet) {
  Rng rng(25);
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = 1 + t % 3;
    const LabeledSet e = LabeledSet::singletons(testing::random_set(rng, 1 + t % 8, d));
    const ToricHull h = convex_hull_simple(e);
    for (const auto& z : e.points) EXPECT_LE(h.distance_to(z), 1e-10);
  }
}

TEST(ConvexHull, IndependentOfAdmissibleRotation) {
  Rng rng(26);
  int checked = 0;
  for (int t = 0; checked < 500; ++t) {
    const std::size_t d = 1 + t % 3;
    const LabeledSet e = (t % 2 == 0) ? LabeledSet::singletons(testing::random_set(rng, 2 + t % 6, d))
                                      : random_clustered(rng, d, 1 + t % 3);
    if (!is_generic(e)) continue;
    const GapStructure gs = gap_structure(e.points, 1e-9);
    const TorusPoint b = rotation_in_gap(gs, rng);
    const TorusPoint c = rotation_in_gap(gs, rng);
    EXPECT_LE(hull_hausdorff(hull_at(e, b), hull_at(e, c), 1e-9), 1e-9);
    EXPECT_LE(hull_hausdorff(hull_at(e, b), convex_hull_simple(e), 1e-9), 1e-9);
    ++checked;
  }
}

TEST(ConvexHull, Equivariance) {
  Rng rng(27);
  for (int t = 0; t < 500; ++t) {
    const std::size_t d = 1 + t % 3;
    const LabeledSet e = LabeledSet::singletons(testing::random_set(rng, 1 + t % 10, d));
    EXPECT_TRUE(hull_equivariance_check(e, testing::random_point(rng, d)));
  }
  EXPECT_TRUE(hull_equivariance_check(fig1b(), p1(0.4)));
  EXPECT_TRUE(hull_equivariance_check(fig1b(), TorusPoint::identity(1)));
}

TEST(HullHausdorff, Examples) {
  const auto arc = [](double lo, double hi) {
    return ToricHull::anchored(TorusPoint::identity(1), Polytope::hull_of({{lo}, {hi}}));
  };
  EXPECT_EQ(hull_hausdorff(arc(-1, 1), arc(-1, 1), 1e-3), 0.0);
  EXPECT_NEAR(hull_hausdorff(arc(-1, 1), arc(-1, 1.2), 1e-3), 0.2, 1e-3);
  const ToricHull point = convex_hull_simple(LabeledSet::singletons({p1(0.0)}));
  EXPECT_NEAR(hull_hausdorff(ToricHull::full(1), point, 1e-3), kPi, 1e-3);
  EXPECT_EQ(hull_hausdorff(ToricHull::full(2), ToricHull::full(2), 1e-3), 0.0);
}

TEST(HullHausdorff, NeverExceedsVertexOracleAndStaysWithinMesh) {
  Rng rng(28);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = 1 + t % 2;
    const LabeledSet a = LabeledSet::singletons(testing::random_cluster(rng, TorusPoint::identity(d), 4, 1.0));
    const LabeledSet b = LabeledSet::singletons(testing::random_cluster(rng, TorusPoint::identity(d), 4, 1.0));
    const ToricHull ha = convex_hull_simple(a);
    const ToricHull hb = convex_hull_simple(b);
    // Both hulls sit inside the identity chart, where the torus metric is
    // Euclidean for these small sets; the vertex formula is exact.
    const auto on_torus = [](const ToricHull& h, const AngleVector& v) {
      return mul(inv(h.base()), TorusPoint(v));
    };
    double oracle = 0.0;
    for (const auto& v : ha.chart().vertices()) oracle = std::max(oracle, hb.distance_to(on_torus(ha, v)));
    for (const auto& v : hb.chart().vertices()) oracle = std::max(oracle, ha.distance_to(on_torus(hb, v)));
    const double mesh = 1e-3;
    const double got = hull_hausdorff(ha, hb, mesh);
    EXPECT_LE(got, oracle + 1e-12);
    EXPECT_GE(got, oracle - mesh);
  }
}

TEST(Perturbation, MakesGenericWithinEps) {
  const LabeledSet fig = fig1b();
  const LabeledSet out = perturb_to_generic(fig, 0.01, 7);
  EXPECT_TRUE(is_generic(out));
  EXPECT_LE(hausdorff(fig.points, out.points), 0.01);

  const LabeledSet roots = LabeledSet::singletons(roots_of_unity(4));
  const LabeledSet r = perturb_to_generic(roots, 0.01, 3);
  EXPECT_TRUE(is_generic(r));
  EXPECT_LE(hausdorff(roots.points, r.points), 0.01);

  const LabeledSet generic = LabeledSet::singletons({p1(-1.0), p1(0.0), p1(1.0)});
  EXPECT_EQ(perturb_to_generic(generic, 0.01, 1).points, generic.points);
}

TEST(Perturbation, DeterministicForSeed) {
  const LabeledSet a = perturb_to_generic(fig1b(), 0.01, 42);
  const LabeledSet b = perturb_to_generic(fig1b(), 0.01, 42);
  EXPECT_EQ(a.points, b.points);
}

TEST(LabeledSet, ValidationAndClustering) {
  LabeledSet bad;
  bad.points = {p1(0.0), p1(1.0)};
  bad.components = {1, 3};
  EXPECT_THROW(bad.validate(), InputError);
  bad.components = {1};
  EXPECT_THROW(bad.validate(), InputError);
  const LabeledSet c = LabeledSet::clustered({p1(0.0), p1(0.05), p1(2.0)}, 0.1);
  EXPECT_EQ(c.components, (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(c.component_count(), 2);
}

}  // namespace
}  // namespace torihull
