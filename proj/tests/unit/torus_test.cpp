#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>

#include "support.hpp"
#include "torihull/errors.hpp"
#include "torihull/spatial_index.hpp"
#include "torihull/torus.hpp"

namespace torihull {
namespace {

using testing::Rng;

TorusPoint p1(double a) { return TorusPoint({a}); }

TEST(NormalizeAngle, HalfOpenConvention) {
  EXPECT_EQ(normalize_angle(kPi), kPi);
  EXPECT_EQ(normalize_angle(-kPi), kPi);
  EXPECT_DOUBLE_EQ(normalize_angle(3.0 * kPi / 2.0), -kPi / 2.0);
  EXPECT_DOUBLE_EQ(normalize_angle(kTwoPi + 0.25), 0.25);
  EXPECT_EQ(normalize_angle(0.0), 0.0);
}

TEST(PrincipalArg, Examples) {
  EXPECT_EQ(principal_arg(TorusPoint::identity(3)), (AngleVector{0.0, 0.0, 0.0}));
  const std::complex<double> minus_one[] = {{-1.0, 0.0}};
  EXPECT_EQ(principal_arg(TorusPoint::from_complex(minus_one))[0], kPi);
  EXPECT_NEAR(principal_arg(p1(3.0 * kPi / 2.0))[0], -kPi / 2.0, 1e-15);
  EXPECT_EQ(principal_arg(std::complex<double>(-1.0, -0.0)), kPi);
}

TEST(TorusPoint, RejectsNonUnitModulus) {
  const std::complex<double> z[] = {{0.5, 0.0}};
  EXPECT_THROW(TorusPoint::from_complex(z), InputError);
}

TEST(TorusPoint, RoundTripProperty) {
  Rng rng(1);
  for (int t = 0; t < 1000; ++t) {
    const TorusPoint p = testing::random_point(rng, 1 + t % 4);
    const auto z = p.to_complex();
    for (const auto& c : z) EXPECT_NEAR(std::abs(c), 1.0, 1e-12);
    const TorusPoint back = TorusPoint::from_complex(z);
    for (std::size_t j = 0; j < p.dim(); ++j) EXPECT_NEAR(circle_distance(back[j], p[j]), 0.0, 1e-14);
    EXPECT_EQ(TorusPoint(principal_arg(p)), p);
  }
}

TEST(GroupOps, Examples) {
  EXPECT_NEAR(torus_dist(mul(p1(kPi / 2), p1(-kPi / 2)), TorusPoint::identity(1)), 0.0, 1e-15);
  const TorusPoint a({kPi / 3, -kPi / 4});
  EXPECT_NEAR(torus_dist(inv(a), TorusPoint({-kPi / 3, kPi / 4})), 0.0, 1e-15);
  EXPECT_NEAR(mul(p1(3 * kPi / 4), p1(kPi / 2))[0], -3 * kPi / 4, 1e-15);
  EXPECT_THROW(mul(p1(0.1), TorusPoint({0.1, 0.2})), InputError);
}

TEST(GroupOps, InverseProperty) {
  Rng rng(2);
  for (int t = 0; t < 500; ++t) {
    const TorusPoint a = testing::random_point(rng, 1 + t % 5);
    EXPECT_LE(torus_dist(mul(a, inv(a)), TorusPoint::identity(a.dim())), 1e-15);
  }
}

TEST(TorusDist, Examples) {
  EXPECT_EQ(torus_dist(p1(0.4), p1(0.4)), 0.0);
  EXPECT_DOUBLE_EQ(torus_dist(p1(0.0), p1(kPi)), kPi);
  EXPECT_NEAR(torus_dist(TorusPoint({3.0, 0.0}), TorusPoint({-3.0, 0.0})), kTwoPi - 6.0, 1e-15);
}

TEST(TorusDist, MetricProperties) {
  Rng rng(3);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t d = 1 + t % 4;
    const TorusPoint x = testing::random_point(rng, d);
    const TorusPoint y = testing::random_point(rng, d);
    const TorusPoint z = testing::random_point(rng, d);
    const double xy = torus_dist(x, y);
    EXPECT_NEAR(xy, testing::brute_torus_dist(x, y), 1e-12);
    EXPECT_EQ(xy, torus_dist(y, x));
    EXPECT_LE(xy, torus_dist(x, z) + torus_dist(z, y) + 1e-12);
    EXPECT_LE(xy, kPi * std::sqrt(static_cast<double>(d)) + 1e-12);
    EXPECT_LE(torus_dist(x, x), 1e-12);
  }
}

TEST(Hausdorff, Examples) {
  const FinitePointSet a{p1(0.0)};
  const FinitePointSet b{p1(0.0), p1(kPi / 2)};
  EXPECT_EQ(hausdorff(a, a), 0.0);
  EXPECT_DOUBLE_EQ(hausdorff(a, b), kPi / 2);
  EXPECT_EQ(directed_hausdorff(a, b), 0.0);
  EXPECT_THROW(hausdorff({}, b), InputError);
}

TEST(Hausdorff, AgreesWithBruteForceAndIsRotationInvariant) {
  Rng rng(4);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 1 + t % 4;
    const FinitePointSet a = testing::random_set(rng, 1 + t % 7, d);
    const FinitePointSet b = testing::random_set(rng, 1 + t % 5, d);
    const TorusPoint r = testing::random_point(rng, d);
    const double h = hausdorff(a, b);
    EXPECT_NEAR(h, testing::brute_hausdorff(a, b), 1e-12);
    EXPECT_NEAR(hausdorff(rotate(a, r), rotate(b, r)), h, 1e-12);
  }
}

TEST(Hausdorff, IndexedPathMatchesBruteForce) {
  Rng rng(8);
  for (int t = 0; t < 6; ++t) {
    const std::size_t d = 1 + t % 3;
    const FinitePointSet a = testing::random_set(rng, 300, d);
    const FinitePointSet b = testing::random_set(rng, 250, d);
    EXPECT_NEAR(hausdorff(a, b), testing::brute_hausdorff(a, b), 1e-12);
  }
}

TEST(MatchedDistance, BoundsHausdorff) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const FinitePointSet a = testing::random_set(rng, 6, 2);
    FinitePointSet b = a;
    std::shuffle(b.begin(), b.end(), rng);
    EXPECT_LE(matched_distance(a, b), 1e-15);
    const FinitePointSet c = testing::random_set(rng, 6, 2);
    EXPECT_GE(matched_distance(a, c) + 1e-12, hausdorff(a, c));
  }
}

TEST(ConnectedComponents, Examples) {
  const FinitePointSet two{p1(0.0), p1(0.5)};
  EXPECT_EQ(connected_components(two, 0.1), (std::vector<int>{1, 2}));
  EXPECT_EQ(connected_components(two, 0.6), (std::vector<int>{1, 1}));
  EXPECT_EQ(connected_components(two, 0.0), (std::vector<int>{1, 2}));

  FinitePointSet arc;
  for (int i = 0; i < 100; ++i) arc.push_back(p1(-0.5 + 0.01 * i));
  const auto labels = connected_components(arc, 0.02);
  EXPECT_TRUE(std::all_of(labels.begin(), labels.end(), [](int c) { return c == 1; }));
}

TEST(ConnectedComponents, WrapsAroundTheCut) {
  const FinitePointSet pts{p1(kPi - 0.01), p1(0.0), p1(-kPi + 0.01)};
  EXPECT_EQ(connected_components(pts, 0.05), (std::vector<int>{1, 2, 1}));
}

TEST(ConnectedComponents, MatchesBruteForceUnionFind) {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 1 + t % 3;
    const FinitePointSet pts = testing::random_set(rng, 40, d);
    const double eps = testing::uniform(rng, 0.1, 1.5);
    const auto labels = connected_components(pts, eps);
    std::vector<int> root(pts.size());
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int i) { return root[i] == i ? i : root[i] = find(root[i]); };
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        if (testing::brute_torus_dist(pts[i], pts[j]) <= eps) root[find(i)] = find(j);
      }
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < pts.size(); ++j) {
        EXPECT_EQ(labels[i] == labels[j], find(i) == find(j));
      }
    }
  }
}

TEST(GridIndex, RadiusQueryMatchesScan) {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = 1 + t % 3;
    const FinitePointSet pts = testing::random_set(rng, 200, d);
    const TorusGridIndex index(pts, 0.3);
    const TorusPoint q = testing::random_point(rng, d);
    const double r = testing::uniform(rng, 0.05, 1.0);
    auto got = index.within(q, r);
    std::sort(got.begin(), got.end());
    std::vector<std::size_t> want;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (testing::brute_torus_dist(q, pts[i]) <= r) want.push_back(i);
    }
    EXPECT_EQ(got, want);
    double nearest = INFINITY;
    for (const auto& p : pts) nearest = std::min(nearest, testing::brute_torus_dist(q, p));
    EXPECT_NEAR(index.nearest_distance(q, [](std::size_t) { return true; }), nearest, 1e-12);
  }
}

}  // namespace
}  // namespace torihull
