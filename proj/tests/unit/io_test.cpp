#include <gtest/gtest.h>

#include "support.hpp"
#include "torihull/errors.hpp"
#include "torihull/io.hpp"

namespace torihull {
namespace {

using testing::Rng;

TEST(Io, PointSetRoundTrip) {
  Rng rng(61);
  for (int t = 0; t < 50; ++t) {
    const FinitePointSet pts = testing::random_set(rng, 1 + t % 7, 1 + t % 3);
    EXPECT_EQ(io::point_set_from_json(io::point_set_to_json(pts)), pts);
  }
}

TEST(Io, LabeledSetRoundTrip) {
  LabeledSet e = LabeledSet::clustered({TorusPoint({0.1}), TorusPoint({0.15}), TorusPoint({2.0})}, 0.1, 0.01);
  const LabeledSet back = io::labeled_set_from_json(io::labeled_set_to_json(e));
  EXPECT_EQ(back.points, e.points);
  EXPECT_EQ(back.components, e.components);
  EXPECT_EQ(back.mesh, e.mesh);
  EXPECT_EQ(back.epsilon_cluster, e.epsilon_cluster);
}

TEST(Io, LabeledSetDefaults) {
  const LabeledSet single = io::labeled_set_from_json(R"({"d": 1, "points": [[0.0], [0.05], [1.0]]})");
  EXPECT_EQ(single.components, (std::vector<int>{1, 2, 3}));
  EXPECT_FALSE(single.mesh.has_value());
  const LabeledSet clustered =
      io::labeled_set_from_json(R"({"d": 1, "points": [[0.0], [0.05], [1.0]], "epsilon_cluster": 0.1})");
  EXPECT_EQ(clustered.component_count(), 2);
}

TEST(Io, RejectsMalformedInput) {
  EXPECT_THROW(io::labeled_set_from_json("{"), InputError);
  EXPECT_THROW(io::labeled_set_from_json(R"({"points": [[0.0]]})"), InputError);
  EXPECT_THROW(io::labeled_set_from_json(R"({"d": 2, "points": [[0.0]]})"), InputError);
  EXPECT_THROW(io::labeled_set_from_json(R"({"d": 1, "points": []})"), InputError);
  EXPECT_THROW(io::labeled_set_from_json(R"({"d": 1, "points": [["x"]]})"), InputError);
  EXPECT_THROW(io::labeled_set_from_json(R"({"d": 1, "points": [[0.0]], "components": [1, 2]})"),
               InputError);
  EXPECT_THROW(io::labeled_set_from_json(R"({"d": 1, "points": [[0.0]], "epsilon_cluster": -1})"),
               InputError);
  EXPECT_THROW(io::family_from_json("[]"), InputError);
  EXPECT_THROW(io::matrix_from_json(R"({"n": 2, "re": [[1, 0]], "im": [[0, 0]]})"), InputError);
}

TEST(Io, HullRoundTrip) {
  const ToricHull full = ToricHull::full(3);
  const ToricHull back_full = io::hull_from_json(io::hull_to_json(full));
  EXPECT_TRUE(back_full.is_full());
  EXPECT_EQ(back_full.dim(), 3u);

  const ToricHull h = convex_hull_simple(LabeledSet::singletons(
      {TorusPoint({0.1, 0.2}), TorusPoint({1.0, -0.5}), TorusPoint({-0.7, 0.9})}));
  const ToricHull back = io::hull_from_json(io::hull_to_json(h));
  ASSERT_FALSE(back.is_full());
  EXPECT_EQ(back.base(), h.base());
  EXPECT_EQ(back.chart().vertices(), h.chart().vertices());
  EXPECT_THROW(io::hull_from_json(R"({"kind": "anchored", "d": 1, "base": [0], "vertices": [[4.0]]})"),
               InputError);
  EXPECT_THROW(io::hull_from_json(R"({"kind": "round", "d": 1})"), InputError);
}

TEST(Io, FamilyRoundTrip) {
  Rng rng(62);
  const UnitaryFamily fam{testing::random_unitary(rng, 3), testing::random_unitary(rng, 3)};
  EXPECT_EQ(io::family_from_json(io::family_to_json(fam)), fam);
  const ComplexMatrix m = testing::random_gaussian(rng, 4);
  EXPECT_EQ(io::matrix_from_json(io::matrix_to_json(m)), m);
}

TEST(Io, ConvergenceCsvFormat) {
  ConvergenceResult r;
  ConvergenceRecord rec;
  rec.k = 10;
  rec.n = 10;
  rec.hull = ToricHull::full(1);
  rec.distance_to_classical = 1.0 / 3.0;
  rec.a1_ok = true;
  r.records.push_back(rec);
  EXPECT_EQ(io::convergence_to_csv(r),
            "k,n,hull_kind,distance_to_classical,A1_admissible_ok\n10,10,full,0.333333333333,true\n");
}

TEST(Io, AxiomReportFormats) {
  const AxiomReport r = axiom_property_suite(ModelKind::diagonal, {0.1, 0.01});
  const std::string text = io::axiom_report_to_text(r);
  EXPECT_EQ(text.rfind("model: diagonal\n", 0), 0u);
  EXPECT_NE(text.find("Q1_composition"), std::string::npos);
  EXPECT_NE(text.find("n/a"), std::string::npos);
  const std::string json = io::axiom_report_to_json(r);
  EXPECT_NE(json.find("\"slope\": null"), std::string::npos);
}

TEST(Io, FormatNumber) {
  EXPECT_EQ(io::format_number(0.0), "0");
  EXPECT_EQ(io::format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(io::format_number(1e-20), "1e-20");
}

}  // namespace
}  // namespace torihull
