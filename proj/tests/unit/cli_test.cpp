#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "torihull/io.hpp"

namespace torihull {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
};

std::string data(const std::string& name) { return std::string(TORIHULL_TEST_DATA) + "/" + name; }

// Runs the CLI with stderr discarded; `env` is prepended to the command line.
RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" + TORIHULL_CLI_PATH + "\" " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("torihull_cli_") +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string file(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(Cli, HullOfGenericSet) {
  const RunResult r = run("hull " + data("three_points.json"));
  ASSERT_EQ(r.code, 0);
  const ToricHull h = io::hull_from_json(r.out);
  ASSERT_FALSE(h.is_full());
  EXPECT_NEAR(h.distance_to(TorusPoint({0.5})), 0.0, 1e-12);
  EXPECT_NEAR(h.distance_to(TorusPoint({kPi})), kPi - 1.0, 1e-12);
}

TEST_F(Cli, HullOfNonGenericSetsIsFull) {
  for (const char* name : {"fig1b.json", "roots8.json"}) {
    const RunResult r = run(std::string("hull ") + data(name));
    ASSERT_EQ(r.code, 0) << name;
    EXPECT_TRUE(io::hull_from_json(r.out).is_full()) << name;
  }
}

TEST_F(Cli, HullAcrossTheCut) {
  const RunResult r = run("hull " + data("arc_through_cut.json"));
  ASSERT_EQ(r.code, 0);
  const ToricHull h = io::hull_from_json(r.out);
  EXPECT_NEAR(h.distance_to(TorusPoint({kPi})), 0.0, 1e-12);
  EXPECT_NEAR(h.distance_to(TorusPoint({0.0})), kPi - 1.0, 1e-9);
}

TEST_F(Cli, HullWithClusters) {
  const RunResult r = run("hull " + data("two_clusters.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(io::hull_from_json(r.out).is_full());
}

TEST_F(Cli, CircleIsNotDecidable) { EXPECT_EQ(run("hull " + data("circle.json")).code, 5); }

TEST_F(Cli, InputErrors) {
  EXPECT_EQ(run("hull " + data("malformed.json")).code, 2);
  EXPECT_EQ(run("hull " + data("does_not_exist.json")).code, 2);
  EXPECT_EQ(run("hull").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("hull --mesh -1 " + data("fig1b.json")).code, 2);
  EXPECT_EQ(run("converge --family arc --klist \"\"").code, 2);
  EXPECT_EQ(run("converge --family arc --klist 10,x").code, 2);
  EXPECT_EQ(run("converge --family arc --klist 30,10").code, 2);
  EXPECT_EQ(run("converge --family spiral --klist 10").code, 2);
  EXPECT_EQ(run("axioms --model toeplitz").code, 2);
  EXPECT_EQ(run("jointspec " + data("not_unitary.json")).code, 2);
}

TEST_F(Cli, CapExceeded) { EXPECT_EQ(run("family --k 1024 --d 2").code, 3); }

TEST_F(Cli, JointSpectrumAndMargin) {
  const RunResult ok = run("jointspec " + data("diag_family.json"));
  ASSERT_EQ(ok.code, 0);
  const LabeledSet s = io::labeled_set_from_json(ok.out);
  EXPECT_EQ(s.points.size(), 3u);

  EXPECT_EQ(run("jointspec " + data("minus_one_family.json")).code, 4);
  const RunResult rotated = run("jointspec --rotate " + data("minus_one_family.json"));
  ASSERT_EQ(rotated.code, 0);
  const FinitePointSet pts = io::labeled_set_from_json(rotated.out).points;
  const FinitePointSet want{TorusPoint({kPi}), TorusPoint({0.0}), TorusPoint({kPi / 2})};
  EXPECT_LE(matched_distance(pts, want), 1e-8);
}

TEST_F(Cli, FamilyFeedsJointSpectrum) {
  ASSERT_EQ(run("family --k 2 --d 2 -o " + file("fam.json")).code, 0);
  const RunResult r = run("jointspec --rotate " + file("fam.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_LE(matched_distance(io::labeled_set_from_json(r.out).points, analytic_joint_spectrum(2, 2)),
            1e-8);
}

TEST_F(Cli, ConvergeArc) {
  const RunResult r = run("converge --family arc --klist 10,30,100 --json " + file("side.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("k,n,hull_kind,distance_to_classical,A1_admissible_ok\n", 0), 0u);
  EXPECT_NE(r.out.find("\n100,100,anchored,"), std::string::npos);
  EXPECT_NE(slurp(file("side.json")).find("\"classical_hull\""), std::string::npos);
}

TEST_F(Cli, ConvergeTorusReportsAssumptionFailure) {
  const RunResult r = run("converge --family torus-bto --d 1 --klist 2,3 -o " + file("t.csv"));
  EXPECT_EQ(r.code, 5);
  EXPECT_NE(slurp(file("t.csv")).find("2,4,full,0,false"), std::string::npos);
}

TEST_F(Cli, OutputsAreByteIdenticalAcrossRunsAndThreads) {
  const std::string args = "converge --family arc --klist 11,31,101";
  const RunResult a = run(args);
  const RunResult b = run(args + " --threads 4");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const RunResult c = run("axioms --model perturbed --seed 3 --format json");
  const RunResult d = run("axioms --model perturbed --seed 3 --format json");
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out, d.out);
}

TEST_F(Cli, EnvironmentDefaultsYieldToFlags) {
  const std::string plain = run("axioms --model perturbed --hbar 0.1 0.01").out;
  const std::string env_seed = run("axioms --model perturbed --hbar 0.1 0.01", "TORIHULL_SEED=9").out;
  const std::string flag_seed = run("axioms --model perturbed --hbar 0.1 0.01 --seed 9").out;
  const std::string both = run("axioms --model perturbed --hbar 0.1 0.01 --seed 0", "TORIHULL_SEED=9").out;
  EXPECT_EQ(env_seed, flag_seed);
  EXPECT_NE(env_seed, plain);
  EXPECT_EQ(both, plain);
  EXPECT_EQ(run("hull " + data("fig1b.json"), "TORIHULL_MESH=-3").code, 2);
}

TEST_F(Cli, AxiomsText) {
  const RunResult r = run("axioms --model diagonal");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("model: diagonal\n", 0), 0u);
  EXPECT_NE(r.out.find("quasi_unitarity"), std::string::npos);
}

}  // namespace
}  // namespace torihull
