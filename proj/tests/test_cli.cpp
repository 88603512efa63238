#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "dimerbell/json_io.hpp"

namespace db = dimerbell;

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in.good()) << "cannot open " << path;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    std::string tmpl = ::testing::TempDir() + "dimerbell_cli_XXXXXX";
    char* made = mkdtemp(tmpl.data());
    ASSERT_NE(made, nullptr);
    dir_ = made;
  }

  // Runs the real binary; stdout/stderr are discarded unless redirected by
  // the caller via --out.
  static int run(const std::string& args) {
    const std::string cmd =
        std::string(DIMERBELL_BIN) + " " + args + " > /dev/null 2> /dev/null";
    const int status = std::system(cmd.c_str());
    EXPECT_TRUE(WIFEXITED(status)) << "command did not exit normally: " << cmd;
    return WEXITSTATUS(status);
  }

  static std::string path(const std::string& name) { return dir_ + "/" + name; }

  static std::string dir_;
};

std::string CliTest::dir_;

}  // namespace

TEST_F(CliTest, HelpExitsZero) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run("enumerate --help"), 0);
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run(""), 1);                                       // missing subcommand
  EXPECT_EQ(run("enumerate --n 2"), 1);                        // lattice too small
  EXPECT_EQ(run("enumerate --n 3 --boundary mobius"), 1);      // unknown boundary
  EXPECT_EQ(run("quantum-value --n 3 --epsilon 1 --solver qr"), 1);
  EXPECT_EQ(run("quantum-value --n 3 --epsilon 1 --tol -1"), 1);
  EXPECT_EQ(run("sweep --n 3 --grid 1:0:0.5 --out " + path("bad.csv")), 1);
  EXPECT_EQ(run("sweep --n 3 --out " + path("bad2.json")), 1);  // grid missing
  EXPECT_EQ(run("classical-bound --n 3 --epsilon 0.5 --class-id 99"), 1);
  EXPECT_EQ(run("classical-bound --n 3"), 1);                  // epsilon/grid missing
}

TEST_F(CliTest, EnumerateWritesFullDocument) {
  ASSERT_EQ(run("enumerate --n 3 --boundary torus --out " + path("enum.json")), 0);
  auto doc = db::ordered_json::parse(slurp(path("enum.json")));
  EXPECT_EQ(doc["version"], "dimerbell 0.1.0");
  EXPECT_EQ(doc["config"]["command"], "enumerate");
  EXPECT_EQ(doc["config"]["n"], 3);
  EXPECT_EQ(doc["count"], 72);
  EXPECT_EQ(doc["coverings"].size(), 72u);
  const std::string h = doc["input_hashes"]["coverings"];
  EXPECT_EQ(h.size(), 16u);
}

TEST_F(CliTest, EnumerateToStdout) {
  const std::string cmd = std::string(DIMERBELL_BIN) +
                          " enumerate --n 3 --boundary klein > " + path("stdout.json") +
                          " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  ASSERT_EQ(WEXITSTATUS(status), 0);
  auto doc = db::ordered_json::parse(slurp(path("stdout.json")));
  EXPECT_EQ(doc["count"], 78);
}

TEST_F(CliTest, ClassifyReportsStats) {
  ASSERT_EQ(run("classify --n 3 --boundary klein --out " + path("cls.json")), 0);
  auto doc = db::ordered_json::parse(slurp(path("cls.json")));
  EXPECT_EQ(doc["stats"]["num_classes"], 11);
  EXPECT_EQ(doc["stats"]["min_size"], 3);
  EXPECT_EQ(doc["stats"]["max_size"], 12);
  EXPECT_EQ(doc["stats"]["total"], 78);
  EXPECT_EQ(doc["classes"].size(), 11u);
}

TEST_F(CliTest, RerunsAreByteIdentical) {
  ASSERT_EQ(run("classify --n 3 --boundary torus --out " + path("a.json")), 0);
  ASSERT_EQ(run("classify --n 3 --boundary torus --out " + path("b.json")), 0);
  // The out path is embedded in the config block, so compare documents with
  // the path-bearing key removed; everything else must match byte for byte.
  auto a = db::ordered_json::parse(slurp(path("a.json")));
  auto b = db::ordered_json::parse(slurp(path("b.json")));
  a["config"].erase("out");
  b["config"].erase("out");
  EXPECT_EQ(a.dump(), b.dump());

  // And with identical --out the bytes themselves must repeat.
  ASSERT_EQ(run("classify --n 3 --boundary torus --out " + path("c.json")), 0);
  const std::string first = slurp(path("c.json"));
  ASSERT_EQ(run("classify --n 3 --boundary torus --out " + path("c.json")), 0);
  EXPECT_EQ(slurp(path("c.json")), first);
}

TEST_F(CliTest, CacheDirPopulatedAndReused) {
  const std::string cache = path("cache");
  ASSERT_EQ(run("classify --n 3 --boundary torus --cache-dir " + cache + " --out " +
                path("cached1.json")),
            0);
  const std::string cov_cache = slurp(cache + "/coverings_n3_torus.json");
  EXPECT_FALSE(cov_cache.empty());
  const std::string cls_cache = slurp(cache + "/classes_n3_torus.json");
  EXPECT_FALSE(cls_cache.empty());

  ASSERT_EQ(run("classify --n 3 --boundary torus --cache-dir " + cache + " --out " +
                path("cached2.json")),
            0);
  auto a = db::ordered_json::parse(slurp(path("cached1.json")));
  auto b = db::ordered_json::parse(slurp(path("cached2.json")));
  a["config"].erase("out");
  b["config"].erase("out");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST_F(CliTest, ClassicalBoundDecoupledAnchor) {
  ASSERT_EQ(run("classical-bound --n 3 --boundary torus --epsilon 1 --out " + path("cb.json")),
            0);
  auto doc = db::ordered_json::parse(slurp(path("cb.json")));
  ASSERT_EQ(doc["results"].size(), 3u);
  for (const auto& row : doc["results"]) {
    ASSERT_EQ(row["values"].size(), 1u);
    EXPECT_EQ(row["values"][0]["epsilon"], 1.0);
    EXPECT_EQ(row["values"][0]["beta_c"], -16.0);
  }
}

TEST_F(CliTest, QuantumValueSolversAgree) {
  ASSERT_EQ(run("quantum-value --n 3 --boundary torus --epsilon 1 --class-id 0 --solver dense "
                "--out " +
                path("qd.json")),
            0);
  auto dense = db::ordered_json::parse(slurp(path("qd.json")));
  const auto& dv = dense["results"][0]["values"][0];
  EXPECT_EQ(dv["method"], "dense");
  EXPECT_TRUE(dv["converged"].get<bool>());
  EXPECT_NEAR(dv["beta_q"].get<double>(), -16.0 * kSqrt2, 1e-9);

  ASSERT_EQ(run("quantum-value --n 3 --boundary torus --epsilon 1 --class-id 0 --solver lanczos "
                "--out " +
                path("ql.json")),
            0);
  auto lanczos = db::ordered_json::parse(slurp(path("ql.json")));
  const auto& lv = lanczos["results"][0]["values"][0];
  EXPECT_EQ(lv["method"], "lanczos");
  EXPECT_NEAR(lv["beta_q"].get<double>(), dv["beta_q"].get<double>(), 1e-6);
}

TEST_F(CliTest, CriticalReportsInterval) {
  ASSERT_EQ(run("critical --n 3 --boundary torus --class-id 0 --solver dense --out " +
                path("crit.json")),
            0);
  auto doc = db::ordered_json::parse(slurp(path("crit.json")));
  ASSERT_EQ(doc["results"].size(), 1u);
  const auto& row = doc["results"][0];
  EXPECT_TRUE(row["converged"].get<bool>());
  EXPECT_LT(row["eps_low"].get<double>(), 1.0);
  EXPECT_GT(row["eps_high"].get<double>(), 1.0);
  EXPECT_FALSE(row["trace"].empty());
  EXPECT_EQ(doc["summary"]["min_eps_low_class"], 0);
  EXPECT_EQ(doc["summary"]["max_eps_high_class"], 0);
}

TEST_F(CliTest, SweepCsvRoundTrip) {
  ASSERT_EQ(run("sweep --n 3 --boundary torus --class-id 0 --grid 0.5:1.5:0.5 --solver dense "
                "--out " +
                path("sweep.csv")),
            0);
  const std::string text = slurp(path("sweep.csv"));
  EXPECT_EQ(text.rfind("# dimerbell", 0), 0u);  // metadata prefix
  auto points = db::sweep_from_csv(text);
  ASSERT_EQ(points.size(), 3u);
  EXPECT_EQ(points[0].epsilon, 0.5);
  EXPECT_EQ(points[1].epsilon, 1.0);
  EXPECT_EQ(points[1].beta_c, -16.0);
  EXPECT_NEAR(points[1].beta_q, -16.0 * kSqrt2, 1e-9);
  // Serialization is lossless: write(parse(write)) reproduces the data rows.
  auto reparsed = db::sweep_from_csv(db::sweep_to_csv(points));
  ASSERT_EQ(reparsed.size(), points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    EXPECT_EQ(reparsed[i].epsilon, points[i].epsilon);
    EXPECT_EQ(reparsed[i].beta_c, points[i].beta_c);
    EXPECT_EQ(reparsed[i].beta_q, points[i].beta_q);
  }
}

TEST_F(CliTest, SweepJsonTrace) {
  ASSERT_EQ(run("sweep --n 3 --boundary torus --class-id 0 --grid 0.5:1.5:0.5 --solver dense "
                "--out " +
                path("sweep.json")),
            0);
  auto doc = db::ordered_json::parse(slurp(path("sweep.json")));
  EXPECT_EQ(doc["class_id"], 0);
  ASSERT_EQ(doc["trace"].size(), 3u);
  ASSERT_EQ(doc["trace"][1].size(), 3u);
  EXPECT_EQ(doc["trace"][1][0], 1.0);
  EXPECT_EQ(doc["trace"][1][1], -16.0);
}

TEST_F(CliTest, BellmapOutputs) {
  ASSERT_EQ(run("bellmap --m 2 --out " + path("bm2.json")), 0);
  auto doc = db::ordered_json::parse(slurp(path("bm2.json")));
  ASSERT_EQ(doc["alpha"].size(), 4u);
  const double expected[4] = {4.0, 4.0, 4.0, -4.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(doc["alpha"][i].get<double>(), expected[i], 1e-12);
  EXPECT_EQ(doc["rank"], 4);
  EXPECT_TRUE(doc["unique"].get<bool>());
  EXPECT_NEAR(doc["classical_min"].get<double>(), -8.0, 1e-12);

  ASSERT_EQ(run("bellmap --m 3 --out " + path("bm3.json")), 0);
  auto doc3 = db::ordered_json::parse(slurp(path("bm3.json")));
  EXPECT_EQ(doc3["alpha"].size(), 9u);
  EXPECT_FALSE(doc3["unique"].get<bool>());
  EXPECT_EQ(doc3["angles"].size(), 3u);
}
