#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../tools/cli.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using orthodisk::cli::run;
using Json = nlohmann::json;

namespace {

struct Result {
  int status;
  std::string out, err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("orthodisk-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  Result call(std::vector<std::string> args) const {
    // Keep default manifests out of the working directory.
    if (std::find(args.begin(), args.end(), "--manifest") == args.end() &&
        std::find(args.begin(), args.end(), "--out") == args.end()) {
      args.push_back("--manifest");
      args.push_back(path("run.manifest.json"));
    }
    std::ostringstream out, err;
    const int status = run(args, out, err);
    return {status, out.str(), err.str()};
  }

  static std::string read(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

std::vector<std::string> csv_row(const std::string& text, int row) {
  std::istringstream in(text);
  std::string line;
  for (int i = 0; i <= row; ++i) std::getline(in, line);
  std::vector<std::string> cells;
  std::istringstream ls(line);
  for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
  return cells;
}

}  // namespace

TEST_F(CliTest, BoundExample) {
  const auto r = call({"bound", "--R", "100000", "--eps", "0"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_NEAR(j["u_star"].get<double>() / 1e-3, 1.0, 1e-6);
  EXPECT_NEAR(j["bound"].get<double>(), 1000, 1e-3);
  for (const char* key : {"t1", "t2", "t3"}) EXPECT_TRUE(j.contains(key));
}

TEST_F(CliTest, ZerosTableMatchesBisection) {
  const auto out = path("zeros.csv");
  const auto r = call({"zeros", "--n-max", "3", "--tol", "1e-10", "--out", out});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto text = read(out);
  for (int n = 1; n <= 3; ++n) {
    const auto cells = csv_row(text, n);
    ASSERT_GE(cells.size(), 2u);
    EXPECT_EQ(std::stoi(cells[0]), n);
    EXPECT_NEAR(std::stod(cells[1]), oracle::bessel_zero_n(n), 2e-10) << n;
  }
  EXPECT_TRUE(fs::exists(out + ".manifest.json"));
}

TEST_F(CliTest, CheckRectangle345) {
  const auto pts = write("rect345.csv", "x,y\n0,0\n3,0\n0,4\n3,4\n");
  const auto r = call({"check", "--points", pts, "--alphabet", "integers", "--tol", "1e-9"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["n_points"].get<int>(), 4);
}

TEST_F(CliTest, NegativeFindingStillExitsZero) {
  const auto pts = write("bad.csv", "x,y\n0,0\n1.5,0\n");
  const auto r = call({"check", "--points", pts, "--alphabet", "integers", "--tol", "1e-9"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_FALSE(Json::parse(r.out)["pass"].get<bool>());
}

TEST_F(CliTest, SumfreeReportsWitness) {
  const auto r = call({"sumfree", "--n-max", "2"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["witness"]["n"].get<int>(), 1);
  EXPECT_EQ(j["witness"]["m"].get<int>(), 1);
  EXPECT_EQ(j["witness"]["k"].get<int>(), 2);
  const double expect = 2 * oracle::bessel_zero_n(1) - oracle::bessel_zero_n(2);
  EXPECT_NEAR(j["c_min"].get<double>(), std::abs(expect), 1e-12);
}

TEST_F(CliTest, GenerateThenAnalyze) {
  const auto grid = path("grid.csv");
  ASSERT_EQ(call({"generate", "--kind", "grid", "--delta", "0.0625", "--out", grid}).status, 0);
  const auto r = call({"analyze", "--points", grid, "--scales", "6"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["n_points"].get<int>(), 256);
  EXPECT_EQ(j["profile"].size(), 7u);
}

TEST_F(CliTest, TubesPropTriplePipeline) {
  const auto grid = path("grid.csv");
  ASSERT_EQ(call({"generate", "--kind", "grid", "--delta", "0.03125", "--out", grid}).status, 0);
  const auto prop = call({"prop", "--points", grid, "--delta", "0.03125", "--eps", "1", "--eps-prime", "0.1"});
  ASSERT_EQ(prop.status, 0) << prop.err;
  EXPECT_GT(Json::parse(prop.out)["count"].get<long>(), 0);
  const auto triple = call({"triple", "--points", grid, "--delta", "0.03125", "--eps", "0.5"});
  ASSERT_EQ(triple.status, 0) << triple.err;
  const auto t = Json::parse(triple.out);
  EXPECT_TRUE(t["found"].get<bool>());
  EXPECT_LE(t["strip_width"].get<double>(), 0.03125);
  const auto tubes = call({"tubes", "--points", grid, "--delta", "0.125", "--s", "1"});
  ASSERT_EQ(tubes.status, 0) << tubes.err;
  EXPECT_TRUE(Json::parse(tubes.out)["tubes"].is_array());
}

TEST_F(CliTest, SearchMarksPartialResults) {
  const auto r = call({"search", "--alphabet", "integers", "--R", "5", "--tol", "1e-9", "--budget", "10"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j["partial"].get<bool>());
  EXPECT_FALSE(j["exhausted"].get<bool>());
}

TEST_F(CliTest, IdenticalInvocationsAreByteIdenticalAcrossThreads) {
  const std::vector<std::vector<std::string>> cases = {
      {"scan4", "--alphabet", "bessel", "--triangles", "200", "--seed", "3"},
      {"search", "--alphabet", "bessel", "--R", "1.5", "--budget", "20000", "--seed", "4"},
      {"sumfree", "--n-max", "50"},
      {"bound", "--R", "12345", "--eps", "0.2"},
  };
  for (const auto& base : cases) {
    auto one = base, four = base;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    const auto a = call(one), b = call(one), c = call(four);
    ASSERT_EQ(a.status, 0) << a.err;
    EXPECT_EQ(a.out, b.out) << base[0];
    EXPECT_EQ(a.out, c.out) << base[0];
  }
}

TEST_F(CliTest, ZerosFileIsByteIdenticalAcrossThreads) {
  const auto a = path("a.csv"), b = path("b.csv");
  ASSERT_EQ(call({"zeros", "--n-max", "200", "--threads", "1", "--out", a}).status, 0);
  ASSERT_EQ(call({"zeros", "--n-max", "200", "--threads", "4", "--out", b}).status, 0);
  EXPECT_EQ(read(a), read(b));
}

TEST_F(CliTest, ManifestRecordsRun) {
  const auto pts = write("rect.csv", "x,y\n0,0\n3,0\n0,4\n3,4\n");
  const auto out = path("report.json");
  ASSERT_EQ(call({"check", "--points", pts, "--alphabet", "integers", "--out", out}).status, 0);
  const auto m = Json::parse(read(out + ".manifest.json"));
  EXPECT_EQ(m["subcommand"], "check");
  EXPECT_EQ(m["params"]["alphabet"], "integers");
  ASSERT_TRUE(m["inputs"].contains(pts));
  EXPECT_EQ(m["inputs"][pts].get<std::string>().size(), 64u);
  EXPECT_TRUE(m.contains("version"));
  EXPECT_GE(m["duration_seconds"].get<double>(), 0.0);
}

TEST_F(CliTest, ExplicitManifestPath) {
  const auto manifest = path("m.json");
  ASSERT_EQ(call({"bound", "--R", "10", "--eps", "0", "--manifest", manifest}).status, 0);
  EXPECT_EQ(Json::parse(read(manifest))["subcommand"], "bound");
}

TEST_F(CliTest, MissingFileIsIoError) {
  const auto r = call({"check", "--points", path("nope.csv"), "--alphabet", "integers"});
  EXPECT_EQ(r.status, 3);
  const auto j = Json::parse(r.err);
  EXPECT_EQ(j["error"], "io_error");
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(call({"frobnicate"}).status, 2);
  EXPECT_EQ(call({"bound", "--R", "10", "--bogus", "1"}).status, 2);
  EXPECT_EQ(call({"bound", "--R", "abc"}).status, 2);
  EXPECT_EQ(call({}).status, 2);
  const auto r = call({"zeros"});
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(Json::accept(r.err));
}

TEST_F(CliTest, LibraryRejectionIsFailureWithCode) {
  const auto r = call({"bound", "--R", "0.5", "--eps", "0"});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(Json::parse(r.err)["error"], "invalid_argument");
  const auto pts = write("far.csv", "x,y\n0,0\n30,0\n");
  const auto z = write("z.csv", "");
  ASSERT_EQ(call({"zeros", "--n-max", "5", "--out", z}).status, 0);
  const auto oor = call({"check", "--points", pts, "--alphabet", "bessel", "--zeros", z});
  EXPECT_EQ(oor.status, 1);
  const auto j = Json::parse(oor.err);
  EXPECT_EQ(j["error"], "out_of_range");
  EXPECT_GT(j["required_n_max"].get<int>(), 5);
}

TEST_F(CliTest, HelpExitsZero) {
  std::ostringstream out, err;
  EXPECT_EQ(run(std::vector<std::string>{"--help"}, out, err), 0);
  EXPECT_NE(out.str().find("zeros"), std::string::npos);
}
