#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "asqp/problem_io.hpp"

namespace asqp::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("asqp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int Run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  fs::path Write(const std::string& name, const std::string& text) {
    const fs::path path = dir_ / name;
    std::ofstream(path) << text;
    return path;
  }

  static std::string Read(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  // Drops the wall_time_s column.
  static std::string StripTimes(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::string out;
    while (std::getline(in, line)) {
      std::vector<std::string> cols;
      std::stringstream ls(line);
      std::string c;
      while (std::getline(ls, c, ',')) cols.push_back(c);
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i != 7) out += cols[i] + ",";
      }
      out += "\n";
    }
    return out;
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

constexpr const char* kWorkedExample = R"({
  "n": 2, "Q": [[1, 0], [0, 1]], "q": [0, 0],
  "A": [], "b": [], "G": [[-1, 0]], "h": [-1], "x0": [2, 0]
})";

TEST_F(CliTest, SolveWorkedExample) {
  const fs::path file = Write("worked.json", kWorkedExample);
  ASSERT_EQ(Run({"solve", file.string(), "--scheme", "projection"}), kExitOk) << err_.str();
  const std::string text = out_.str();
  EXPECT_NE(text.find("status: Optimal"), std::string::npos) << text;
  EXPECT_NE(text.find("x: 1 0"), std::string::npos) << text;
  EXPECT_NE(text.find("objective: 0.5"), std::string::npos) << text;
  EXPECT_NE(text.find("iterations: 2"), std::string::npos) << text;

  ASSERT_EQ(Run({"solve", file.string(), "--scheme", "kkt", "--tol", "1e-9", "--json"}), kExitOk);
  const auto doc = nlohmann::json::parse(out_.str());
  EXPECT_EQ(doc["status"], "Optimal");
  EXPECT_NEAR(doc["x"][0].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(doc["x"][1].get<double>(), 0.0, 1e-12);
  EXPECT_EQ(doc["active_rows"], nlohmann::json::array({0}));
}

TEST_F(CliTest, SolveExitCodes) {
  const fs::path file = Write("worked.json", kWorkedExample);
  EXPECT_EQ(Run({"solve", file.string(), "--max-iter", "1"}), kExitSolveError);
  EXPECT_NE(out_.str().find("IterationLimit"), std::string::npos);
  EXPECT_EQ(Run({"solve", file.string(), "--scheme", "bogus"}), kExitUsage);
  EXPECT_EQ(Run({"solve"}), kExitUsage);
  EXPECT_EQ(Run({}), kExitUsage);
  EXPECT_EQ(Run({"solve", (dir_ / "missing.json").string()}), kExitUsage);
}

TEST_F(CliTest, MalformedFileNamesField) {
  const fs::path file = Write("bad.json", R"({"n": 2, "Q": [[1, 0], [0, 1]], "q": [0]})");
  EXPECT_EQ(Run({"solve", file.string()}), kExitUsage);
  EXPECT_NE(err_.str().find("'q'"), std::string::npos) << err_.str();
}

TEST_F(CliTest, BenchIsDeterministicExceptTimes) {
  const std::vector<std::string> flags = {"--n-min", "5",  "--n-max", "12",
                                          "--ne",    "1",  "--ni",    "6",
                                          "--count", "4",  "--seed",  "0x1F",
                                          "--schemes", "kkt,projection,sphere"};
  auto args = flags;
  args.insert(args.begin(), "bench");
  args.push_back("--out");
  auto first = args;
  first.push_back((dir_ / "a.csv").string());
  auto second = args;
  second.push_back((dir_ / "b.csv").string());
  ASSERT_EQ(Run(first), kExitOk) << err_.str();
  ASSERT_EQ(Run(second), kExitOk) << err_.str();
  const std::string a = Read(dir_ / "a.csv");
  EXPECT_EQ(a.substr(0, a.find('\n')),
            "problem_id,n,n_e,n_i,solver,status,iterations,wall_time_s,error_norm");
  EXPECT_EQ(StripTimes(a), StripTimes(Read(dir_ / "b.csv")));
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 13);
}

TEST_F(CliTest, BenchRejectsBadSpec) {
  EXPECT_EQ(Run({"bench", "--n-min", "5", "--n-max", "5", "--ne", "9", "--out",
                 (dir_ / "x.csv").string()}),
            kExitUsage);
  EXPECT_NE(err_.str().find("InvalidGeneratorSpec"), std::string::npos);
  EXPECT_EQ(Run({"bench", "--seed", "zz", "--out", (dir_ / "x.csv").string()}), kExitUsage);
}

TEST_F(CliTest, ProfileTwoByTwo) {
  const fs::path in = Write("runs.csv",
                            "problem_id,n,n_e,n_i,solver,status,iterations,wall_time_s,error_norm\n"
                            "0,2,0,1,s1,Optimal,2,1,\n"
                            "0,2,0,1,s2,Optimal,2,2,\n"
                            "1,2,0,1,s1,Optimal,2,4,\n"
                            "1,2,0,1,s2,Optimal,2,2,\n");
  const fs::path out = dir_ / "profile.csv";
  ASSERT_EQ(Run({"profile", "--in", in.string(), "--out", out.string()}), kExitOk) << err_.str();
  EXPECT_EQ(Read(out), "solver,tau,rho\ns1,1,0.5\ns1,2,1\ns2,1,0.5\ns2,2,1\n");

  ASSERT_EQ(Run({"profile", "--in", in.string(), "--out", out.string(), "--tau", "1,1.5,4"}),
            kExitOk);
  EXPECT_EQ(Read(out), "solver,tau,rho\ns1,1,0.5\ns1,1.5,0.5\ns1,4,1\n"
                       "s2,1,0.5\ns2,1.5,0.5\ns2,4,1\n");
}

TEST_F(CliTest, GenWritesParsableProblems) {
  const fs::path out = dir_ / "problems";
  ASSERT_EQ(Run({"gen", "--n-min", "6", "--n-max", "9", "--ne", "n/2", "--ni", "n/2", "--count",
                 "3", "--seed", "5", "--out-dir", out.string()}),
            kExitOk)
      << err_.str();
  for (int i = 0; i < 3; ++i) {
    const QpProblem p = read_problem(out / ("problem_000" + std::to_string(i) + ".json"));
    EXPECT_TRUE(validate(p).empty());
    EXPECT_EQ(p.m(), p.n() / 2);
  }
  const fs::path file = out / "problem_0001.json";
  EXPECT_EQ(Run({"solve", file.string(), "--scheme", "sphere"}), kExitOk) << out_.str();

  const fs::path spec = Write("spec.json", R"({"n_min": 4, "n_max": 4, "ne": "n-1", "ni": 1,
                                               "count": 2, "seed": "0x10"})");
  const fs::path out2 = dir_ / "from_spec";
  ASSERT_EQ(Run({"gen", "--spec", spec.string(), "--out-dir", out2.string()}), kExitOk)
      << err_.str();
  const QpProblem q = read_problem(out2 / "problem_0000.json");
  EXPECT_EQ(q.n(), 4);
  EXPECT_EQ(q.m(), 3);
  EXPECT_EQ(q.r(), 1);
}

}  // namespace
}  // namespace asqp::cli
