#include "commands.hpp"
#include "dsaddle/matrix_io.hpp"
#include "dsaddle/report.hpp"
#include "support/temp_dir.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace dsaddle;
using dsaddle::testing::TempDir;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, GenerateWritesAManifest) {
  TempDir dir;
  const CliRun r = run_cli({"generate", "--problem", "tight-neg", "--params", "1,1,1,1,1", "--out",
                         dir.path().string()});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  const LoadedSystem s = load_system(dir.file("manifest.json"));
  EXPECT_EQ(s.system.dims(), (Dims{2, 2, 1}));
  EXPECT_EQ(s.problem.name, "tight-neg");
}

TEST(Cli, GenerateRandomIsDeterministic) {
  TempDir a, b;
  for (const auto* dir : {&a, &b})
    ASSERT_EQ(run_cli({"generate", "--problem", "random", "--dims", "8,6,4", "--seed", "7", "--out",
                       dir->path().string()})
                  .code,
              cli::kPass);
  for (const char* block : {"A.mtx", "B.mtx", "C.mtx", "D.mtx", "E.mtx"})
    EXPECT_EQ(slurp(a.file(block)), slurp(b.file(block))) << block;
}

TEST(Cli, AnalyzeManifestPasses) {
  TempDir dir;
  ASSERT_EQ(run_cli({"generate", "--problem", "random", "--seed", "3", "--out", dir.path().string()}).code,
            cli::kPass);
  const CliRun r = run_cli({"analyze", "--problem", "manifest:" + dir.file("manifest.json"), "--precond",
                         "jacobi"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  const AnalysisReport rep = report_from_json(r.out);
  ASSERT_EQ(rep.scenarios.size(), 2u);
  EXPECT_EQ(rep.scenarios[0].scenario, "unprec");
  EXPECT_EQ(rep.scenarios[1].scenario, "prec-inexact");
}

TEST(Cli, ValidationFailureExitsWithTwo) {
  TempDir dir;
  std::ofstream(dir.file("bad.json")) << R"({
    "format": "dsaddle-dense",
    "blocks": {"A": [[-1, 0], [0, 1]], "B": [[1, 1]], "C": [[1]], "D": [[0]], "E": [[0]]}
  })";
  const CliRun r = run_cli({"analyze", "--problem", "manifest:" + dir.file("bad.json")});
  EXPECT_EQ(r.code, cli::kCheckFailed);
  EXPECT_FALSE(report_from_json(r.out).validation.ok());
}

TEST(Cli, RuntimeErrorsExitWithOne) {
  EXPECT_EQ(run_cli({"analyze", "--problem", "nonsense"}).code, cli::kRuntimeError);
  EXPECT_EQ(run_cli({"analyze", "--problem", "manifest:/no/such/file.json"}).code, cli::kRuntimeError);
  EXPECT_EQ(run_cli({"solve", "--precond", "ilu", "--h", "0.25"}).code, cli::kRuntimeError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kRuntimeError);
  EXPECT_EQ(run_cli({}).code, cli::kRuntimeError);
}

TEST(Cli, HelpIsNotAnError) {
  const CliRun r = run_cli({"--help"});
  EXPECT_EQ(r.code, cli::kPass);
  EXPECT_NE(r.out.find("analyze"), std::string::npos);
}

TEST(Cli, SolveSweepKeepsInputOrder) {
  const CliRun r = run_cli({"solve", "--problem", "poisson-dist", "--h", "0.25,0.125,0.0625", "--precond",
                         "exact", "--format", "csv"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "h,iterations,converged,true_relative_residual");
  for (const char* h : {"0.25,", "0.125,", "0.0625,"}) {
    ASSERT_TRUE(std::getline(lines, line));
    EXPECT_EQ(line.rfind(h, 0), 0u) << line;
  }
}

TEST(Cli, SolveReportsJson) {
  const CliRun r = run_cli({"solve", "--problem", "random", "--precond", "none", "--rhs", "random"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  EXPECT_NE(r.out.find("\"converged\": true"), std::string::npos) << r.out;
}

TEST(Cli, PlotDataIsByteIdenticalAcrossRuns) {
  TempDir dir;
  const std::vector<std::string> analyze = {"analyze", "--problem", "random", "--seed", "9", "--precond",
                                            "exact", "--out", dir.file("r.json")};
  ASSERT_EQ(run_cli(analyze).code, cli::kPass);
  const CliRun first = run_cli({"plotdata", dir.file("r.json")});
  ASSERT_EQ(run_cli(analyze).code, cli::kPass);
  const CliRun second = run_cli({"plotdata", dir.file("r.json")});
  ASSERT_EQ(first.code, cli::kPass) << first.err;
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(first.out.substr(0, first.out.find('\n')),
            "index,eigenvalue_1,bound_neg_lo_1,bound_neg_hi_1,bound_pos_lo_1,bound_pos_hi_1,"
            "eigenvalue_2,bound_neg_lo_2,bound_neg_hi_2,bound_pos_lo_2,bound_pos_hi_2");
}

TEST(Cli, PlotDataWithoutReportsIsHeaderOnly) {
  const CliRun r = run_cli({"plotdata"});
  EXPECT_EQ(r.code, cli::kPass);
  EXPECT_EQ(r.out, "index,eigenvalue,bound_neg_lo,bound_neg_hi,bound_pos_lo,bound_pos_hi\n");
}

TEST(Cli, PlotDataNeedsSpectra) {
  TempDir dir;
  std::ofstream(dir.file("r.json")) << to_json(AnalysisReport{});
  EXPECT_EQ(run_cli({"plotdata", dir.file("r.json")}).code, cli::kRuntimeError);
}
