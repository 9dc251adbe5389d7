#pragma once

#include "dsaddle/matrix_io.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dsaddle::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kPass = 0, kRuntimeError = 1, kCheckFailed = 2 };

/// Generator settings shared by every subcommand.
struct ProblemOptions {
  std::string problem = "poisson-dist";
  double h = 0.0625;
  double beta = 1e-3;
  std::string ordering = "flipped";  ///< poisson-dist only: flipped or original
  Dims dims{8, 6, 4};
  std::uint64_t seed = 1;
  std::vector<double> params;
};

/// Builds the system named by options.problem; `manifest:<path>` loads a file.
LoadedSystem make_problem(const ProblemOptions& options);

/// Parses and runs a subcommand (generate, analyze, solve, plotdata).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dsaddle::cli
