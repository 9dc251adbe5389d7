#pragma once

#include "dsaddle/precond.hpp"
#include "dsaddle/system_model.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace dsaddle {

/// Where a system came from; stored alongside the blocks.
struct ProblemInfo {
  std::string name = "custom";
  std::optional<double> h;
  std::optional<double> beta;
  std::optional<std::uint64_t> seed;
  std::string note;

  friend bool operator==(const ProblemInfo&, const ProblemInfo&) = default;
};

struct LoadedSystem {
  DoubleSaddleSystem system;
  ProblemInfo problem;
};

/// Coordinate Matrix-Market file; `symmetric` headers are mirrored.
SparseMatrix read_matrix_market(const std::string& path);

/// Writes a `coordinate real general` file with 17 significant digits.
void write_matrix_market(const std::string& path, const SparseMatrix& m);

/// Reads either a manifest (format "dsaddle-manifest", five .mtx files
/// relative to the manifest) or an all-in-one file (format "dsaddle-dense",
/// blocks as nested arrays). Throws IoError on malformed input and
/// StructuralError when the dims field disagrees with the blocks.
LoadedSystem load_system(const std::string& path);

/// Writes A.mtx ... E.mtx and manifest.json into `directory` (created if
/// needed); returns the manifest path.
std::string save_manifest(const DoubleSaddleSystem& system, const ProblemInfo& problem,
                          const std::string& directory);

void save_dense_json(const DoubleSaddleSystem& system, const ProblemInfo& problem,
                     const std::string& path);

/// Reads a user preconditioner description: a JSON object with optional
/// keys "A", "S1", "S2", each a Matrix-Market path (relative to the file)
/// or a nested array. Missing keys keep the exact block.
PreconditionerStrategy load_user_strategy(const std::string& path);

}  // namespace dsaddle
