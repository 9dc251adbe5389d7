#include "dsaddle/matrix_io.hpp"

#include "dsaddle/errors.hpp"

#include <json.hpp>
#include <unsupported/Eigen/SparseExtra>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace dsaddle {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kBlockKeys[5] = {"A", "B", "C", "D", "E"};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw IoError("malformed JSON in " + path + ": " + ex.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("failed writing " + path);
}

json problem_to_json(const ProblemInfo& p) {
  json j = {{"name", p.name}};
  if (p.h) j["h"] = *p.h;
  if (p.beta) j["beta"] = *p.beta;
  if (p.seed) j["seed"] = *p.seed;
  if (!p.note.empty()) j["note"] = p.note;
  return j;
}

ProblemInfo problem_from_json(const json& j) {
  ProblemInfo p;
  if (!j.is_object()) return p;
  p.name = j.value("name", std::string("custom"));
  if (j.contains("h")) p.h = j.at("h").get<double>();
  if (j.contains("beta")) p.beta = j.at("beta").get<double>();
  if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
  p.note = j.value("note", std::string());
  return p;
}

json dims_to_json(Dims d) { return {{"n", d.n}, {"m", d.m}, {"p", d.p}}; }

DenseMatrix dense_from_json(const json& rows, const std::string& what) {
  if (!rows.is_array()) throw IoError(what + ": expected an array of rows");
  const Index r = static_cast<Index>(rows.size());
  Index c = -1;
  DenseMatrix out;
  for (Index i = 0; i < r; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array()) throw IoError(what + ": row " + std::to_string(i) + " is not an array");
    if (c < 0) {
      c = static_cast<Index>(row.size());
      out.resize(r, c);
    }
    if (static_cast<Index>(row.size()) != c) throw IoError(what + ": ragged rows");
    for (Index k = 0; k < c; ++k) out(i, k) = row[static_cast<std::size_t>(k)].get<double>();
  }
  if (c < 0) out.resize(0, 0);
  return out;
}

json dense_to_json(const DenseMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

void check_declared_dims(const json& doc, const DoubleSaddleSystem& s) {
  if (!doc.contains("dims")) return;
  const json& d = doc.at("dims");
  const Dims declared{d.at("n").get<Index>(), d.at("m").get<Index>(), d.at("p").get<Index>()};
  if (!(declared == s.dims())) {
    std::ostringstream os;
    os << "declared dims (" << declared.n << ", " << declared.m << ", " << declared.p
       << ") disagree with block shapes (" << s.dims().n << ", " << s.dims().m << ", "
       << s.dims().p << ")";
    throw StructuralError(os.str());
  }
}

}  // namespace

SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate")
    throw IoError(path + ": only coordinate Matrix-Market files are supported");
  if (field != "real" && field != "integer" && field != "double")
    throw IoError(path + ": unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric")
    throw IoError(path + ": unsupported symmetry '" + symmetry + "'");
  in.close();

  Eigen::SparseMatrix<double> raw;
  if (!Eigen::loadMarket(raw, path)) throw IoError("cannot read " + path);
  if (symmetry == "symmetric") {
    Eigen::SparseMatrix<double> strict_lower = raw.triangularView<Eigen::StrictlyLower>();
    raw = Eigen::SparseMatrix<double>(raw.triangularView<Eigen::Lower>()) +
          Eigen::SparseMatrix<double>(strict_lower.transpose());
  }
  return SparseMatrix(raw);
}

void write_matrix_market(const std::string& path, const SparseMatrix& m) {
  const Eigen::SparseMatrix<double> col_major(m);
  if (!Eigen::saveMarket(col_major, path)) throw IoError("cannot write " + path);
}

LoadedSystem load_system(const std::string& path) {
  const json doc = read_json(path);
  const std::string format = doc.value("format", std::string());
  if (!doc.contains("blocks") || !doc.at("blocks").is_object())
    throw IoError(path + ": missing \"blocks\" object");
  const json& blocks = doc.at("blocks");
  for (const char* key : kBlockKeys)
    if (!blocks.contains(key)) throw IoError(path + ": block " + key + " missing");

  std::vector<StoredMatrix> parts;
  if (format == "dsaddle-manifest") {
    const fs::path base = fs::path(path).parent_path();
    for (const char* key : kBlockKeys) {
      const fs::path file = base / blocks.at(key).get<std::string>();
      parts.emplace_back(read_matrix_market(file.string()));
    }
  } else if (format == "dsaddle-dense") {
    for (const char* key : kBlockKeys)
      parts.emplace_back(dense_from_json(blocks.at(key), std::string("block ") + key));
  } else {
    throw IoError(path + ": unknown format '" + format + "'");
  }
  DoubleSaddleSystem system(parts[0], parts[1], parts[2], parts[3], parts[4]);
  check_declared_dims(doc, system);
  ProblemInfo problem = problem_from_json(doc.value("problem", json::object()));
  return {std::move(system), std::move(problem)};
}

std::string save_manifest(const DoubleSaddleSystem& system, const ProblemInfo& problem,
                          const std::string& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw IoError("cannot create " + directory + ": " + ec.message());
  const StoredMatrix* parts[5] = {&system.a(), &system.b(), &system.c(), &system.d(),
                                  &system.e()};
  json blocks = json::object();
  for (int i = 0; i < 5; ++i) {
    const std::string file = std::string(kBlockKeys[i]) + ".mtx";
    write_matrix_market((fs::path(directory) / file).string(), parts[i]->to_sparse());
    blocks[kBlockKeys[i]] = file;
  }
  const json doc = {{"format", "dsaddle-manifest"},
                    {"version", 1},
                    {"dims", dims_to_json(system.dims())},
                    {"blocks", blocks},
                    {"problem", problem_to_json(problem)}};
  const std::string manifest = (fs::path(directory) / "manifest.json").string();
  write_text(manifest, doc.dump(2) + "\n");
  return manifest;
}

void save_dense_json(const DoubleSaddleSystem& system, const ProblemInfo& problem,
                     const std::string& path) {
  const StoredMatrix* parts[5] = {&system.a(), &system.b(), &system.c(), &system.d(),
                                  &system.e()};
  json blocks = json::object();
  for (int i = 0; i < 5; ++i) blocks[kBlockKeys[i]] = dense_to_json(parts[i]->to_dense());
  const json doc = {{"format", "dsaddle-dense"},
                    {"version", 1},
                    {"dims", dims_to_json(system.dims())},
                    {"blocks", blocks},
                    {"problem", problem_to_json(problem)}};
  write_text(path, doc.dump(2) + "\n");
}

PreconditionerStrategy load_user_strategy(const std::string& path) {
  const json doc = read_json(path);
  if (!doc.is_object()) throw IoError(path + ": expected a JSON object");
  const fs::path base = fs::path(path).parent_path();
  PreconditionerStrategy s;
  s.name = "user:" + path;
  const char* keys[3] = {"A", "S1", "S2"};
  for (int i = 0; i < 3; ++i) {
    if (!doc.contains(keys[i])) continue;
    const json& entry = doc.at(keys[i]);
    DenseMatrix m;
    if (entry.is_string())
      m = DenseMatrix(read_matrix_market((base / entry.get<std::string>()).string()));
    else
      m = dense_from_json(entry, std::string("user block ") + keys[i]);
    s.blocks[static_cast<std::size_t>(i)] = BlockStrategy::user(std::move(m));
  }
  return s;
}

}  // namespace dsaddle
