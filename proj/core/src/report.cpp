#include "dsaddle/report.hpp"

#include "dsaddle/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace dsaddle {

using nlohmann::json;

namespace {

json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double get_num(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw IoError("expected a number, got " + j.dump());
}

json opt_num(const std::optional<double>& x) { return x ? num(*x) : json(nullptr); }

std::optional<double> get_opt_num(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get_num(j.at(key));
}

json interval_json(const Interval& iv) {
  return {{"lo", num(iv.lo)}, {"hi", num(iv.hi)}, {"lo_open", iv.lo_open}, {"hi_open", iv.hi_open}};
}

Interval interval_from(const json& j) {
  return {get_num(j.at("lo")), get_num(j.at("hi")), j.value("lo_open", false),
          j.value("hi_open", false)};
}

json bounds_json(const BoundIntervals& b) {
  json discrete = json::array();
  for (const auto& d : b.discrete)
    discrete.push_back({{"value", num(d.value)}, {"multiplicity", d.multiplicity}});
  json clusters = json::array();
  for (const auto& c : b.clusters) {
    json cj = interval_json(c.range);
    cj["count"] = c.count;
    clusters.push_back(std::move(cj));
  }
  return {{"provenance", b.provenance},
          {"negative", interval_json(b.negative)},
          {"positive", interval_json(b.positive)},
          {"discrete", discrete},
          {"clusters", clusters},
          {"discrete_only", b.discrete_only},
          {"degenerate_interior", b.degenerate_interior},
          {"simplified_negative_upper", opt_num(b.simplified_negative_upper)},
          {"warnings", b.warnings}};
}

BoundIntervals bounds_from(const json& j) {
  BoundIntervals b;
  b.provenance = j.value("provenance", std::string());
  b.negative = interval_from(j.at("negative"));
  b.positive = interval_from(j.at("positive"));
  for (const auto& d : j.at("discrete"))
    b.discrete.push_back({get_num(d.at("value")), d.at("multiplicity").get<Index>()});
  for (const auto& c : j.at("clusters"))
    b.clusters.push_back({interval_from(c), c.at("count").get<Index>()});
  b.discrete_only = j.value("discrete_only", false);
  b.degenerate_interior = j.value("degenerate_interior", false);
  b.simplified_negative_upper = get_opt_num(j, "simplified_negative_upper");
  b.warnings = j.value("warnings", std::vector<std::string>{});
  return b;
}

json extremes_json(const BlockExtremes& x) {
  return {{"mu_max_a", num(x.mu_max_a)},       {"mu_min_a", num(x.mu_min_a)},
          {"sigma_max_b", num(x.sigma_max_b)}, {"sigma_min_b", num(x.sigma_min_b)},
          {"sigma_max_c", num(x.sigma_max_c)}, {"sigma_min_c", num(x.sigma_min_c)},
          {"mu_max_d", num(x.mu_max_d)},       {"mu_min_d", num(x.mu_min_d)},
          {"mu_max_e", num(x.mu_max_e)},       {"mu_min_e", num(x.mu_min_e)}};
}

BlockExtremes extremes_from(const json& j) {
  BlockExtremes x;
  x.mu_max_a = get_num(j.at("mu_max_a"));
  x.mu_min_a = get_num(j.at("mu_min_a"));
  x.sigma_max_b = get_num(j.at("sigma_max_b"));
  x.sigma_min_b = get_num(j.at("sigma_min_b"));
  x.sigma_max_c = get_num(j.at("sigma_max_c"));
  x.sigma_min_c = get_num(j.at("sigma_min_c"));
  x.mu_max_d = get_num(j.at("mu_max_d"));
  x.mu_min_d = get_num(j.at("mu_min_d"));
  x.mu_max_e = get_num(j.at("mu_max_e"));
  x.mu_min_e = get_num(j.at("mu_min_e"));
  return x;
}

json flags_json(const ValidationReport::Flags& f) { return {{"A", f.a}, {"D", f.d}, {"E", f.e}}; }

ValidationReport::Flags flags_from(const json& j) {
  return {j.at("A").get<bool>(), j.at("D").get<bool>(), j.at("E").get<bool>()};
}

json validation_json(const ValidationReport& v) {
  return {{"ok", v.ok()},
          {"symmetric_ok", flags_json(v.symmetric_ok)},
          {"definiteness_ok", flags_json(v.definiteness_ok)},
          {"kernel_conditions", v.kernel_conditions},
          {"schur_definite", v.schur_definite},
          {"b_full_row_rank", v.b_full_row_rank},
          {"c_full_row_rank", v.c_full_row_rank},
          {"c_nullity_k", v.c_nullity_k},
          {"messages", v.messages}};
}

ValidationReport validation_from(const json& j) {
  ValidationReport v;
  v.symmetric_ok = flags_from(j.at("symmetric_ok"));
  v.definiteness_ok = flags_from(j.at("definiteness_ok"));
  v.kernel_conditions = j.at("kernel_conditions").get<std::array<bool, 3>>();
  v.schur_definite = j.at("schur_definite").get<std::array<bool, 2>>();
  v.b_full_row_rank = j.at("b_full_row_rank").get<bool>();
  v.c_full_row_rank = j.at("c_full_row_rank").get<bool>();
  v.c_nullity_k = j.at("c_nullity_k").get<Index>();
  v.messages = j.at("messages").get<std::vector<std::string>>();
  return v;
}

json consts_json(const EquivalenceConstants& k) {
  return {{"alpha0", num(k.alpha0)}, {"beta0", num(k.beta0)}, {"alpha1", num(k.alpha1)},
          {"beta1", num(k.beta1)},   {"alpha2", num(k.alpha2)}, {"beta2", num(k.beta2)}};
}

EquivalenceConstants consts_from(const json& j) {
  return {get_num(j.at("alpha0")), get_num(j.at("beta0")), get_num(j.at("alpha1")),
          get_num(j.at("beta1")),  get_num(j.at("alpha2")), get_num(j.at("beta2"))};
}

json equivalence_json(const Equivalence& e) {
  return {{"raw_min", num(e.raw_min)}, {"raw_max", num(e.raw_max)}, {"scale", num(e.scale)},
          {"alpha", num(e.alpha)},     {"beta", num(e.beta)}};
}

Equivalence equivalence_from(const json& j) {
  return {get_num(j.at("raw_min")), get_num(j.at("raw_max")), get_num(j.at("scale")),
          get_num(j.at("alpha")), get_num(j.at("beta"))};
}

json numbers_json(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(num(x));
  return out;
}

std::vector<double> numbers_from(const json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(get_num(x));
  return out;
}

json scenario_json(const ScenarioReport& s) {
  json j = {{"scenario", s.scenario},
            {"preconditioner", s.preconditioner},
            {"bounds", bounds_json(s.bounds)},
            {"eta_d", opt_num(s.eta_d)},
            {"eta_e", opt_num(s.eta_e)}};
  if (s.constants) {
    json measured = json::array();
    for (const auto& e : s.constants->measured) measured.push_back(equivalence_json(e));
    j["constants"] = {{"source", s.constants->source},
                      {"values", consts_json(s.constants->consts)},
                      {"measured", measured}};
  } else {
    j["constants"] = nullptr;
  }
  const SpectrumSummary& sp = s.spectrum;
  j["spectrum"] = {{"computed", sp.computed},
                   {"min", num(sp.min)},
                   {"max", num(sp.max)},
                   {"positive", sp.counts.positive},
                   {"negative", sp.counts.negative},
                   {"zero", sp.counts.zero},
                   {"values", numbers_json(sp.values)}};
  const ContainmentSummary& c = s.containment;
  j["containment"] = {{"verdict", c.verdict},
                      {"outside", c.outside},
                      {"min_slack", num(c.min_slack)},
                      {"discrete_counts", c.discrete_counts},
                      {"cluster_counts", c.cluster_counts},
                      {"messages", c.messages}};
  return j;
}

ScenarioReport scenario_from(const json& j) {
  ScenarioReport s;
  s.scenario = j.at("scenario").get<std::string>();
  s.preconditioner = j.at("preconditioner").get<std::string>();
  s.bounds = bounds_from(j.at("bounds"));
  s.eta_d = get_opt_num(j, "eta_d");
  s.eta_e = get_opt_num(j, "eta_e");
  if (j.contains("constants") && !j.at("constants").is_null()) {
    const json& cj = j.at("constants");
    ConstantsSummary c;
    c.source = cj.at("source").get<std::string>();
    c.consts = consts_from(cj.at("values"));
    for (const auto& e : cj.at("measured")) c.measured.push_back(equivalence_from(e));
    s.constants = std::move(c);
  }
  const json& sp = j.at("spectrum");
  s.spectrum.computed = sp.at("computed").get<bool>();
  s.spectrum.min = get_num(sp.at("min"));
  s.spectrum.max = get_num(sp.at("max"));
  s.spectrum.counts = {sp.at("positive").get<Index>(), sp.at("negative").get<Index>(),
                       sp.at("zero").get<Index>()};
  s.spectrum.values = numbers_from(sp.at("values"));
  const json& c = j.at("containment");
  s.containment.verdict = c.at("verdict").get<std::string>();
  s.containment.outside = c.at("outside").get<Index>();
  s.containment.min_slack = get_num(c.at("min_slack"));
  s.containment.discrete_counts = c.at("discrete_counts").get<std::vector<Index>>();
  s.containment.cluster_counts = c.at("cluster_counts").get<std::vector<Index>>();
  s.containment.messages = c.at("messages").get<std::vector<std::string>>();
  return s;
}

json problem_json(const ProblemInfo& p) {
  return {{"name", p.name},
          {"h", opt_num(p.h)},
          {"beta", opt_num(p.beta)},
          {"seed", p.seed ? json(*p.seed) : json(nullptr)},
          {"note", p.note}};
}

ProblemInfo problem_from(const json& j) {
  ProblemInfo p;
  p.name = j.at("name").get<std::string>();
  p.h = get_opt_num(j, "h");
  p.beta = get_opt_num(j, "beta");
  if (j.contains("seed") && !j.at("seed").is_null()) p.seed = j.at("seed").get<std::uint64_t>();
  p.note = j.value("note", std::string());
  return p;
}

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

bool AnalysisReport::pass() const {
  if (!validation.ok()) return false;
  for (const auto& s : scenarios)
    if (s.containment.verdict == "fail") return false;
  return true;
}

std::string to_json(const AnalysisReport& r, int indent) {
  json scenarios = json::array();
  for (const auto& s : r.scenarios) scenarios.push_back(scenario_json(s));
  json timings = json::object();
  for (const auto& [k, v] : r.timings) timings[k] = num(v);
  const json j = {{"schema", r.schema},
                  {"problem", problem_json(r.problem)},
                  {"dims", {{"n", r.dims.n}, {"m", r.dims.m}, {"p", r.dims.p}}},
                  {"extremes", extremes_json(r.extremes)},
                  {"validation", validation_json(r.validation)},
                  {"scenarios", scenarios},
                  {"timings", timings},
                  {"pass", r.pass()}};
  return j.dump(indent);
}

AnalysisReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw IoError(std::string("malformed report JSON: ") + ex.what());
  }
  try {
    AnalysisReport r;
    r.schema = j.at("schema").get<int>();
    if (r.schema != kReportSchema)
      throw IoError("unsupported report schema " + std::to_string(r.schema));
    r.problem = problem_from(j.at("problem"));
    const json& d = j.at("dims");
    r.dims = {d.at("n").get<Index>(), d.at("m").get<Index>(), d.at("p").get<Index>()};
    r.extremes = extremes_from(j.at("extremes"));
    r.validation = validation_from(j.at("validation"));
    for (const auto& s : j.at("scenarios")) r.scenarios.push_back(scenario_from(s));
    for (const auto& [k, v] : j.at("timings").items()) r.timings[k] = get_num(v);
    return r;
  } catch (const json::exception& ex) {
    throw IoError(std::string("report JSON does not match schema 1: ") + ex.what());
  }
}

std::string to_json(const SolveReport& r, int indent) {
  const json j = {{"schema", kReportSchema},
                  {"problem", problem_json(r.problem)},
                  {"dims", {{"n", r.dims.n}, {"m", r.dims.m}, {"p", r.dims.p}}},
                  {"preconditioner", r.preconditioner},
                  {"rtol", num(r.rtol)},
                  {"iterations", r.result.iterations},
                  {"converged", r.result.converged},
                  {"breakdown", r.result.breakdown ? json(*r.result.breakdown) : json(nullptr)},
                  {"true_relative_residual", num(r.true_relative_residual)},
                  {"residual_history", numbers_json(r.result.residual_history)},
                  {"seconds", num(r.seconds)}};
  return j.dump(indent);
}

std::string residual_csv(const SolveResult& result) {
  std::string out = "iteration,relative_residual\n";
  for (const auto& row : residual_report(result))
    out += std::to_string(row.iteration) + "," + format17(row.relative_residual) + "\n";
  return out;
}

std::vector<PlotSeries> plot_series(const AnalysisReport& report) {
  std::vector<PlotSeries> out;
  for (const auto& s : report.scenarios) {
    if (!s.spectrum.computed) continue;
    std::string label = s.scenario;
    if (s.preconditioner != "none") label += ":" + s.preconditioner;
    out.push_back({label, s.spectrum.values, s.bounds.negative, s.bounds.positive});
  }
  return out;
}

std::string plot_csv(const std::vector<PlotSeries>& series) {
  static const char* kColumns[5] = {"eigenvalue", "bound_neg_lo", "bound_neg_hi", "bound_pos_lo",
                                    "bound_pos_hi"};
  std::ostringstream os;
  os << "index";
  const bool single = series.size() <= 1;
  const std::size_t groups = std::max<std::size_t>(series.size(), 1);
  for (std::size_t k = 0; k < groups; ++k)
    for (const char* col : kColumns)
      os << "," << col << (single ? "" : "_" + std::to_string(k + 1));
  os << "\n";

  std::size_t rows = 0;
  for (const auto& s : series) rows = std::max(rows, s.values.size());
  for (std::size_t i = 0; i < rows; ++i) {
    os << i;
    for (const auto& s : series) {
      if (i < s.values.size()) {
        os << "," << format17(s.values[i]) << "," << format17(s.negative.lo) << ","
           << format17(s.negative.hi) << "," << format17(s.positive.lo) << ","
           << format17(s.positive.hi);
      } else {
        os << ",,,,,";
      }
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace dsaddle
