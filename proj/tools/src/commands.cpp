#include "commands.hpp"

#include "dsaddle/analysis.hpp"
#include "dsaddle/errors.hpp"
#include "dsaddle/fem.hpp"
#include "dsaddle/krylov.hpp"
#include "dsaddle/problems.hpp"
#include "dsaddle/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>

namespace dsaddle::cli {

namespace {

constexpr const char* kManifestPrefix = "manifest:";
constexpr const char* kUserPrefix = "user:";

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> parse_doubles(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& item : split_commas(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError(std::string(what) + ": '" + item + "' is not a number");
    }
  }
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw IoError("cannot write " + path);
  file << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

BlockExtremes random_extremes(const std::vector<double>& p) {
  BlockExtremes x{4.0, 0.5, 2.0, 0.5, 2.0, 0.5, 1.0, 0.1, 1.0, 0.1};
  if (p.empty()) return x;
  if (p.size() != 10)
    throw ParameterError(
        "random --params needs 10 values: mu_max_a,mu_min_a,sigma_max_b,sigma_min_b,"
        "sigma_max_c,sigma_min_c,mu_max_d,mu_min_d,mu_max_e,mu_min_e");
  x = {p[0], p[1], p[2], p[3], p[4], p[5], p[6], p[7], p[8], p[9]};
  return x;
}

std::array<double, 5> five_params(const std::vector<double>& p) {
  if (p.empty()) return {1.0, 1.0, 1.0, 1.0, 1.0};
  if (p.size() != 5) throw ParameterError("tightness fixtures take 5 comma-separated --params");
  return {p[0], p[1], p[2], p[3], p[4]};
}

PreconditionerStrategy strategy_from(const std::string& name) {
  if (starts_with(name, kUserPrefix)) return load_user_strategy(name.substr(5));
  return PreconditionerStrategy::from_name(name);
}

// Runs `job` for each h in parallel, results in input order.
template <typename Job>
auto sweep(const std::vector<double>& hs, Job job) {
  using Result = decltype(job(0.0));
  std::vector<std::future<Result>> futures;
  futures.reserve(hs.size());
  for (double h : hs) futures.push_back(std::async(std::launch::async, job, h));
  std::vector<Result> out;
  out.reserve(hs.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

struct CommonFlags {
  ProblemOptions problem;
  std::string h_list = "0.0625";
  std::string dims = "8,6,4";
  std::string params;
  std::string out;
  std::string format = "json";

  void attach(CLI::App* cmd) {
    // -h is the mesh width here, so help is long-form only.
    cmd->set_help_flag("--help", "print this help message and exit");
    cmd->add_option("--problem", problem.problem,
                    "poisson-dist|poisson-bnd|random|tight-neg|tight-pos|manifest:<path>")
        ->capture_default_str();
    cmd->add_option("--h", h_list, "mesh width, or a comma list for a sweep")
        ->capture_default_str();
    cmd->add_option("--beta", problem.beta, "regularization parameter")->capture_default_str();
    cmd->add_option("--ordering", problem.ordering, "poisson-dist ordering: flipped|original")
        ->capture_default_str();
    cmd->add_option("--dims", dims, "n,m,p for random systems")->capture_default_str();
    cmd->add_option("--seed", problem.seed, "seed for random systems and right-hand sides")
        ->capture_default_str();
    cmd->add_option("--params", params, "comma-separated fixture or extreme values");
    cmd->add_option("--out", out, "output path (stdout when omitted)");
  }

  std::vector<double> hs() const { return parse_doubles(h_list, "--h"); }

  ProblemOptions resolved(double h) const {
    ProblemOptions p = problem;
    p.h = h;
    p.params = parse_doubles(params, "--params");
    const auto d = parse_doubles(dims, "--dims");
    if (d.size() != 3) throw ParameterError("--dims needs n,m,p");
    p.dims = {static_cast<Index>(d[0]), static_cast<Index>(d[1]), static_cast<Index>(d[2])};
    return p;
  }
};

std::vector<std::string> default_scenarios(const std::string& precond) {
  if (precond == "none") return {"unprec"};
  if (precond == "exact") return {"unprec", "prec-exact"};
  return {"unprec", "prec-inexact"};
}

int cmd_generate(const CommonFlags& flags, bool dense, std::ostream& out) {
  const std::vector<double> hs = flags.hs();
  if (hs.size() != 1) throw ParameterError("generate takes a single --h");
  const LoadedSystem loaded = make_problem(flags.resolved(hs.front()));
  const std::string target = flags.out.empty() ? "." : flags.out;
  if (dense) {
    save_dense_json(loaded.system, loaded.problem, target);
    out << target << "\n";
  } else {
    out << save_manifest(loaded.system, loaded.problem, target) << "\n";
  }
  return kPass;
}

int cmd_analyze(const CommonFlags& flags, const std::string& precond, std::string scenarios,
                const std::string& constants, std::ostream& out) {
  AnalysisOptions opts;
  opts.scenarios = scenarios.empty() ? default_scenarios(precond) : split_commas(scenarios);
  opts.constants = constants;
  if (precond != "none") opts.strategy = strategy_from(precond);

  const auto reports = sweep(flags.hs(), [&](double h) {
    const LoadedSystem loaded = make_problem(flags.resolved(h));
    return analyze(loaded.system, loaded.problem, opts);
  });

  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass();

  std::string text;
  if (flags.format == "csv") {
    std::vector<PlotSeries> series;
    for (const auto& r : reports)
      for (auto& s : plot_series(r)) series.push_back(std::move(s));
    text = plot_csv(series);
  } else if (reports.size() == 1) {
    text = to_json(reports.front()) + "\n";
  } else {
    text = "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i)
      text += to_json(reports[i]) + (i + 1 < reports.size() ? ",\n" : "\n");
    text += "]\n";
  }
  write_output(flags.out, text, out);
  return pass ? kPass : kCheckFailed;
}

int cmd_solve(const CommonFlags& flags, const std::string& precond, double rtol, Index maxit,
              const std::string& rhs, std::ostream& out) {
  const auto reports = sweep(flags.hs(), [&](double h) {
    const LoadedSystem loaded = make_problem(flags.resolved(h));
    const DoubleSaddleSystem& s = loaded.system;
    const StoredMatrix k = assemble(s).data;

    Vector b(s.dims().total());
    if (rhs == "ones") {
      b.setOnes();
    } else if (rhs == "random") {
      std::mt19937_64 rng(flags.problem.seed);
      std::normal_distribution<double> normal;
      for (Index i = 0; i < b.size(); ++i) b(i) = normal(rng);
    } else {
      throw ParameterError("--rhs must be ones or random");
    }

    const auto start = std::chrono::steady_clock::now();
    std::optional<PreconditionerOperator> m;
    if (precond == "exact")
      m.emplace(build_exact(s));
    else if (precond != "none")
      m.emplace(build_approx(s, strategy_from(precond)));
    MinresOptions mo;
    mo.rtol = rtol;
    mo.maxit = maxit;
    SolveReport rep;
    rep.problem = loaded.problem;
    rep.dims = s.dims();
    rep.preconditioner = precond;
    rep.rtol = rtol;
    rep.result = minres(k, m ? &*m : nullptr, b, mo);
    rep.true_relative_residual = (k.multiply(rep.result.solution) - b).norm() / b.norm();
    rep.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
  });

  bool pass = true;
  for (const auto& r : reports) pass = pass && r.result.converged;

  std::string text;
  if (flags.format == "csv") {
    if (reports.size() == 1) {
      text = residual_csv(reports.front().result);
    } else {
      text = "h,iterations,converged,true_relative_residual\n";
      for (const auto& r : reports)
        text += format17(r.problem.h.value_or(0.0)) + "," + std::to_string(r.result.iterations) +
                "," + (r.result.converged ? "true" : "false") + "," +
                format17(r.true_relative_residual) + "\n";
    }
  } else if (reports.size() == 1) {
    text = to_json(reports.front()) + "\n";
  } else {
    text = "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i)
      text += to_json(reports[i]) + (i + 1 < reports.size() ? ",\n" : "\n");
    text += "]\n";
  }
  write_output(flags.out, text, out);
  return pass ? kPass : kCheckFailed;
}

int cmd_plotdata(const std::vector<std::string>& files, const std::string& out_path,
                 std::ostream& out) {
  std::vector<PlotSeries> series;
  for (const auto& f : files) {
    auto found = plot_series(report_from_json(read_text(f)));
    if (found.empty()) throw IoError(f + ": report carries no computed spectrum");
    for (auto& s : found) series.push_back(std::move(s));
  }
  write_output(out_path, plot_csv(series), out);
  return kPass;
}

}  // namespace

LoadedSystem make_problem(const ProblemOptions& o) {
  const std::string& name = o.problem;
  if (starts_with(name, kManifestPrefix)) return load_system(name.substr(9));

  ProblemInfo info;
  info.name = name;
  if (name == "poisson-dist") {
    info.h = o.h;
    info.beta = o.beta;
    DistributedControl dc = poisson_distributed(o.h, o.beta);
    if (o.ordering == "flipped") {
      info.note = "flipped ordering";
      return {std::move(dc.flipped), info};
    }
    if (o.ordering == "original") {
      info.note = "original ordering";
      return {std::move(dc.original), info};
    }
    throw ParameterError("--ordering must be flipped or original");
  }
  if (name == "poisson-bnd") {
    info.h = o.h;
    info.beta = o.beta;
    return {poisson_boundary(o.h, o.beta).system, info};
  }
  if (name == "random") {
    info.seed = o.seed;
    return {random_system(o.dims, o.seed, random_extremes(o.params)), info};
  }
  if (name == "tight-neg") {
    const auto p = five_params(o.params);
    return {tightness_upper_negative({p[0], p[1], p[2], p[3], p[4]}), info};
  }
  if (name == "tight-pos") {
    const auto p = five_params(o.params);
    return {tightness_lower_positive({p[0], p[1], p[2], p[3], p[4]}), info};
  }
  throw ParameterError("unknown problem '" + name + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eigenvalue bounds for double saddle-point systems", "dsaddle"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help message and exit");

  CommonFlags gen_flags, an_flags, solve_flags;
  bool dense = false;
  std::string an_precond = "exact", an_scenarios, an_constants = "measured";
  std::string solve_precond = "exact", solve_rhs = "ones";
  double rtol = 1e-8;
  Index maxit = -1;
  std::vector<std::string> plot_files;
  std::string plot_out;

  CLI::App* gen = app.add_subcommand("generate", "write a problem as Matrix-Market blocks");
  gen_flags.attach(gen);
  gen->add_flag("--dense", dense, "write one JSON file with dense arrays instead");

  CLI::App* an = app.add_subcommand("analyze", "bounds, spectra and containment verdicts");
  an_flags.attach(an);
  an->add_option("--precond", an_precond,
                 "none|exact|jacobi|pearson-wathen|drop-term|user:<path>")
      ->capture_default_str();
  an->add_option("--scenario", an_scenarios, "comma list of unprec,prec-exact,prec-inexact");
  an->add_option("--constants", an_constants, "measured|certified")->capture_default_str();
  an->add_option("--format", an_flags.format, "json|csv")->capture_default_str();

  CLI::App* sol = app.add_subcommand("solve", "preconditioned MINRES");
  solve_flags.attach(sol);
  sol->add_option("--precond", solve_precond,
                  "none|exact|jacobi|pearson-wathen|drop-term|user:<path>")
      ->capture_default_str();
  sol->add_option("--rtol", rtol, "relative tolerance")->capture_default_str();
  sol->add_option("--maxit", maxit, "iteration cap (default 4 x dimension)");
  sol->add_option("--rhs", solve_rhs, "ones|random")->capture_default_str();
  sol->add_option("--format", solve_flags.format, "json|csv")->capture_default_str();

  CLI::App* plot = app.add_subcommand("plotdata", "CSV eigenvalue series from analyze reports");
  plot->add_option("reports", plot_files, "analyze JSON reports");
  plot->add_option("--out", plot_out, "output path (stdout when omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kRuntimeError;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_flags, dense, out);
    if (an->parsed()) return cmd_analyze(an_flags, an_precond, an_scenarios, an_constants, out);
    if (sol->parsed()) return cmd_solve(solve_flags, solve_precond, rtol, maxit, solve_rhs, out);
    if (plot->parsed()) return cmd_plotdata(plot_files, plot_out, out);
  } catch (const std::exception& e) {
    err << "dsaddle: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kRuntimeError;
}

}  // namespace dsaddle::cli
