#include "dsaddle/analysis.hpp"

#include "dsaddle/errors.hpp"

#include <chrono>

namespace dsaddle {

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

SpectrumSummary summarize(const Vector& values, double zero_tol) {
  SpectrumSummary s;
  s.computed = true;
  s.values.assign(values.data(), values.data() + values.size());
  if (values.size() == 0) return s;
  s.min = values(0);
  s.max = values(values.size() - 1);
  const double cut = zero_tol * std::max(std::abs(s.min), std::abs(s.max));
  for (double v : s.values) {
    if (v > cut)
      ++s.counts.positive;
    else if (v < -cut)
      ++s.counts.negative;
    else
      ++s.counts.zero;
  }
  return s;
}

ContainmentSummary check(const Vector& values, const BoundIntervals& bounds,
                         const AnalysisOptions& opts) {
  const ContainmentReport rep =
      verify_containment(values, bounds, opts.containment_tol, opts.cluster_tol);
  ContainmentSummary out;
  out.verdict = rep.pass ? "pass" : "fail";
  out.outside = rep.outside;
  out.min_slack = rep.min_slack;
  out.discrete_counts = rep.discrete_counts;
  out.cluster_counts = rep.cluster_counts;
  out.messages = rep.messages;
  return out;
}

bool below_cutoff(const DoubleSaddleSystem& s, const AnalysisOptions& opts) {
  return s.dims().total() <= opts.spectral.oracle_cutoff;
}

ScenarioReport run_unpreconditioned(const DoubleSaddleSystem& system, const BlockExtremes& x,
                                    const AnalysisOptions& opts) {
  ScenarioReport s;
  s.scenario = "unprec";
  s.preconditioner = "none";
  const bool regularized = !(system.d().is_zero() && system.e().is_zero());
  s.bounds = regularized ? bounds_unpreconditioned(x, opts.tol.rank_tol)
                         : bounds_k0(x, opts.tol.rank_tol);
  if (below_cutoff(system, opts)) {
    const Vector ev = full_spectrum(assemble(system).data, opts.spectral);
    s.spectrum = summarize(ev, opts.spectral.zero_tol);
    s.containment = check(ev, s.bounds, opts);
  }
  return s;
}

ScenarioReport run_exact(const DoubleSaddleSystem& system, const ValidationReport& v,
                         const AnalysisOptions& opts) {
  ScenarioReport s;
  s.scenario = "prec-exact";
  s.preconditioner = "exact";
  s.bounds = bounds_precond_exact(exact_case_for(system), system.dims(), v.c_nullity_k);
  if (!(v.b_full_row_rank && v.c_full_row_rank) && exact_case_for(system) == ExactCase::d0_e0)
    s.bounds.warnings.push_back("B or C is rank deficient: the discrete spectrum assumes full rank");
  if (below_cutoff(system, opts)) {
    const PreconditionerOperator op = build_exact(system);
    const SplitPreconditioned split =
        split_preconditioned_matrix(system, op, opts.spectral.oracle_cutoff);
    const Vector ev = full_spectrum(split.matrix, opts.spectral);
    s.spectrum = summarize(ev, opts.spectral.zero_tol);
    s.containment = check(ev, s.bounds, opts);
  }
  return s;
}

ScenarioReport run_inexact(const DoubleSaddleSystem& system, const AnalysisOptions& opts) {
  ScenarioReport s;
  s.scenario = "prec-inexact";
  s.preconditioner = opts.strategy.name;
  const PreconditionerOperator op = build_approx(system, opts.strategy);
  const SchurPair schur = schur_complements(system, opts.tol);
  s.eta_d = schur.eta_d;
  s.eta_e = schur.eta_e;

  ConstantsSummary constants;
  constants.source = opts.constants;
  if (opts.constants == "certified") {
    const auto certified = certified_constants(opts.strategy);
    if (!certified)
      throw ParameterError("no certified constants are known for strategy '" +
                           opts.strategy.name + "'");
    constants.consts = *certified;
  } else if (opts.constants == "measured") {
    const MeasuredConstants measured = measured_constants(system, op);
    constants.consts = measured.consts;
    constants.measured.assign(measured.blocks.begin(), measured.blocks.end());
  } else {
    throw ParameterError("constants must be 'measured' or 'certified', got '" + opts.constants +
                         "'");
  }
  s.constants = constants;

  InexactInput in;
  in.consts = constants.consts;
  in.eta_d = schur.eta_d;
  in.eta_e = schur.eta_e;
  in.d_zero = system.d().is_zero();
  in.e_zero = system.e().is_zero();
  s.bounds = bounds_precond_inexact(in);

  if (below_cutoff(system, opts)) {
    const SplitPreconditioned split =
        split_preconditioned_matrix(system, op, opts.spectral.oracle_cutoff);
    const Vector ev = full_spectrum(split.matrix, opts.spectral);
    s.spectrum = summarize(ev, opts.spectral.zero_tol);
    s.containment = check(ev, s.bounds, opts);
  }
  return s;
}

}  // namespace

AnalysisReport analyze(const DoubleSaddleSystem& system, const ProblemInfo& problem,
                       const AnalysisOptions& opts) {
  AnalysisReport report;
  report.problem = problem;
  report.dims = system.dims();

  Stopwatch total;
  {
    Stopwatch t;
    report.validation = validate(system, opts.tol);
    report.timings["validate"] = t.seconds();
  }
  if (!report.validation.ok()) {
    report.timings["total"] = total.seconds();
    return report;
  }
  {
    Stopwatch t;
    report.extremes = block_extremes(system, opts.spectral);
    report.timings["extremes"] = t.seconds();
  }
  for (const auto& name : opts.scenarios) {
    Stopwatch t;
    if (name == "unprec")
      report.scenarios.push_back(run_unpreconditioned(system, report.extremes, opts));
    else if (name == "prec-exact")
      report.scenarios.push_back(run_exact(system, report.validation, opts));
    else if (name == "prec-inexact")
      report.scenarios.push_back(run_inexact(system, opts));
    else
      throw ParameterError("unknown scenario '" + name + "'");
    report.timings[name] = t.seconds();
  }
  report.timings["total"] = total.seconds();
  return report;
}

}  // namespace dsaddle
