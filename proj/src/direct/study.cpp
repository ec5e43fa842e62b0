#include "tubehom/direct/study.hpp"

#include <chrono>
#include <limits>
#include <cmath>
#include <numbers>

#include "tubehom/direct/model.hpp"
#include "tubehom/errors.hpp"
#include "tubehom/spectrum.hpp"

namespace tubehom::direct {
namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

StudyRow run_row(const ScalingLaw& law, double eps, std::size_t m, const std::vector<LimitQueryResult>& limits,
                 std::optional<double> window_q, const StudyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  StudyRow row;
  row.eps = eps;
  for (const auto& l : limits) {
    row.predicted.push_back(l.limit_value);
    row.predicted_kind.push_back(l.kind);
  }
  try {
    ModelConfig config;
    config.law = law;
    config.eps = eps;
    config.refinement = options.refinement;
    config.tube_segments = options.tube_segments;
    config.side_lengths = options.side_lengths;
    const DiscreteModel model = assemble(config);
    row.dimension = model.size();

    SolverOptions solver = options.solver;
    solver.execution = Execution::Serial;  // rows already run concurrently
    auto pairs = smallest_eigenpairs(model, static_cast<Eigen::Index>(m), options.tol, solver);
    for (std::size_t k = 0; k < m; ++k) {
      row.computed.push_back(pairs[k].value);
      row.relative_errors.push_back(std::abs(pairs[k].value - row.predicted[k]) / std::abs(row.predicted[k]));
    }
    row.ground_symmetry = sheet_symmetry_indicator(model, pairs.front().vector);
    if (window_q) {
      const double threshold = std::numbers::pi * std::numbers::pi / (*window_q * *window_q);
      row.window_count = count_eigenvalues_between(model, 0.5 * threshold, 1.5 * threshold);
    }
    if (options.keep_vectors) {
      for (auto& pair : pairs) row.vectors.push_back(std::move(pair.vector));
    }
  } catch (const Error& e) {
    row.error = e.what();
    row.error_kind = e.kind();
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  row.seconds = seconds_since(start);
  return row;
}

StudyVerdict decide(const std::string& theorem, const std::vector<StudyRow>& rows, double threshold) {
  StudyVerdict verdict;
  verdict.theorem = theorem;
  bool all_ok = !rows.empty();
  for (const auto& row : rows) all_ok = all_ok && row.ok();
  if (!all_ok) {
    verdict.final_error = std::numeric_limits<double>::infinity();
    return verdict;
  }
  verdict.monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    verdict.monotone = verdict.monotone && rows[i].relative_errors[0] < rows[i - 1].relative_errors[0];
  }
  verdict.final_error = rows.back().relative_errors[0];
  verdict.below_threshold = verdict.final_error < threshold;
  verdict.pass = verdict.monotone && verdict.below_threshold;
  return verdict;
}

}  // namespace

bool operator==(const StudyRow& a, const StudyRow& b) {
  return a.eps == b.eps && a.dimension == b.dimension && a.computed == b.computed && a.predicted == b.predicted &&
         a.predicted_kind == b.predicted_kind && a.relative_errors == b.relative_errors &&
         a.window_count == b.window_count && a.ground_symmetry == b.ground_symmetry && a.seconds == b.seconds &&
         a.error == b.error && a.error_kind == b.error_kind;
}

std::string theorem_for(const HomogenizedProblem& problem) {
  if (std::holds_alternative<PencilProblem>(problem)) return "theorem_8";
  if (std::holds_alternative<DecoupledThresholdProblem>(problem)) return "theorem_10";
  return "theorem_6";
}

ConvergenceReport convergence_study(const ScalingLaw& law, const std::vector<double>& eps_list, std::size_t m,
                                    const StudyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (law.dimension != 2) throw InvalidArgument("the convergence study is two-dimensional");
  if (m < 1) throw InvalidArgument("m must be >= 1");
  if (eps_list.empty()) throw InvalidArgument("eps list is empty");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw InvalidArgument("eps values must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw InvalidArgument("eps list must be strictly decreasing");
  }
  if (const auto reason = admissibility_violation(law)) throw InadmissibleLaw(*reason);

  const RegimeLimits limits = limits_from_law(law);
  const HomogenizedProblem problem = classify(limits, 2, sphere_volume(2));
  const Spectrum base = box_dirichlet_spectrum(options.side_lengths, options.base_count);
  std::vector<LimitQueryResult> predictions;
  for (std::size_t k = 1; k <= m; ++k) predictions.push_back(eigenvalue_limit(problem, base, k));
  const std::optional<double> window_q =
      limits.q.is_proper() ? std::optional<double>(limits.q.value()) : std::nullopt;

  ConvergenceReport report;
  report.regime = std::string(regime_name(problem));
  report.m = m;
  report.threshold = options.threshold;
  report.refinement = options.refinement;
  report.rows.resize(eps_list.size());

  const auto count = static_cast<std::ptrdiff_t>(eps_list.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    report.rows[static_cast<std::size_t>(i)] =
        run_row(law, eps_list[static_cast<std::size_t>(i)], m, predictions, window_q, options);
  }

  report.verdict = decide(theorem_for(problem), report.rows, options.threshold);
  report.seconds = seconds_since(start);
  return report;
}

}  // namespace tubehom::direct
