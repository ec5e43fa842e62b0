#pragma once

#include <Eigen/Core>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tubehom/direct/eigensolver.hpp"
#include "tubehom/errors.hpp"
#include "tubehom/limit_spectrum.hpp"
#include "tubehom/regime.hpp"

namespace tubehom::direct {

struct StudyOptions {
  int refinement = 4;
  /// 0 selects the default chain resolution.
  int tube_segments = 0;
  std::array<double, 2> side_lengths{1.0, 1.0};
  double tol = 1e-9;
  /// Relative error of lambda_1 required at the finest eps.
  double threshold = 0.1;
  /// Dirichlet eigenvalues of the box used to build the predictions.
  std::size_t base_count = 200;
  bool keep_vectors = false;
  SolverOptions solver;
};

struct StudyRow {
  double eps = 0.0;
  Eigen::Index dimension = 0;
  std::vector<double> computed;
  std::vector<double> predicted;
  std::vector<LimitKind> predicted_kind;
  std::vector<double> relative_errors;
  /// Eigenvalues in (pi^2/(2q^2), 3 pi^2/(2q^2)); absent when q = 0.
  std::optional<Eigen::Index> window_count;
  double ground_symmetry = 0.0;
  double seconds = 0.0;
  /// Set when assembly or the solve failed for this eps.
  std::optional<std::string> error;
  std::optional<ErrorKind> error_kind;
  /// Eigenvectors in model row order, only with StudyOptions::keep_vectors.
  std::vector<Eigen::VectorXd> vectors;

  bool ok() const { return !error.has_value(); }

  /// Compares everything except the stored vectors.
  friend bool operator==(const StudyRow& a, const StudyRow& b);
};

struct StudyVerdict {
  std::string theorem;
  bool monotone = false;
  /// +inf when a row failed.
  double final_error = 0.0;
  bool below_threshold = false;
  bool pass = false;

  friend bool operator==(const StudyVerdict&, const StudyVerdict&) = default;
};

struct ConvergenceReport {
  std::string regime;
  std::size_t m = 1;
  double threshold = 0.1;
  int refinement = 4;
  std::vector<StudyRow> rows;  // decreasing eps
  StudyVerdict verdict;
  double seconds = 0.0;

  friend bool operator==(const ConvergenceReport&, const ConvergenceReport&) = default;
};

/// Verdict label reported for this limit problem.
std::string theorem_for(const HomogenizedProblem& problem);

/// Assembles and solves every eps (concurrently), compares lambda_1..lambda_m
/// with the predicted limits and decides the verdict. A failed row is recorded
/// in place and fails the verdict without stopping the other rows.
ConvergenceReport convergence_study(const ScalingLaw& law, const std::vector<double>& eps_list, std::size_t m,
                                    const StudyOptions& options = {});

}  // namespace tubehom::direct
