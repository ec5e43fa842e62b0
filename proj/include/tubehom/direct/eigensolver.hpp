#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "tubehom/direct/model.hpp"
#include "tubehom/pencil.hpp"

namespace tubehom::direct {

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;
};

struct SolverOptions {
  /// Below this dimension the problem is reduced and solved densely.
  Eigen::Index dense_limit = 1000;
  std::uint64_t seed = 0x5eed;
  /// Krylov dimension cap for one shift-invert Lanczos run.
  Eigen::Index max_krylov = 400;
  int max_runs = 12;
  Execution execution = Execution::Parallel;
};

/// m smallest eigenpairs of K u = lambda M u, ascending, M-orthonormal, each
/// with ||K u - lambda M u|| <= tol * ||M u|| * max(1, lambda). Throws
/// ConvergenceFailure when the residual target is missed.
std::vector<EigenPair> smallest_eigenpairs(const DiscreteModel& model, Eigen::Index m, double tol,
                                           const SolverOptions& options = {});

/// Number of eigenvalues strictly below sigma, from the inertia of K - sigma M.
Eigen::Index count_eigenvalues_below(const DiscreteModel& model, double sigma);

/// Number of eigenvalues in the open window (lower, upper).
Eigen::Index count_eigenvalues_between(const DiscreteModel& model, double lower, double upper);

/// M-weighted cosine between the sheet-1 and sheet-2 restrictions of v:
/// 1 for identical sheets, -1 for opposite ones, 0 if either restriction vanishes.
double sheet_symmetry_indicator(const DiscreteModel& model, const Eigen::VectorXd& v);

}  // namespace tubehom::direct
