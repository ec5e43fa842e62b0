#pragma once

// Data-parallel inner loops. Every kernel has an OpenMP version and a serial
// reference; both produce bit-identical results.

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tubehom/pencil.hpp"

namespace tubehom::kernels {

struct RootJob {
  int n = 1;
  Branch branch = Branch::Tan;
  double mu = 0.0;
  std::size_t source = 0;
};

struct RootOutcome {
  std::optional<double> value;
  bool pole_flag = false;
};

std::vector<RootOutcome> solve_roots_serial(std::span<const RootJob> jobs, const PencilParams& params, double tol);
std::vector<RootOutcome> solve_roots_parallel(std::span<const RootJob> jobs, const PencilParams& params, double tol);

inline std::vector<RootOutcome> solve_roots(std::span<const RootJob> jobs, const PencilParams& params, double tol,
                                            Execution execution) {
  return execution == Execution::Serial ? solve_roots_serial(jobs, params, tol)
                                        : solve_roots_parallel(jobs, params, tol);
}

/// Two passes of classical Gram-Schmidt of v against the first `columns`
/// columns of the orthonormal `basis`.
void orthogonalize_serial(const Eigen::MatrixXd& basis, Eigen::Index columns, Eigen::VectorXd& v);
void orthogonalize_parallel(const Eigen::MatrixXd& basis, Eigen::Index columns, Eigen::VectorXd& v);

inline void orthogonalize(const Eigen::MatrixXd& basis, Eigen::Index columns, Eigen::VectorXd& v,
                          Execution execution) {
  if (execution == Execution::Serial) {
    orthogonalize_serial(basis, columns, v);
  } else {
    orthogonalize_parallel(basis, columns, v);
  }
}

}  // namespace tubehom::kernels
