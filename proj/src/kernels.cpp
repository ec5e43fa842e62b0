#include "tubehom/kernels.hpp"

#include "tubehom/errors.hpp"

namespace tubehom::kernels {
namespace {

RootOutcome solve_one(const RootJob& job, const PencilParams& params, double tol) {
  RootOutcome out;
  try {
    out.value = branch_root(job.branch, job.n, job.mu, params, tol);
  } catch (const PoleProximity&) {
    // Report the guard edge nearest to the root instead of aborting.
    const SpectralInterval j = spectral_interval(job.n, params.q);
    const double guard = params.pole_guard * j.width();
    const double lo = j.lower + guard;
    const bool below = params.p == 0.0 ? job.mu - j.lower < guard
                                       : branch_function(job.branch, lo, params) > job.mu;
    out.value = below ? lo : j.upper - guard;
    out.pole_flag = true;
  }
  return out;
}

}  // namespace

std::vector<RootOutcome> solve_roots_serial(std::span<const RootJob> jobs, const PencilParams& params, double tol) {
  std::vector<RootOutcome> out(jobs.size());
  for (std::size_t k = 0; k < jobs.size(); ++k) out[k] = solve_one(jobs[k], params, tol);
  return out;
}

std::vector<RootOutcome> solve_roots_parallel(std::span<const RootJob> jobs, const PencilParams& params,
                                              double tol) {
  std::vector<RootOutcome> out(jobs.size());
  const auto count = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = solve_one(jobs[static_cast<std::size_t>(k)], params, tol);
  }
  return out;
}

void orthogonalize_serial(const Eigen::MatrixXd& basis, Eigen::Index columns, Eigen::VectorXd& v) {
  const Eigen::Index rows = basis.rows();
  std::vector<double> coef(static_cast<std::size_t>(columns));
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index c = 0; c < columns; ++c) {
      const double* col = basis.col(c).data();
      double s = 0.0;
      for (Eigen::Index i = 0; i < rows; ++i) s += col[i] * v[i];
      coef[static_cast<std::size_t>(c)] = s;
    }
    for (Eigen::Index i = 0; i < rows; ++i) {
      double s = 0.0;
      for (Eigen::Index c = 0; c < columns; ++c) s += coef[static_cast<std::size_t>(c)] * basis(i, c);
      v[i] -= s;
    }
  }
}

void orthogonalize_parallel(const Eigen::MatrixXd& basis, Eigen::Index columns, Eigen::VectorXd& v) {
  const Eigen::Index rows = basis.rows();
  std::vector<double> coef(static_cast<std::size_t>(columns));
  for (int pass = 0; pass < 2; ++pass) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index c = 0; c < columns; ++c) {
      const double* col = basis.col(c).data();
      double s = 0.0;
      for (Eigen::Index i = 0; i < rows; ++i) s += col[i] * v[i];
      coef[static_cast<std::size_t>(c)] = s;
    }
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < rows; ++i) {
      double s = 0.0;
      for (Eigen::Index c = 0; c < columns; ++c) s += coef[static_cast<std::size_t>(c)] * basis(i, c);
      v[i] -= s;
    }
  }
}

}  // namespace tubehom::kernels
