#include "tubehom/direct/eigensolver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "tubehom/errors.hpp"
#include "tubehom/kernels.hpp"

namespace tubehom::direct {
namespace {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

double residual_ratio(const DiscreteModel& model, double lambda, const Vector& x) {
  const Vector mx = model.mass.cwiseProduct(x);
  const Vector r = model.stiffness * x - lambda * mx;
  return r.norm() / (mx.norm() * std::max(1.0, lambda));
}

std::vector<EigenPair> dense_pairs(const DiscreteModel& model, Eigen::Index m) {
  const Vector inv_sqrt = model.mass.cwiseSqrt().cwiseInverse();
  const Matrix reduced = inv_sqrt.asDiagonal() * Matrix(model.stiffness) * inv_sqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(reduced);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("dense eigensolver failed");
  std::vector<EigenPair> out;
  for (Eigen::Index k = 0; k < m; ++k) {
    out.push_back({solver.eigenvalues()[k], inv_sqrt.cwiseProduct(solver.eigenvectors().col(k))});
  }
  return out;
}

// Shift-invert Lanczos on B = S K^{-1} S with S = M^{1/2}; the largest
// eigenvalues theta of B give the smallest lambda = 1/theta. Runs are repeated
// in the orthogonal complement of everything already locked so that missed
// copies of multiple eigenvalues are recovered.
class ShiftInvertLanczos {
 public:
  ShiftInvertLanczos(const DiscreteModel& model, double tol, const SolverOptions& options)
      : model_(model), tol_(tol), options_(options), sqrt_mass_(model.mass.cwiseSqrt()), rng_(options.seed) {
    factor_.compute(model.stiffness);
    if (factor_.info() != Eigen::Success) throw ConvergenceFailure("stiffness factorization failed");
  }

  std::vector<EigenPair> solve(Eigen::Index m) {
    const Eigen::Index n = model_.size();
    locked_ = Matrix(n, 0);
    std::vector<double> values;

    for (int run = 0; run < options_.max_runs; ++run) {
      const Eigen::Index need = std::min<Eigen::Index>(m, n - locked_.cols());
      if (need <= 0) break;
      const auto found = run_once(need);
      if (found.empty()) throw ConvergenceFailure("Lanczos run produced no converged eigenpairs");

      const auto enough = [&] { return values.size() >= static_cast<std::size_t>(m); };
      double mth = enough() ? sorted_nth(values, m - 1) : INFINITY;
      bool added = false;
      for (const auto& [lambda, y] : found) {
        if (!enough() || lambda < mth * (1.0 - 1e-12)) {
          lock(y);
          values.push_back(lambda);
          if (enough()) mth = sorted_nth(values, m - 1);
          added = true;
        }
      }
      // A run in the complement that finds nothing below the m-th value confirms the set.
      if (enough() && !added) return collect(values, m);
    }
    throw ConvergenceFailure("deflated Lanczos did not settle within " + std::to_string(options_.max_runs) +
                             " runs");
  }

 private:
  Vector apply(const Vector& y) const {
    const Vector rhs = sqrt_mass_.cwiseProduct(y);
    return sqrt_mass_.cwiseProduct(factor_.solve(rhs));
  }

  static double sorted_nth(std::vector<double> values, Eigen::Index k) {
    std::nth_element(values.begin(), values.begin() + k, values.end());
    return values[static_cast<std::size_t>(k)];
  }

  void lock(const Vector& y) {
    Vector v = y;
    kernels::orthogonalize(locked_, locked_.cols(), v, options_.execution);
    v.normalize();
    locked_.conservativeResize(Eigen::NoChange, locked_.cols() + 1);
    locked_.col(locked_.cols() - 1) = v;
  }

  std::vector<EigenPair> collect(const std::vector<double>& values, Eigen::Index m) const {
    std::vector<Eigen::Index> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Eigen::Index>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)]; });
    std::vector<EigenPair> out;
    for (Eigen::Index k = 0; k < m; ++k) {
      const Eigen::Index idx = order[static_cast<std::size_t>(k)];
      out.push_back({values[static_cast<std::size_t>(idx)], locked_.col(idx).cwiseQuotient(sqrt_mass_)});
    }
    return out;
  }

  // Returns up to `need` converged (lambda, y) pairs, ascending in lambda.
  std::vector<std::pair<double, Vector>> run_once(Eigen::Index need) {
    const Eigen::Index n = model_.size();
    const Eigen::Index kmax = std::min<Eigen::Index>(options_.max_krylov, n - locked_.cols());
    Matrix basis(n, kmax);
    std::vector<double> alpha;
    std::vector<double> beta;

    std::normal_distribution<double> normal;
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng_);
    kernels::orthogonalize(locked_, locked_.cols(), v, options_.execution);
    v.normalize();
    basis.col(0) = v;

    std::vector<std::pair<double, Vector>> accepted;
    for (Eigen::Index k = 0; k < kmax; ++k) {
      Vector w = apply(basis.col(k));
      kernels::orthogonalize(locked_, locked_.cols(), w, options_.execution);
      alpha.push_back(basis.col(k).dot(w));
      kernels::orthogonalize(basis, k + 1, w, options_.execution);
      const double b = w.norm();
      beta.push_back(b);

      const Eigen::Index size = k + 1;
      const bool breakdown = b <= 1e-14 * std::abs(alpha.front());
      const bool check = breakdown || size == kmax || (size >= need + 4 && size % 5 == 0);
      if (check) {
        accepted = converged_ritz(basis, alpha, beta, size, need);
        if (static_cast<Eigen::Index>(accepted.size()) == need || breakdown || size == kmax) break;
      }
      if (k + 1 < kmax) basis.col(k + 1) = w / b;
    }
    return accepted;
  }

  std::vector<std::pair<double, Vector>> converged_ritz(const Matrix& basis, const std::vector<double>& alpha,
                                                       const std::vector<double>& beta, Eigen::Index size,
                                                       Eigen::Index need) const {
    Vector diag = Eigen::Map<const Vector>(alpha.data(), size);
    Vector sub = Eigen::Map<const Vector>(beta.data(), size - 1);
    Eigen::SelfAdjointEigenSolver<Matrix> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);

    std::vector<std::pair<double, Vector>> out;
    const Eigen::Index take = std::min(need, size);
    for (Eigen::Index t = 0; t < take; ++t) {
      const Eigen::Index col = size - 1 - t;  // largest theta first
      const double theta = tri.eigenvalues()[col];
      if (!(theta > 0.0)) break;
      Vector y = basis.leftCols(size) * tri.eigenvectors().col(col);
      y.normalize();
      const double lambda = 1.0 / theta;
      if (residual_ratio(model_, lambda, y.cwiseQuotient(sqrt_mass_)) > tol_) break;
      out.emplace_back(lambda, std::move(y));
    }
    return out;
  }

  const DiscreteModel& model_;
  double tol_;
  SolverOptions options_;
  Vector sqrt_mass_;
  std::mt19937_64 rng_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor_;
  Matrix locked_;
};

}  // namespace

std::vector<EigenPair> smallest_eigenpairs(const DiscreteModel& model, Eigen::Index m, double tol,
                                           const SolverOptions& options) {
  if (m < 1 || m > model.size()) throw InvalidArgument("requested eigenpair count out of range");
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  if ((model.mass.array() <= 0.0).any()) throw InvalidArgument("mass matrix must be positive");

  std::vector<EigenPair> pairs;
  if (model.size() <= options.dense_limit) {
    pairs = dense_pairs(model, m);
  } else {
    ShiftInvertLanczos solver(model, tol, options);
    pairs = solver.solve(m);
  }
  for (const auto& pair : pairs) {
    const double res = residual_ratio(model, pair.value, pair.vector);
    if (!(res <= tol)) {
      throw ConvergenceFailure("eigenpair at lambda=" + std::to_string(pair.value) + " has residual " +
                               std::to_string(res));
    }
  }
  return pairs;
}

Eigen::Index count_eigenvalues_below(const DiscreteModel& model, double sigma) {
  Eigen::SparseMatrix<double> shifted = model.stiffness;
  for (Eigen::Index i = 0; i < shifted.rows(); ++i) shifted.coeffRef(i, i) -= sigma * model.mass[i];
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor(shifted);
  if (factor.info() != Eigen::Success) {
    throw ConvergenceFailure("K - sigma M is singular at sigma=" + std::to_string(sigma));
  }
  return (factor.vectorD().array() < 0.0).count();
}

Eigen::Index count_eigenvalues_between(const DiscreteModel& model, double lower, double upper) {
  if (!(lower < upper)) throw InvalidArgument("window must satisfy lower < upper");
  return count_eigenvalues_below(model, upper) - count_eigenvalues_below(model, lower);
}

double sheet_symmetry_indicator(const DiscreteModel& model, const Eigen::VectorXd& v) {
  if (v.size() != model.size()) throw InvalidArgument("vector dimension does not match the model");
  const Eigen::Index s = model.sheet_size();
  double cross = 0.0;
  double norm1 = 0.0;
  double norm2 = 0.0;
  for (Eigen::Index i = 0; i < s; ++i) {
    const double a = v[i];
    const double b = v[i + s];
    cross += model.mass[i] * a * b;
    norm1 += model.mass[i] * a * a;
    norm2 += model.mass[i + s] * b * b;
  }
  if (norm1 == 0.0 || norm2 == 0.0) return 0.0;
  return std::clamp(cross / std::sqrt(norm1 * norm2), -1.0, 1.0);
}

}  // namespace tubehom::direct
