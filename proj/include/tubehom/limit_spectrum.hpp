#pragma once

#include <cstddef>
#include <string_view>

#include "tubehom/pencil.hpp"
#include "tubehom/regime.hpp"
#include "tubehom/spectrum.hpp"

namespace tubehom {

enum class LimitKind { DiscreteEigenvalue, Threshold };

std::string_view to_string(LimitKind kind);

struct LimitQueryResult {
  std::size_t m = 1;
  double limit_value = 0.0;
  LimitKind kind = LimitKind::DiscreteEigenvalue;
};

struct HomogenizedOptions {
  /// Values (with multiplicity) for the q = 0 and decoupled regimes; per-interval
  /// cap on hard-branch sources for the pencil.
  std::size_t count = 20;
  /// Accumulation points (pi n)^2/q^2 and pencil intervals listed for n <= n_max.
  int n_max = 3;
  double tol = 1e-10;
  Execution execution = Execution::Parallel;
};

/// Spectrum of the limit problem built from the base Dirichlet spectrum. Only
/// values guaranteed complete by the given base are listed. Throws
/// PoleProximity if a pencil root falls inside the pole guard.
Spectrum homogenized_spectrum(const HomogenizedProblem& problem, const Spectrum& base,
                              const HomogenizedOptions& options = {});

/// Number of eigenvalues of the doubled base spectrum strictly below pi^2/q^2.
/// Throws InsufficientBase when the base does not reach the threshold.
std::size_t threshold_index(const Spectrum& base, double q);

/// Limit of the m-th eigenvalue (1-based) as eps -> 0. Throws InsufficientBase
/// when the base spectrum is too short to decide.
LimitQueryResult eigenvalue_limit(const HomogenizedProblem& problem, const Spectrum& base, std::size_t m);

}  // namespace tubehom
