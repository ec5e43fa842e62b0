#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <vector>

#include "tubehom/spectrum.hpp"

namespace tubehom {

enum class Branch { Tan, Cot };

enum class Execution { Serial, Parallel };

struct PencilParams {
  double p = 0.0;
  double q = 1.0;
  double omega = 0.0;
  /// Roots closer than pole_guard * |J_n| to an endpoint of J_n are rejected.
  double pole_guard = 1e-9;

  void validate() const;
  /// p * omega / q, the amplitude of the tube term.
  double amplitude() const { return p * omega / q; }
};

/// J_n = ((pi (n-1))^2 / q^2, (pi n)^2 / q^2).
struct SpectralInterval {
  double lower = 0.0;
  double upper = 0.0;
  double width() const { return upper - lower; }
};

SpectralInterval spectral_interval(int n, double q);

/// Tan on odd intervals, Cot on even ones: the branch whose range on J_n is
/// unbounded above.
Branch hard_branch(int n);
Branch soft_branch(int n);

/// f_tan(l) = l + (p omega/q) sqrt(l) tan(q sqrt(l)/2),
/// f_cot(l) = l - (p omega/q) sqrt(l) cot(q sqrt(l)/2).
double branch_function(Branch branch, double lambda, const PencilParams& params);
double branch_derivative(Branch branch, double lambda, const PencilParams& params);

/// Unique root of branch_function(lambda) = mu inside J_n, or nullopt when mu
/// is outside the branch's range on J_n. Bisection followed by one Newton
/// polish. Throws PoleProximity when the root sits within the pole guard of an
/// endpoint. For p = 0 the root is mu itself.
std::optional<double> branch_root(Branch branch, int n, double mu, const PencilParams& params, double tol);

struct PencilRoot {
  double value = 0.0;
  int multiplicity = 1;
  SpectrumTag branch = SpectrumTag::Tan;  // Tan, Cot or Both
  /// Indices into the base spectrum's entries that produced this root.
  std::vector<std::size_t> sources;
  /// Set when the root fell inside the pole guard; value is then the guard edge.
  bool pole_flag = false;

  friend bool operator==(const PencilRoot&, const PencilRoot&) = default;
};

struct PencilInterval {
  int n = 1;
  SpectralInterval bounds;
  std::vector<PencilRoot> roots;
  /// Every pencil eigenvalue of J_n not above this value is listed in `roots`.
  double complete_below = 0.0;

  friend bool operator==(const PencilInterval& a, const PencilInterval& b) {
    return a.n == b.n && a.bounds.lower == b.bounds.lower && a.bounds.upper == b.bounds.upper &&
           a.roots == b.roots && a.complete_below == b.complete_below;
  }
};

struct PencilSpectrum {
  std::vector<PencilInterval> intervals;
  std::vector<double> accumulation_points;

  bool has_pole_flags() const;
  /// Flattened roots of all intervals, already sorted since the J_n are ordered.
  Spectrum to_spectrum() const;

  friend bool operator==(const PencilSpectrum&, const PencilSpectrum&) = default;
};

struct PencilOptions {
  int n_max = 3;
  /// Maximum number of base entries feeding the hard branch of each interval.
  std::size_t per_interval_cap = 20;
  double tol = 1e-10;
  Execution execution = Execution::Parallel;
};

PencilSpectrum pencil_spectrum(const Spectrum& base, const PencilParams& params, const PencilOptions& options);

/// The pencil restricted to one Dirichlet eigenfunction with eigenvalue mu.
Eigen::Matrix2d pencil_block(double lambda, double mu, const PencilParams& params);

struct TubeCoefficients {
  double k1 = 0.0;
  double k2 = 0.0;
  double rho_plus = 0.0;
  double rho_minus = 0.0;
};

/// Tube norm coefficients k1, k2 and weights rho = 1/2 + (k1 +- k2)/2 at
/// x = q sqrt(lambda). Throws PoleProximity near x = pi n.
TubeCoefficients tube_coefficients(double lambda, double q);

}  // namespace tubehom
