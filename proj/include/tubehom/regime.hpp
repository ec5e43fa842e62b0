#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "tubehom/extended.hpp"
#include "tubehom/rational.hpp"

namespace tubehom {

/// coefficient * eps^exponent
struct PowerLaw {
  double coefficient = 1.0;
  Rational exponent;
};

/// exp(-rate / eps^2); two-dimensional manifolds only.
struct ExponentialLaw {
  double rate = 1.0;
};

/// Hole radius d(eps) and tube length q(eps) as functions of eps, plus the
/// dimension N of the sheets.
struct ScalingLaw {
  int dimension = 2;
  std::variant<PowerLaw, ExponentialLaw> radius;
  PowerLaw length;

  double radius_at(double eps) const;
  double length_at(double eps) const;
  bool has_exponential_radius() const { return std::holds_alternative<ExponentialLaw>(radius); }
};

/// Reason the law violates the standing assumptions, or nullopt if admissible.
std::optional<std::string> admissibility_violation(const ScalingLaw& law);
inline bool is_admissible(const ScalingLaw& law) { return !admissibility_violation(law).has_value(); }

/// Limits p, q, r, D and (when 0 < D < inf) Q of the geometric ratios.
struct RegimeLimits {
  Extended p;
  Extended q;
  Extended r;
  Extended D;
  std::optional<Extended> Q;

  friend bool operator==(const RegimeLimits&, const RegimeLimits&) = default;
};

/// Spectral parameter enters nonlinearly (q > 0, p > 0).
struct PencilProblem {
  double p = 0.0;
  double q = 0.0;
  double omega = 0.0;

  friend bool operator==(const PencilProblem&, const PencilProblem&) = default;
};

/// Two uncoupled Laplacians plus the threshold pi^2/q^2 (q > 0, p = 0).
struct DecoupledThresholdProblem {
  double q = 0.0;

  friend bool operator==(const DecoupledThresholdProblem&, const DecoupledThresholdProblem&) = default;
};

/// -c * Laplacian with c = 1 / (1 + p*omega/2) (q = 0, r = D = inf).
struct ScaledLaplacianProblem {
  double p = 0.0;
  double omega = 0.0;
  double c = 1.0;

  friend bool operator==(const ScaledLaplacianProblem&, const ScaledLaplacianProblem&) = default;
};

/// Two Laplacians coupled through the constant potential V (q = 0, finite r or D).
struct CoupledProblem {
  double V = 0.0;

  friend bool operator==(const CoupledProblem&, const CoupledProblem&) = default;
};

using HomogenizedProblem =
    std::variant<PencilProblem, DecoupledThresholdProblem, ScaledLaplacianProblem, CoupledProblem>;

std::string_view regime_name(const HomogenizedProblem& problem);

/// Throws InadmissibleLaw naming the failed exponent inequality.
RegimeLimits limits_from_law(const ScalingLaw& law);

/// Selects the limit problem. Throws InadmissibleLaw when p or q is infinite and
/// UncoveredRegime when a required limit (Q) is missing.
HomogenizedProblem classify(const RegimeLimits& limits, int dimension, double omega);

/// Constant potential of the coupled system. Throws MissingQ when 0 < D < inf
/// and Q is absent, UncoveredRegime when called outside the coupled regime.
double coupling_constant(const RegimeLimits& limits, int dimension, double omega);

enum class PhaseLabel {
  A,
  B,
  C,
  D,
  E,
  F,
  G,
  SegmentBC,
  RayCD,
  SegmentCE,
  RayEF,
  SegmentEG,
  Sigma1,
  Sigma2,
  Inadmissible,
};

std::string_view to_string(PhaseLabel label);

/// Position of (alpha, beta) in the phase plane for power-law radii and N > 2.
/// Throws InvalidArgument for exponential radii or N = 2.
PhaseLabel phase_point(const ScalingLaw& law);

}  // namespace tubehom
