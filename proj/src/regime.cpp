#include "tubehom/regime.hpp"

#include <cmath>
#include <numbers>

#include "tubehom/errors.hpp"

namespace tubehom {
namespace {

// lim_{eps->0} C * eps^gamma for C > 0.
Extended power_limit(double coefficient, const Rational& gamma) {
  if (gamma.sign() > 0) return Extended::zero();
  if (gamma.sign() < 0) return Extended::infinity();
  return Extended(coefficient);
}

Rational dim(int n) { return Rational(n); }

}  // namespace

double ScalingLaw::radius_at(double eps) const {
  if (const auto* power = std::get_if<PowerLaw>(&radius)) {
    return power->coefficient * std::pow(eps, power->exponent.to_double());
  }
  return std::exp(-std::get<ExponentialLaw>(radius).rate / (eps * eps));
}

double ScalingLaw::length_at(double eps) const {
  return length.coefficient * std::pow(eps, length.exponent.to_double());
}

std::optional<std::string> admissibility_violation(const ScalingLaw& law) {
  if (law.dimension < 2) return "dimension N must be at least 2";
  if (!(law.length.coefficient > 0.0)) return "length coefficient q0 must be positive";
  if (law.length.exponent.sign() < 0) return "beta >= 0 fails: q(eps) is unbounded";

  if (const auto* exp_law = std::get_if<ExponentialLaw>(&law.radius)) {
    if (law.dimension != 2) return "exponential radius is only defined for N = 2";
    if (!(exp_law->rate > 0.0)) return "exponential rate a must be positive";
    return std::nullopt;
  }

  const auto& d = std::get<PowerLaw>(law.radius);
  if (!(d.coefficient > 0.0)) return "radius coefficient d0 must be positive";
  if (d.exponent <= Rational(1)) return "alpha > 1 fails: d(eps)/eps does not vanish";
  const Rational gamma = d.exponent * dim(law.dimension - 1) + law.length.exponent - dim(law.dimension);
  if (gamma.sign() < 0) return "alpha*(N-1) + beta - N >= 0 fails: p is infinite";
  return std::nullopt;
}

RegimeLimits limits_from_law(const ScalingLaw& law) {
  if (auto why = admissibility_violation(law)) throw InadmissibleLaw(*why);

  const int n = law.dimension;
  RegimeLimits limits;
  limits.q = power_limit(law.length.coefficient, law.length.exponent);

  if (const auto* exp_law = std::get_if<ExponentialLaw>(&law.radius)) {
    // d = exp(-a/eps^2) beats every power of eps; |ln d| = a/eps^2.
    limits.p = Extended::zero();
    limits.r = Extended::zero();
    limits.D = Extended(1.0 / exp_law->rate);
    // q / (d |ln d|) grows like exp(a/eps^2).
    limits.Q = Extended::infinity();
    return limits;
  }

  const auto& d = std::get<PowerLaw>(law.radius);
  const Rational alpha = d.exponent;
  const Rational beta = law.length.exponent;
  const double d_pow = std::pow(d.coefficient, n - 1);

  limits.p = power_limit(d_pow * law.length.coefficient, alpha * dim(n - 1) + beta - dim(n));
  limits.r = power_limit(d_pow / law.length.coefficient, alpha * dim(n - 1) - dim(n) - beta);

  if (n == 2) {
    // 1 / (|ln d| eps^2) with |ln d| ~ alpha |ln eps|.
    limits.D = Extended::infinity();
  } else {
    limits.D = power_limit(std::pow(d.coefficient, n - 2), alpha * dim(n - 2) - dim(n));
  }

  if (limits.D.is_proper()) {
    // Only reachable for N > 2 with alpha = N/(N-2).
    limits.Q = power_limit(law.length.coefficient / d.coefficient, beta - alpha);
  }
  return limits;
}

std::string_view regime_name(const HomogenizedProblem& problem) {
  switch (problem.index()) {
    case 0: return "pencil";
    case 1: return "decoupled_threshold";
    case 2: return "scaled_laplacian";
    default: return "coupled";
  }
}

double coupling_constant(const RegimeLimits& limits, int dimension, double omega) {
  const Extended r = limits.r;
  const Extended D = limits.D;
  if (D.is_zero()) return 0.0;
  if (D.is_infinite()) {
    if (r.is_infinite()) throw UncoveredRegime("coupling constant requires r < inf when D = inf");
    return r.value() * omega;
  }
  if (!limits.Q) throw MissingQ("0 < D < inf requires the limit Q");
  const Extended Q = *limits.Q;
  if (Q.is_infinite()) return 0.0;
  if (dimension > 2) {
    return (dimension - 2) * omega * D.value() / (2.0 + (dimension - 2) * Q.value());
  }
  return 2.0 * std::numbers::pi * D.value() / (2.0 + Q.value());
}

HomogenizedProblem classify(const RegimeLimits& limits, int dimension, double omega) {
  if (limits.p.is_infinite()) throw InadmissibleLaw("p = inf violates p in [0, inf)");
  if (limits.q.is_infinite()) throw InadmissibleLaw("q = inf violates q in [0, inf)");
  if (!(omega > 0.0)) throw InvalidArgument("omega must be positive");

  const double p = limits.p.value();
  if (limits.q.is_positive()) {
    const double q = limits.q.value();
    if (limits.p.is_positive()) return PencilProblem{p, q, omega};
    return DecoupledThresholdProblem{q};
  }

  if (limits.r.is_infinite() && limits.D.is_infinite()) {
    return ScaledLaplacianProblem{p, omega, 1.0 / (1.0 + 0.5 * p * omega)};
  }
  if (limits.D.is_proper() && !limits.Q) {
    throw UncoveredRegime("q = 0 with 0 < D < inf needs the limit Q, which is missing");
  }
  return CoupledProblem{coupling_constant(limits, dimension, omega)};
}

std::string_view to_string(PhaseLabel label) {
  switch (label) {
    case PhaseLabel::A: return "A";
    case PhaseLabel::B: return "B";
    case PhaseLabel::C: return "C";
    case PhaseLabel::D: return "D";
    case PhaseLabel::E: return "E";
    case PhaseLabel::F: return "F";
    case PhaseLabel::G: return "G";
    case PhaseLabel::SegmentBC: return "segment(B,C)";
    case PhaseLabel::RayCD: return "ray(C,D)";
    case PhaseLabel::SegmentCE: return "segment(C,E)";
    case PhaseLabel::RayEF: return "ray(E,F)";
    case PhaseLabel::SegmentEG: return "segment(E,G)";
    case PhaseLabel::Sigma1: return "Sigma1";
    case PhaseLabel::Sigma2: return "Sigma2";
    case PhaseLabel::Inadmissible: return "inadmissible";
  }
  return "inadmissible";
}

PhaseLabel phase_point(const ScalingLaw& law) {
  if (law.has_exponential_radius()) throw InvalidArgument("phase plane needs a power-law radius");
  if (law.dimension <= 2) throw InvalidArgument("phase plane is defined for N > 2");
  if (!is_admissible(law)) return PhaseLabel::Inadmissible;

  const int n = law.dimension;
  const Rational alpha = std::get<PowerLaw>(law.radius).exponent;
  const Rational beta = law.length.exponent;
  const Rational alpha_c(n, n - 1);  // C = (N/(N-1), 0)
  const Rational alpha_e(n, n - 2);  // E = (N/(N-2), N/(N-2)), G = (N/(N-2), 0)

  if (beta.is_zero()) {
    if (alpha == alpha_c) return PhaseLabel::C;
    if (alpha == alpha_e) return PhaseLabel::G;
    return PhaseLabel::RayCD;
  }

  // Line BC: (N-1) alpha + beta = N; admissibility already rules out the far side.
  if ((alpha * Rational(n - 1) + beta - Rational(n)).is_zero()) return PhaseLabel::SegmentBC;

  if (alpha == alpha_e) {
    if (beta == alpha_e) return PhaseLabel::E;
    return beta > alpha_e ? PhaseLabel::RayEF : PhaseLabel::SegmentEG;
  }
  if (alpha > alpha_e) return PhaseLabel::Sigma2;

  // Line CE: beta = (N-1) alpha - N, i.e. the exponent of r vanishes.
  const Rational ce = alpha * Rational(n - 1) - Rational(n);
  if (beta == ce) return PhaseLabel::SegmentCE;
  return beta > ce ? PhaseLabel::Sigma1 : PhaseLabel::Sigma2;
}

}  // namespace tubehom
