#include "tubehom/limit_spectrum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tubehom/errors.hpp"

namespace tubehom {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::vector<double> accumulation_points(double q, int n_max) {
  std::vector<double> points;
  for (int n = 1; n <= n_max; ++n) points.push_back(spectral_interval(n, q).upper);
  return points;
}

bool coincides(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

Spectrum pencil_limit(const PencilProblem& problem, const Spectrum& base, const HomogenizedOptions& options) {
  PencilOptions popt;
  popt.n_max = options.n_max;
  popt.per_interval_cap = std::max<std::size_t>(1, options.count);
  popt.tol = options.tol;
  popt.execution = options.execution;
  const PencilSpectrum ps = pencil_spectrum(base, PencilParams{problem.p, problem.q, problem.omega}, popt);
  if (ps.has_pole_flags()) throw PoleProximity("a pencil root fell inside the pole guard");

  Spectrum out;
  for (const auto& interval : ps.intervals) {
    for (const auto& root : interval.roots) {
      if (root.value <= interval.complete_below) out.entries.push_back({root.value, root.multiplicity, root.branch});
    }
  }
  out.accumulation_points = ps.accumulation_points;
  return out;
}

Spectrum doubled(const Spectrum& base) {
  Spectrum out;
  for (const auto& e : base.entries) out.entries.push_back({e.value, 2 * e.multiplicity, SpectrumTag::Base});
  return out;
}

}  // namespace

std::string_view to_string(LimitKind kind) {
  return kind == LimitKind::Threshold ? "threshold" : "discrete eigenvalue";
}

Spectrum homogenized_spectrum(const HomogenizedProblem& problem, const Spectrum& base,
                              const HomogenizedOptions& options) {
  if (options.n_max < 1) throw InvalidArgument("n_max must be >= 1");
  return std::visit(
      Overloaded{
          [&](const PencilProblem& p) { return pencil_limit(p, base, options); },
          [&](const DecoupledThresholdProblem& d) {
            const auto points = accumulation_points(d.q, options.n_max);
            Spectrum full = doubled(base);
            Spectrum kept;
            for (const auto& e : full.entries) {
              bool at_point = false;
              for (double a : points) at_point = at_point || coincides(a, e.value);
              if (!at_point) kept.entries.push_back(e);
            }
            Spectrum out = kept.truncated(options.count);
            out.accumulation_points = points;
            return out;
          },
          [&](const ScaledLaplacianProblem& s) {
            Spectrum out;
            for (const auto& e : base.entries) out.entries.push_back({e.value * s.c, e.multiplicity, SpectrumTag::Scaled});
            return out.truncated(options.count);
          },
          [&](const CoupledProblem& c) {
            // u+ = u1 + u2 sees -Laplace, u- = u1 - u2 sees -Laplace + 2V.
            std::vector<SpectrumEntry> raw;
            const double last = base.entries.empty() ? 0.0 : base.entries.back().value;
            for (const auto& e : base.entries) raw.push_back({e.value, e.multiplicity, SpectrumTag::Base});
            for (const auto& e : base.entries) {
              const double shifted = e.value + 2.0 * c.V;
              if (shifted <= last) raw.push_back({shifted, e.multiplicity, SpectrumTag::Plus2V});
            }
            return Spectrum::from_entries(std::move(raw)).truncated(options.count);
          },
      },
      problem);
}

std::size_t threshold_index(const Spectrum& base, double q) {
  if (!(q > 0.0)) throw InvalidArgument("q must be positive");
  const double threshold = std::numbers::pi * std::numbers::pi / (q * q);
  if (base.entries.empty() || base.entries.back().value < threshold) {
    throw InsufficientBase("base spectrum ends below the threshold pi^2/q^2");
  }
  std::size_t count = 0;
  for (const auto& e : base.entries) {
    if (e.value < threshold) count += 2 * static_cast<std::size_t>(e.multiplicity);
  }
  return count;
}

LimitQueryResult eigenvalue_limit(const HomogenizedProblem& problem, const Spectrum& base, std::size_t m) {
  if (m < 1) throw InvalidArgument("eigenvalue index m is 1-based");

  if (const auto* d = std::get_if<DecoupledThresholdProblem>(&problem)) {
    const std::size_t threshold_m = threshold_index(base, d->q);
    if (m > threshold_m) {
      return {m, std::numbers::pi * std::numbers::pi / (d->q * d->q), LimitKind::Threshold};
    }
    return {m, doubled(base).expanded()[m - 1], LimitKind::DiscreteEigenvalue};
  }

  HomogenizedOptions options;
  options.count = m;
  options.n_max = 1;
  const auto values = homogenized_spectrum(problem, base, options).expanded();
  if (values.size() < m) {
    throw InsufficientBase("base spectrum too short to resolve eigenvalue " + std::to_string(m));
  }
  return {m, values[m - 1], LimitKind::DiscreteEigenvalue};
}

}  // namespace tubehom
