#include "tubehom/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tubehom/errors.hpp"
#include "tubehom/kernels.hpp"

namespace tubehom {
namespace {

constexpr double kPi = std::numbers::pi;
// Roots of different branches closer than this (relative) are one eigenvalue.
constexpr double kBothMerge = 1e-10;

// Distance check against the nearest accumulation point (pi n)^2/q^2, n >= 1,
// measured in units of the narrower neighbouring interval.
bool near_accumulation_point(double lambda, double q, double guard) {
  const double x = q * std::sqrt(lambda) / kPi;
  const double n = std::max(1.0, std::round(x));
  const SpectralInterval j = spectral_interval(static_cast<int>(n), q);
  return std::abs(lambda - j.upper) < guard * j.width();
}

}  // namespace

void PencilParams::validate() const {
  if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidArgument("pencil parameter p must be finite and >= 0");
  if (!(q > 0.0) || !std::isfinite(q)) throw InvalidArgument("pencil parameter q must be positive");
  if (!(omega > 0.0)) throw InvalidArgument("pencil parameter omega must be positive");
  if (!(pole_guard > 0.0) || pole_guard >= 0.5) throw InvalidArgument("pole guard must lie in (0, 0.5)");
}

SpectralInterval spectral_interval(int n, double q) {
  if (n < 1) throw InvalidArgument("interval index n must be >= 1");
  const double lo = kPi * (n - 1) / q;
  const double hi = kPi * n / q;
  return {lo * lo, hi * hi};
}

Branch hard_branch(int n) { return n % 2 == 1 ? Branch::Tan : Branch::Cot; }
Branch soft_branch(int n) { return n % 2 == 1 ? Branch::Cot : Branch::Tan; }

double branch_function(Branch branch, double lambda, const PencilParams& params) {
  const double s = std::sqrt(lambda);
  const double x = 0.5 * params.q * s;
  const double a = params.amplitude();
  if (branch == Branch::Tan) return lambda + a * s * std::tan(x);
  return lambda - a * s * std::cos(x) / std::sin(x);
}

double branch_derivative(Branch branch, double lambda, const PencilParams& params) {
  // d/dl [sqrt(l) t(x)] with x = q sqrt(l)/2 equals (t(x) + x t'(x)) / (2 sqrt(l)).
  const double s = std::sqrt(lambda);
  const double x = 0.5 * params.q * s;
  const double a = params.amplitude();
  const double sn = std::sin(x);
  const double cs = std::cos(x);
  if (branch == Branch::Tan) return 1.0 + a * (sn * cs + x) / (cs * cs) / (2.0 * s);
  return 1.0 + a * (x - sn * cs) / (sn * sn) / (2.0 * s);
}

std::optional<double> branch_root(Branch branch, int n, double mu, const PencilParams& params, double tol) {
  params.validate();
  if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");

  const SpectralInterval j = spectral_interval(n, params.q);
  const double guard = params.pole_guard * j.width();

  if (params.p == 0.0) {
    if (!(mu > j.lower && mu < j.upper)) return std::nullopt;
    if (mu - j.lower < guard || j.upper - mu < guard) {
      throw PoleProximity("root " + std::to_string(mu) + " lies within the pole guard of J_" + std::to_string(n));
    }
    return mu;
  }

  // The tube term vanishes at the hard branch's left end and the soft branch's
  // right end, so both ranges are decided by comparing mu with an endpoint.
  if (branch == hard_branch(n)) {
    if (!(mu > j.lower)) return std::nullopt;
  } else if (!(mu < j.upper)) {
    return std::nullopt;
  }

  double lo = j.lower + guard;
  double hi = j.upper - guard;
  auto residual = [&](double lambda) { return branch_function(branch, lambda, params) - mu; };
  double g_lo = residual(lo);
  double g_hi = residual(hi);
  if (g_lo > 0.0 || g_hi < 0.0) {
    throw PoleProximity("root for mu=" + std::to_string(mu) + " lies within the pole guard of J_" +
                        std::to_string(n));
  }

  const double target = tol * std::max(1.0, mu);
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g = residual(mid);
    if (g < 0.0) {
      lo = mid;
      g_lo = g;
    } else {
      hi = mid;
      g_hi = g;
    }
    if (hi - lo <= 1e-12 && std::min(-g_lo, g_hi) <= target) break;
  }

  double best = -g_lo < g_hi ? lo : hi;
  double g_best = std::min(-g_lo, g_hi);
  const double slope = branch_derivative(branch, best, params);
  if (std::isfinite(slope) && slope > 0.0) {
    const double polished = best - residual(best) / slope;
    if (polished >= lo && polished <= hi) {
      const double g_pol = std::abs(residual(polished));
      if (g_pol < g_best) best = polished;
    }
  }
  return best;
}

bool PencilSpectrum::has_pole_flags() const {
  for (const auto& interval : intervals) {
    for (const auto& root : interval.roots) {
      if (root.pole_flag) return true;
    }
  }
  return false;
}

Spectrum PencilSpectrum::to_spectrum() const {
  Spectrum s;
  for (const auto& interval : intervals) {
    for (const auto& root : interval.roots) s.entries.push_back({root.value, root.multiplicity, root.branch});
  }
  s.accumulation_points = accumulation_points;
  return s;
}

PencilSpectrum pencil_spectrum(const Spectrum& base, const PencilParams& params, const PencilOptions& options) {
  params.validate();
  if (options.n_max < 1) throw InvalidArgument("n_max must be >= 1");
  if (options.per_interval_cap < 1) throw InvalidArgument("per_interval_cap must be >= 1");

  const auto& entries = base.entries;
  PencilSpectrum out;

  if (params.p == 0.0) {
    // Both equations collapse to lambda = mu.
    for (int n = 1; n <= options.n_max; ++n) {
      PencilInterval interval;
      interval.n = n;
      interval.bounds = spectral_interval(n, params.q);
      const double guard = params.pole_guard * interval.bounds.width();
      interval.complete_below = interval.bounds.upper;
      for (std::size_t i = 0; i < entries.size(); ++i) {
        const double mu = entries[i].value;
        if (!(mu > interval.bounds.lower && mu < interval.bounds.upper)) continue;
        if (interval.roots.size() == options.per_interval_cap) {
          interval.complete_below = interval.roots.back().value;
          break;
        }
        PencilRoot root{mu, 2 * entries[i].multiplicity, SpectrumTag::Both, {i}, false};
        root.pole_flag = mu - interval.bounds.lower < guard || interval.bounds.upper - mu < guard;
        interval.roots.push_back(root);
      }
      if (!entries.empty() && entries.back().value < interval.bounds.upper) {
        interval.complete_below = std::min(interval.complete_below, entries.back().value);
      }
      out.intervals.push_back(std::move(interval));
      out.accumulation_points.push_back(spectral_interval(n, params.q).upper);
    }
    if (entries.empty()) {
      for (auto& interval : out.intervals) interval.complete_below = interval.bounds.lower;
    }
    return out;
  }

  std::vector<kernels::RootJob> jobs;
  std::vector<std::size_t> last_hard_job(static_cast<std::size_t>(options.n_max) + 1, SIZE_MAX);
  for (int n = 1; n <= options.n_max; ++n) {
    const SpectralInterval j = spectral_interval(n, params.q);
    std::size_t hard_taken = 0;
    for (std::size_t i = 0; i < entries.size() && hard_taken < options.per_interval_cap; ++i) {
      if (entries[i].value > j.lower) {
        last_hard_job[static_cast<std::size_t>(n)] = jobs.size();
        jobs.push_back({n, hard_branch(n), entries[i].value, i});
        ++hard_taken;
      }
    }
    for (std::size_t i = 0; i < entries.size() && entries[i].value < j.upper; ++i) {
      jobs.push_back({n, soft_branch(n), entries[i].value, i});
    }
  }

  const auto outcomes = kernels::solve_roots(jobs, params, options.tol, options.execution);

  for (int n = 1; n <= options.n_max; ++n) {
    PencilInterval interval;
    interval.n = n;
    interval.bounds = spectral_interval(n, params.q);
    interval.complete_below = interval.bounds.lower;

    std::vector<PencilRoot> raw;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      if (jobs[k].n != n || !outcomes[k].value) continue;
      const auto source = jobs[k].source;
      raw.push_back({*outcomes[k].value, entries[source].multiplicity,
                     jobs[k].branch == Branch::Tan ? SpectrumTag::Tan : SpectrumTag::Cot,
                     {source},
                     outcomes[k].pole_flag});
      if (k == last_hard_job[static_cast<std::size_t>(n)]) interval.complete_below = *outcomes[k].value;
    }
    std::stable_sort(raw.begin(), raw.end(),
                     [](const PencilRoot& a, const PencilRoot& b) { return a.value < b.value; });

    for (auto& root : raw) {
      if (!interval.roots.empty()) {
        auto& last = interval.roots.back();
        const bool other_branch = last.branch != root.branch;
        if (other_branch && std::abs(root.value - last.value) <= kBothMerge * root.value) {
          last.multiplicity += root.multiplicity;
          last.branch = SpectrumTag::Both;
          last.sources.insert(last.sources.end(), root.sources.begin(), root.sources.end());
          last.pole_flag = last.pole_flag || root.pole_flag;
          continue;
        }
      }
      interval.roots.push_back(std::move(root));
    }
    out.accumulation_points.push_back(interval.bounds.upper);
    out.intervals.push_back(std::move(interval));
  }
  return out;
}

Eigen::Matrix2d pencil_block(double lambda, double mu, const PencilParams& params) {
  params.validate();
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  Eigen::Matrix2d block;
  if (params.p == 0.0) {
    block << mu - lambda, 0.0, 0.0, mu - lambda;
    return block;
  }
  if (near_accumulation_point(lambda, params.q, params.pole_guard)) {
    throw PoleProximity("lambda=" + std::to_string(lambda) + " is at a pole of the pencil");
  }
  const double s = std::sqrt(lambda);
  const double theta = params.q * s;
  const double a = params.amplitude() * s;
  const double diag_term = a * std::cos(theta) / std::sin(theta);
  const double coupling = a / std::sin(theta);
  block << mu + diag_term - lambda, -coupling, -coupling, mu + diag_term - lambda;
  return block;
}

TubeCoefficients tube_coefficients(double lambda, double q) {
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  if (!(q > 0.0)) throw InvalidArgument("q must be positive");
  if (near_accumulation_point(lambda, q, 1e-9)) {
    throw PoleProximity("q*sqrt(lambda) is at a multiple of pi");
  }
  const double x = q * std::sqrt(lambda);
  const double sn = std::sin(x);
  const double cs = std::cos(x);
  double num1 = 0.0;  // x - sin x cos x
  double num2 = 0.0;  // sin x - x cos x
  if (x < 1e-2) {
    const double x2 = x * x;
    const double x3 = x2 * x;
    num1 = x3 * (2.0 / 3.0 - x2 * (2.0 / 15.0) + x2 * x2 * (4.0 / 315.0));
    num2 = x3 * (1.0 / 3.0 - x2 * (1.0 / 30.0) + x2 * x2 * (1.0 / 840.0));
  } else {
    num1 = x - sn * cs;
    num2 = sn - x * cs;
  }
  const double denom = 2.0 * x * sn * sn;
  TubeCoefficients c;
  c.k1 = num1 / denom;
  c.k2 = num2 / denom;
  c.rho_plus = 0.5 + 0.5 * (c.k1 + c.k2);
  c.rho_minus = 0.5 + 0.5 * (c.k1 - c.k2);
  return c;
}

}  // namespace tubehom
