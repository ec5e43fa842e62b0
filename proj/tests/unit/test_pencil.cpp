#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/LU>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "tubehom/errors.hpp"
#include "tubehom/pencil.hpp"

using namespace tubehom;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent evaluation of mu - f(lambda): scaled tangent / cotangent of half
// the tube phase.
double oracle_residual(bool tan_branch, double lambda, double mu, double p, double q, double omega) {
  const double k = p * omega / q;
  const double half = 0.5 * q * std::sqrt(lambda);
  const double t = tan_branch ? std::sin(half) / std::cos(half) : -std::cos(half) / std::sin(half);
  return mu - (lambda + k * std::sqrt(lambda) * t);
}

// Sign changes of the residual on a uniform grid inside (lo, hi), each refined by bisection.
std::vector<double> oracle_roots(bool tan_branch, double lo, double hi, double mu, double p, double q,
                                 double omega) {
  constexpr int kPoints = 100000;
  std::vector<double> roots;
  const double step = (hi - lo) / kPoints;
  double a = lo + 0.5 * step;
  double fa = oracle_residual(tan_branch, a, mu, p, q, omega);
  for (int i = 1; i < kPoints; ++i) {
    const double b = lo + (i + 0.5) * step;
    const double fb = oracle_residual(tan_branch, b, mu, p, q, omega);
    if ((fa > 0) != (fb > 0)) {
      double x0 = a;
      double x1 = b;
      double f0 = fa;
      for (int it = 0; it < 200 && x1 - x0 > 1e-14 * x1; ++it) {
        const double mid = 0.5 * (x0 + x1);
        const double fm = oracle_residual(tan_branch, mid, mu, p, q, omega);
        if ((fm > 0) == (f0 > 0)) {
          x0 = mid;
          f0 = fm;
        } else {
          x1 = mid;
        }
      }
      roots.push_back(0.5 * (x0 + x1));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

PencilParams unit_params() { return PencilParams{1.0, 1.0, 2 * kPi}; }

}  // namespace

TEST_CASE("spectral intervals and branch roles") {
  const auto j1 = spectral_interval(1, 1.0);
  CHECK(j1.lower == 0.0);
  CHECK(j1.upper == doctest::Approx(kPi * kPi));
  const auto j3 = spectral_interval(3, 2.0);
  CHECK(j3.lower == doctest::Approx(kPi * kPi));
  CHECK(j3.upper == doctest::Approx(9 * kPi * kPi / 4));
  CHECK(hard_branch(1) == Branch::Tan);
  CHECK(hard_branch(2) == Branch::Cot);
  CHECK(soft_branch(3) == Branch::Cot);
  CHECK_THROWS_AS(spectral_interval(0, 1.0), InvalidArgument);
}

TEST_CASE("branch functions are increasing with the analytic derivative") {
  const PencilParams params = unit_params();
  for (int n = 1; n <= 3; ++n) {
    const auto j = spectral_interval(n, params.q);
    for (Branch b : {Branch::Tan, Branch::Cot}) {
      double previous = -INFINITY;
      for (int i = 1; i < 200; ++i) {
        const double lambda = j.lower + j.width() * i / 200.0;
        const double f = branch_function(b, lambda, params);
        CHECK(f > previous);
        previous = f;
        const double h = 1e-6 * lambda;
        const double fd = (branch_function(b, lambda + h, params) - branch_function(b, lambda - h, params)) / (2 * h);
        CHECK(branch_derivative(b, lambda, params) == doctest::Approx(fd).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("branch roots match a dense scan") {
  const double omega = 2 * kPi;
  for (double p : {0.3, 1.0, 4.0}) {
    for (double q : {0.5, 1.0, 2.0}) {
      const PencilParams params{p, q, omega};
      for (int n = 1; n <= 3; ++n) {
        const auto j = spectral_interval(n, q);
        for (double mu : {3.0, 19.7392088, 49.3, 200.0, 1500.0}) {
          for (Branch b : {Branch::Tan, Branch::Cot}) {
            const auto root = branch_root(b, n, mu, params, 1e-12);
            const auto oracle = oracle_roots(b == Branch::Tan, j.lower, j.upper, mu, p, q, omega);
            CAPTURE(p);
            CAPTURE(q);
            CAPTURE(n);
            CAPTURE(mu);
            REQUIRE(oracle.size() <= 1);
            CHECK(root.has_value() == (oracle.size() == 1));
            if (root && !oracle.empty()) {
              CHECK(std::abs(*root - oracle[0]) <= 1e-8 * std::max(1.0, oracle[0]));
              CHECK(*root > j.lower);
              CHECK(*root < j.upper);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("hard roots lie below mu and soft roots above") {
  const PencilParams params = unit_params();
  for (double mu : {5.0, 20.0, 60.0}) {
    for (int n = 1; n <= 3; ++n) {
      if (auto r = branch_root(hard_branch(n), n, mu, params, 1e-12)) CHECK(*r < mu);
      if (auto r = branch_root(soft_branch(n), n, mu, params, 1e-12)) CHECK(*r > mu);
    }
  }
}

TEST_CASE("p = 0 roots are mu itself") {
  PencilParams params{0.0, 1.0, 2 * kPi};
  CHECK(*branch_root(Branch::Tan, 1, 5.0, params, 1e-12) == 5.0);
  CHECK_FALSE(branch_root(Branch::Cot, 2, 5.0, params, 1e-12).has_value());
  CHECK_THROWS_AS(branch_root(Branch::Tan, 1, kPi * kPi * (1 - 1e-12), params, 1e-12), PoleProximity);
}

TEST_CASE("roots pinned against a pole raise PoleProximity") {
  // A huge mu drives the J_1 hard root into the guard band below pi^2.
  PencilParams params = unit_params();
  params.pole_guard = 1e-3;
  CHECK_THROWS_AS(branch_root(Branch::Tan, 1, 1e9, params, 1e-12), PoleProximity);
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS((PencilParams{-1.0, 1.0, 1.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((PencilParams{1.0, 0.0, 1.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((PencilParams{1.0, 1.0, 0.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS(branch_root(Branch::Tan, 1, -1.0, unit_params(), 1e-12), InvalidArgument);
}

TEST_CASE("pencil spectrum of the unit square") {
  const std::array<double, 2> sides{1.0, 1.0};
  const Spectrum base = box_dirichlet_spectrum(sides, 30);
  const PencilParams params = unit_params();
  PencilOptions options;
  options.n_max = 3;
  const PencilSpectrum ps = pencil_spectrum(base, params, options);
  REQUIRE(ps.intervals.size() == 3);
  CHECK_FALSE(ps.has_pole_flags());
  for (const auto& interval : ps.intervals) {
    CHECK(ps.accumulation_points[static_cast<std::size_t>(interval.n - 1)] == interval.bounds.upper);
    CHECK(interval.complete_below > interval.bounds.lower);
    double previous = interval.bounds.lower;
    for (const auto& root : interval.roots) {
      CHECK(root.value > interval.bounds.lower);
      CHECK(root.value < interval.bounds.upper);
      CHECK(root.value > previous);
      previous = root.value;
      for (auto s : root.sources) CHECK(s < base.entries.size());
    }
  }
  // J_1 hard roots come one per base entry in base order.
  std::vector<double> hard;
  for (const auto& root : ps.intervals[0].roots) {
    if (root.branch == SpectrumTag::Tan) hard.push_back(root.value);
  }
  CHECK(hard.size() == base.entries.size());

  options.execution = Execution::Serial;
  CHECK(pencil_spectrum(base, params, options) == ps);
}

TEST_CASE("per-interval cap bounds the hard sources") {
  const std::array<double, 2> sides{1.0, 1.0};
  const Spectrum base = box_dirichlet_spectrum(sides, 30);
  PencilOptions options;
  options.n_max = 1;
  options.per_interval_cap = 3;
  const auto ps = pencil_spectrum(base, unit_params(), options);
  CHECK(ps.intervals[0].roots.size() == 3);
  CHECK(ps.intervals[0].complete_below == ps.intervals[0].roots.back().value);
}

TEST_CASE("pencil block determinant factorises") {
  const PencilParams params{0.7, 1.3, 2 * kPi};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lam(0.1, 60.0);
  std::uniform_real_distribution<double> mus(1.0, 200.0);
  int checked = 0;
  while (checked < 500) {
    const double lambda = lam(rng);
    const double mu = mus(rng);
    const double x = params.q * std::sqrt(lambda) / kPi;
    if (std::abs(x - std::round(x)) < 1e-3) continue;
    const auto block = pencil_block(lambda, mu, params);
    CHECK(block(0, 1) == block(1, 0));
    const double product = (mu - branch_function(Branch::Tan, lambda, params)) *
                           (mu - branch_function(Branch::Cot, lambda, params));
    CHECK(block.determinant() == doctest::Approx(product).epsilon(1e-10));
    ++checked;
  }
  CHECK_THROWS_AS(pencil_block(kPi * kPi / (params.q * params.q), 3.0, params), PoleProximity);
}

TEST_CASE("tube coefficients") {
  const auto small = tube_coefficients(1e-8, 1.0);
  CHECK(small.k1 == doctest::Approx(1.0 / 3).epsilon(1e-6));
  CHECK(small.k2 == doctest::Approx(1.0 / 6).epsilon(1e-6));
  const double lambda = kPi * kPi / 4;  // q sqrt(lambda) = pi/2
  const auto mid = tube_coefficients(lambda, 1.0);
  CHECK(mid.k1 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(mid.k2 == doctest::Approx(1 / kPi).epsilon(1e-14));
  CHECK(mid.rho_plus == doctest::Approx(0.5 + 0.5 * (0.5 + 1 / kPi)));
  // The series and the closed form agree where they hand over.
  const auto below = tube_coefficients(std::pow(0.0099999, 2), 1.0);
  const auto above = tube_coefficients(std::pow(0.0100001, 2), 1.0);
  CHECK(below.k1 == doctest::Approx(above.k1).epsilon(1e-7));
  CHECK(below.k2 == doctest::Approx(above.k2).epsilon(1e-7));
  CHECK_THROWS_AS(tube_coefficients(kPi * kPi, 1.0), PoleProximity);
}
