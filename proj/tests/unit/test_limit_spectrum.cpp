#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <numbers>

#include "tubehom/errors.hpp"
#include "tubehom/limit_spectrum.hpp"

using namespace tubehom;

namespace {

constexpr double kPi = std::numbers::pi;

Spectrum unit_square(std::size_t count) {
  const std::array<double, 2> sides{1.0, 1.0};
  return box_dirichlet_spectrum(sides, count);
}

}  // namespace

TEST_CASE("decoupled threshold: doubled base plus accumulation points") {
  const Spectrum base = unit_square(13);
  HomogenizedOptions options;
  options.count = 26;
  options.n_max = 4;
  const Spectrum s = homogenized_spectrum(DecoupledThresholdProblem{1.0}, base, options);
  REQUIRE(s.accumulation_points.size() == 4);
  for (int n = 1; n <= 4; ++n) CHECK(s.accumulation_points[n - 1] == doctest::Approx(kPi * kPi * n * n));
  REQUIRE(s.entries.size() == base.entries.size());
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    CHECK(s.entries[i].value == base.entries[i].value);
    CHECK(s.entries[i].multiplicity == 2 * base.entries[i].multiplicity);
  }
}

TEST_CASE("decoupled threshold drops base values sitting on an accumulation point") {
  // On a 1-D interval of length 1 with q = 1 every Dirichlet value is (pi k)^2.
  const std::array<double, 1> line{1.0};
  const Spectrum s = homogenized_spectrum(DecoupledThresholdProblem{1.0}, box_dirichlet_spectrum(line, 3), {});
  CHECK(s.entries.empty());
  CHECK(s.accumulation_points.size() == 3);
}

TEST_CASE("scaled Laplacian multiplies the base") {
  const Spectrum base = unit_square(10);
  const double c = 1.0 / (1.0 + 0.5 * 2.0 * 2 * kPi);
  HomogenizedOptions options;
  options.count = 10;
  const Spectrum s = homogenized_spectrum(ScaledLaplacianProblem{2.0, 2 * kPi, c}, base, options);
  CHECK(s.total_multiplicity() == 10);
  for (std::size_t i = 0; i < s.entries.size(); ++i) CHECK(s.entries[i].value == base.entries[i].value * c);
}

TEST_CASE("coupled system: base and base + 2V") {
  const Spectrum base = unit_square(20);
  HomogenizedOptions options;
  options.count = 20;
  SUBCASE("V = 0 doubles every multiplicity") {
    const Spectrum s = homogenized_spectrum(CoupledProblem{0.0}, base, options);
    CHECK(s == Spectrum::from_entries([&] {
      std::vector<SpectrumEntry> raw;
      for (const auto& e : base.entries) raw.push_back({e.value, 2 * e.multiplicity, SpectrumTag::Base});
      return raw;
    }()).truncated(20));
  }
  SUBCASE("V > 0 interleaves shifted copies") {
    const double v = 10.0;
    const Spectrum s = homogenized_spectrum(CoupledProblem{v}, base, options);
    CHECK(s.entries[0].value == base.entries[0].value);
    CHECK(s.entries[0].tag == SpectrumTag::Base);
    bool shifted = false;
    for (const auto& e : s.entries) {
      if (e.tag == SpectrumTag::Plus2V) {
        shifted = true;
        CHECK(e.value == doctest::Approx(2 * kPi * kPi + 2 * v));
        break;
      }
    }
    CHECK(shifted);
  }
}

TEST_CASE("pencil limit lists only complete roots") {
  const Spectrum base = unit_square(20);
  HomogenizedOptions options;
  options.count = 5;
  options.n_max = 2;
  const Spectrum s = homogenized_spectrum(PencilProblem{1.0, 1.0, 2 * kPi}, base, options);
  CHECK_FALSE(s.empty());
  CHECK(s.accumulation_points.size() == 2);
  double previous = 0.0;
  for (const auto& e : s.entries) {
    CHECK(e.value > previous);
    previous = e.value;
  }
}

TEST_CASE("threshold index and eigenvalue limits") {
  const std::array<double, 2> sides{3.0, 3.0};
  const Spectrum base = box_dirichlet_spectrum(sides, 40);
  // (k^2 + l^2)/9 < 1 for (1,1), (1,2), (2,1), (2,2): four values, doubled.
  CHECK(threshold_index(base, 1.0) == 8);
  const HomogenizedProblem problem = DecoupledThresholdProblem{1.0};
  for (std::size_t m = 1; m <= 8; ++m) {
    const auto r = eigenvalue_limit(problem, base, m);
    CHECK(r.kind == LimitKind::DiscreteEigenvalue);
    CHECK(r.limit_value < kPi * kPi);
  }
  CHECK(eigenvalue_limit(problem, base, 1).limit_value == doctest::Approx(2 * kPi * kPi / 9));
  CHECK(eigenvalue_limit(problem, base, 2).limit_value == doctest::Approx(2 * kPi * kPi / 9));
  for (std::size_t m = 9; m <= 28; ++m) {
    const auto r = eigenvalue_limit(problem, base, m);
    CHECK(r.kind == LimitKind::Threshold);
    CHECK(r.limit_value == kPi * kPi);
  }
  CHECK(to_string(LimitKind::Threshold) == "threshold");
}

TEST_CASE("insufficient bases are reported") {
  const Spectrum short_base = unit_square(1);
  CHECK_THROWS_AS(threshold_index(box_dirichlet_spectrum(std::array<double, 2>{3.0, 3.0}, 2), 1.0),
                  InsufficientBase);
  CHECK_THROWS_AS(eigenvalue_limit(ScaledLaplacianProblem{0.0, 2 * kPi, 1.0}, short_base, 3), InsufficientBase);
  CHECK_THROWS_AS(eigenvalue_limit(CoupledProblem{0.0}, short_base, 0), InvalidArgument);
  CHECK(eigenvalue_limit(ScaledLaplacianProblem{0.0, 2 * kPi, 1.0}, short_base, 1).limit_value == 2 * kPi * kPi);
}

TEST_CASE("pencil eigenvalue limit is the smallest pencil root") {
  const Spectrum base = unit_square(20);
  const PencilParams params{0.5, 1.0, 2 * kPi};
  const auto r = eigenvalue_limit(PencilProblem{0.5, 1.0, 2 * kPi}, base, 1);
  const double root = *branch_root(Branch::Tan, 1, 2 * kPi * kPi, params, 1e-12);
  CHECK(r.limit_value == doctest::Approx(root).epsilon(1e-12));
  CHECK(r.limit_value < 2 * kPi * kPi);
}
