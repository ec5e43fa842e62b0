#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "tubehom/errors.hpp"
#include "tubehom/spectrum.hpp"

using namespace tubehom;

namespace {

constexpr double kPi = std::numbers::pi;

// Sorted list of all pi^2 (k^2/a^2 + l^2/b^2) with k, l <= kmax.
std::vector<double> brute_force_box(double a, double b, int kmax) {
  std::vector<double> values;
  for (int k = 1; k <= kmax; ++k) {
    for (int l = 1; l <= kmax; ++l) values.push_back(kPi * kPi * (k * k / (a * a) + l * l / (b * b)));
  }
  std::sort(values.begin(), values.end());
  return values;
}

// 5-point discrete Laplacian, closed form (4/h^2) sin^2(k pi h / 2a) per axis.
std::vector<double> brute_force_fd(double a, double b, double h) {
  const int nx = static_cast<int>(std::lround(a / h)) - 1;
  const int ny = static_cast<int>(std::lround(b / h)) - 1;
  std::vector<double> values;
  for (int k = 1; k <= nx; ++k) {
    for (int l = 1; l <= ny; ++l) {
      const double sx = std::sin(k * kPi * h / (2 * a));
      const double sy = std::sin(l * kPi * h / (2 * b));
      values.push_back(4.0 / (h * h) * (sx * sx + sy * sy));
    }
  }
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace

TEST_CASE("sphere volumes") {
  CHECK(sphere_volume(2) == doctest::Approx(2 * kPi));
  CHECK(sphere_volume(3) == doctest::Approx(4 * kPi));
  CHECK(sphere_volume(4) == doctest::Approx(2 * kPi * kPi));
}

TEST_CASE("box spectrum of the unit square") {
  const std::array<double, 2> sides{1.0, 1.0};
  const Spectrum s = box_dirichlet_spectrum(sides, 6);
  REQUIRE(s.entries.size() == 4);
  CHECK(s.entries[0].value == doctest::Approx(2 * kPi * kPi));
  CHECK(s.entries[0].multiplicity == 1);
  CHECK(s.entries[1].value == doctest::Approx(5 * kPi * kPi));
  CHECK(s.entries[1].multiplicity == 2);
  CHECK(s.entries[2].value == doctest::Approx(8 * kPi * kPi));
  CHECK(s.entries[3].value == doctest::Approx(10 * kPi * kPi));
  CHECK(s.entries[3].multiplicity == 2);
  CHECK(s.total_multiplicity() == 6);
  CHECK(s.accumulation_points.empty());
}

TEST_CASE("box spectrum matches a brute-force enumeration") {
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{3.0, 3.0}, std::pair{1.0, 2.0}, std::pair{0.7, 1.3}}) {
    const std::array<double, 2> sides{a, b};
    const auto values = box_dirichlet_spectrum(sides, 60).expanded();
    const auto oracle = brute_force_box(a, b, 40);
    REQUIRE(values.size() == 60);
    for (std::size_t i = 0; i < values.size(); ++i) CHECK(values[i] == doctest::Approx(oracle[i]).epsilon(1e-13));
  }
}

TEST_CASE("box spectrum in one and three dimensions") {
  const std::array<double, 1> line{2.0};
  const auto v1 = box_dirichlet_spectrum(line, 4).expanded();
  for (int k = 1; k <= 4; ++k) CHECK(v1[k - 1] == doctest::Approx(kPi * kPi * k * k / 4.0));

  const std::array<double, 3> cube{1.0, 1.0, 1.0};
  const Spectrum s = box_dirichlet_spectrum(cube, 4);
  CHECK(s.entries[0].value == doctest::Approx(3 * kPi * kPi));
  CHECK(s.entries[1].value == doctest::Approx(6 * kPi * kPi));
  CHECK(s.entries[1].multiplicity == 3);
}

TEST_CASE("truncation is exact") {
  const std::array<double, 2> sides{1.0, 1.0};
  const Spectrum s = box_dirichlet_spectrum(sides, 20);
  for (std::size_t count = 0; count <= 20; ++count) CHECK(s.truncated(count).total_multiplicity() == count);
  CHECK(s.truncated(2).entries.back().multiplicity == 1);
}

TEST_CASE("from_entries merges equal values") {
  const Spectrum s = Spectrum::from_entries({{2.0, 1, SpectrumTag::Cot},
                                             {1.0, 1, SpectrumTag::Base},
                                             {2.0 * (1 + 1e-14), 2, SpectrumTag::Tan},
                                             {3.0, 1, SpectrumTag::Tan}});
  REQUIRE(s.entries.size() == 3);
  CHECK(s.entries[1].multiplicity == 3);
  CHECK(s.entries[1].tag == SpectrumTag::Both);
  CHECK(s.entries[2].tag == SpectrumTag::Tan);
}

TEST_CASE("tag strings round-trip") {
  for (auto tag : {SpectrumTag::Base, SpectrumTag::Tan, SpectrumTag::Cot, SpectrumTag::Both, SpectrumTag::Plus2V,
                   SpectrumTag::Scaled}) {
    CHECK(spectrum_tag_from_string(to_string(tag)) == tag);
  }
  CHECK_THROWS_AS(spectrum_tag_from_string("nope"), InvalidArgument);
}

TEST_CASE("finite-difference spectrum matches the closed form") {
  for (auto [a, b, h] : {std::array{1.0, 1.0, 1.0 / 16}, std::array{1.0, 2.0, 1.0 / 8}, std::array{3.0, 3.0, 0.25}}) {
    const std::array<double, 2> sides{a, b};
    const auto oracle = brute_force_fd(a, b, h);
    const auto values = fd_dirichlet_spectrum(sides, h, 40).expanded();
    for (std::size_t i = 0; i < values.size(); ++i) {
      CHECK(std::abs(values[i] - oracle[i]) <= 1e-10 * oracle[i]);
    }
  }
}

TEST_CASE("finite-difference ground value converges at second order") {
  const std::array<double, 2> sides{1.0, 1.0};
  double previous = 0.0;
  for (int n : {8, 16, 32, 64}) {
    const double err = std::abs(fd_dirichlet_spectrum(sides, 1.0 / n, 1).entries[0].value - 2 * kPi * kPi);
    if (previous > 0.0) CHECK(previous / err == doctest::Approx(4.0).epsilon(0.02));
    previous = err;
  }
}

TEST_CASE("finite-difference spectrum errors") {
  const std::array<double, 2> sides{1.0, 1.0};
  CHECK_THROWS_AS(fd_dirichlet_spectrum(sides, 0.25, 10), ResolutionTooCoarse);
  CHECK_THROWS_AS(fd_dirichlet_spectrum(sides, 0.3, 1), InvalidArgument);
}
