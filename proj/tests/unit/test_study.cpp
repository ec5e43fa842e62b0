#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "tubehom/direct/study.hpp"
#include "tubehom/errors.hpp"

using namespace tubehom;
using namespace tubehom::direct;

namespace {

ScalingLaw law(double d0, Rational alpha, Rational beta) {
  ScalingLaw l;
  l.dimension = 2;
  l.radius = PowerLaw{d0, alpha};
  l.length = PowerLaw{1.0, beta};
  return l;
}

}  // namespace

TEST_CASE("pencil study on coarse grids") {
  StudyOptions options;
  options.refinement = 2;
  const auto report = convergence_study(law(0.5, Rational(2), Rational(0)), {0.5, 0.25, 0.125}, 2, options);
  CHECK(report.regime == "pencil");
  CHECK(report.verdict.theorem == "theorem_8");
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].eps == 0.5);
  CHECK(report.rows[2].eps == 0.125);
  for (const auto& row : report.rows) {
    REQUIRE(row.ok());
    CHECK(row.computed.size() == 2);
    CHECK(row.predicted[0] == report.rows[0].predicted[0]);
    CHECK(row.relative_errors[0] == doctest::Approx(std::abs(row.computed[0] - row.predicted[0]) / row.predicted[0]));
    CHECK(row.window_count.has_value());
    CHECK(row.ground_symmetry > 0.99);
    CHECK(row.vectors.empty());
  }
  CHECK(report.verdict.monotone);
  CHECK(report.verdict.final_error == report.rows.back().relative_errors[0]);
  CHECK(report.verdict.pass == (report.verdict.monotone && report.verdict.final_error < 0.1));
}

TEST_CASE("scaled-Laplacian study has no window") {
  StudyOptions options;
  options.refinement = 2;
  options.keep_vectors = true;
  const auto report = convergence_study(law(0.5, Rational(3, 2), Rational(1)), {0.25, 0.125}, 1, options);
  CHECK(report.verdict.theorem == "theorem_6");
  CHECK(report.rows[0].predicted[0] == doctest::Approx(2 * std::numbers::pi * std::numbers::pi));
  CHECK_FALSE(report.rows[0].window_count.has_value());
  CHECK(report.rows[0].vectors.size() == 1);
  CHECK(report.rows[0].vectors[0].size() == report.rows[0].dimension);
}

TEST_CASE("decoupled study on the unit square sits entirely at the threshold") {
  StudyOptions options;
  options.refinement = 2;
  const auto report = convergence_study(law(0.5, Rational(3), Rational(0)), {0.25}, 3, options);
  CHECK(report.regime == "decoupled_threshold");
  CHECK(report.verdict.theorem == "theorem_10");
  const auto& p = report.rows[0].predicted;
  // 2 pi^2 > pi^2 / q^2, so no limit eigenvalue lies below the threshold.
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(p[k] == doctest::Approx(std::numbers::pi * std::numbers::pi));
    CHECK(report.rows[0].predicted_kind[k] == LimitKind::Threshold);
  }
}

TEST_CASE("failed rows are recorded without stopping the others") {
  StudyOptions options;
  options.refinement = 4;
  // d(1/4) = h at K = 4 fails; the finer eps still runs.
  const auto report = convergence_study(law(0.5, Rational(3, 2), Rational(1)), {0.25, 0.125}, 1, options);
  REQUIRE(report.rows.size() == 2);
  CHECK_FALSE(report.rows[0].ok());
  CHECK(report.rows[0].error_kind == ErrorKind::GeometryError);
  CHECK(report.rows[1].ok());
  CHECK_FALSE(report.verdict.pass);
  CHECK(std::isinf(report.verdict.final_error));
}

TEST_CASE("invalid study requests") {
  const ScalingLaw good = law(0.5, Rational(2), Rational(0));
  CHECK_THROWS_AS(convergence_study(good, {0.125, 0.25}, 1), InvalidArgument);
  CHECK_THROWS_AS(convergence_study(good, {}, 1), InvalidArgument);
  CHECK_THROWS_AS(convergence_study(good, {0.25}, 0), InvalidArgument);
  CHECK_THROWS_AS(convergence_study(law(0.5, Rational(1, 2), Rational(0)), {0.25}, 1), InadmissibleLaw);
  ScalingLaw three = good;
  three.dimension = 3;
  CHECK_THROWS_AS(convergence_study(three, {0.25}, 1), InvalidArgument);
}
