#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>

#include "tubehom/direct/model.hpp"
#include "tubehom/errors.hpp"

using namespace tubehom;
using namespace tubehom::direct;

namespace {

ScalingLaw law(double d0, Rational alpha, Rational beta, double q0 = 1.0) {
  ScalingLaw l;
  l.dimension = 2;
  l.radius = PowerLaw{d0, alpha};
  l.length = PowerLaw{q0, beta};
  return l;
}

ModelConfig pencil_config(double eps, int refinement = 4) {
  ModelConfig c;
  c.law = law(0.5, Rational(2), Rational(0));
  c.eps = eps;
  c.refinement = refinement;
  return c;
}

}  // namespace

TEST_CASE("lattice and dimension bookkeeping") {
  const DiscreteModel m = assemble(pencil_config(0.25));
  CHECK(m.holes.size() == 9);
  CHECK(m.nx == 15);
  CHECK(m.ny == 15);
  CHECK(m.h == 1.0 / 16);
  CHECK(m.tube_segments == 16);  // ceil(q/h)
  CHECK(m.size() == 2 * 15 * 15 + 9 * 15);
  CHECK(m.tube_weight == doctest::Approx(2 * M_PI * 0.5 / 16));

  ModelConfig rect = pencil_config(0.25);
  rect.side_lengths = {1.0, 0.5};
  const DiscreteModel r = assemble(rect);
  CHECK(r.holes.size() == 3);
  CHECK(r.ny == 7);

  ModelConfig fixed = pencil_config(0.25);
  fixed.tube_segments = 5;
  CHECK(resolved_tube_segments(fixed) == 5);
  CHECK(assemble(fixed).size() == 2 * 225 + 9 * 4);
}

TEST_CASE("short tubes use at least four segments") {
  ModelConfig c;
  c.law = law(0.5, Rational(3, 2), Rational(1));
  c.eps = 0.125;
  c.refinement = 2;
  CHECK(resolved_tube_segments(c) == 4);
}

TEST_CASE("matrix structure") {
  const DiscreteModel m = assemble(pencil_config(0.25));
  const Eigen::MatrixXd k(m.stiffness);
  CHECK((k - k.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((m.mass.array() > 0.0).all());

  // Constants are annihilated everywhere except next to the Dirichlet boundary.
  const Eigen::VectorXd row_sums = k * Eigen::VectorXd::Ones(m.size());
  for (Eigen::Index row = 0; row < m.size(); ++row) {
    const auto loc = m.locate(row);
    const bool boundary = loc.part != Part::Tube && (loc.i == 1 || loc.i == m.nx || loc.j == 1 || loc.j == m.ny);
    CAPTURE(row);
    if (boundary) {
      CHECK(row_sums[row] > 0.0);
    } else {
      CHECK(std::abs(row_sums[row]) < 1e-12);
    }
  }

  // Junction rows carry the extra half tube cell.
  const Eigen::Index junction = m.tube_row(0, 0);
  CHECK(m.mass[junction] == doctest::Approx(m.h * m.h + 0.5 * m.tube_weight * m.tube_step));
  CHECK(m.mass[m.tube_row(0, 1)] == doctest::Approx(m.tube_weight * m.tube_step));
  CHECK(Eigen::LLT<Eigen::MatrixXd>(k).info() == Eigen::Success);
}

TEST_CASE("index maps") {
  const DiscreteModel m = assemble(pencil_config(0.25, 2));
  for (Eigen::Index row = 0; row < m.size(); ++row) {
    const auto loc = m.locate(row);
    if (loc.part == Part::Tube) {
      CHECK(m.tube_row(loc.tube, loc.position) == row);
    } else {
      CHECK(m.sheet_row(loc.part == Part::Sheet1 ? 0 : 1, loc.i, loc.j) == row);
    }
    CHECK(m.mirror_row(m.mirror_row(row)) == row);
    CHECK(m.mass[m.mirror_row(row)] == m.mass[row]);
  }
  const auto& hole = m.holes[4];
  CHECK(hole[0] == 4);
  CHECK(hole[1] == 4);
  CHECK(m.tube_row(4, 0) == m.sheet_row(0, 4, 4));
  CHECK(m.tube_row(4, m.tube_segments) == m.sheet_row(1, 4, 4));
}

TEST_CASE("assembly is deterministic") {
  const DiscreteModel a = assemble(pencil_config(0.125));
  const DiscreteModel b = assemble(pencil_config(0.125));
  CHECK((a.mass.array() == b.mass.array()).all());
  CHECK(Eigen::MatrixXd(a.stiffness - b.stiffness).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("zero-weight tubes are omitted") {
  ModelConfig c = pencil_config(0.25);
  c.law = law(0.0, Rational(2), Rational(0));
  const DiscreteModel m = assemble(c);
  CHECK(m.holes.empty());
  CHECK(m.size() == 2 * m.sheet_size());
}

TEST_CASE("geometry errors") {
  ModelConfig c = pencil_config(0.3);
  CHECK_THROWS_AS(assemble(c), GeometryError);
  ModelConfig wide = pencil_config(0.25);
  wide.law = law(0.5, Rational(3, 2), Rational(1));  // d = h at eps = 1/4, K = 4
  CHECK_THROWS_AS(assemble(wide), GeometryError);
  wide.refinement = 2;
  CHECK_NOTHROW(assemble(wide));
  ModelConfig three = pencil_config(0.25);
  three.law.dimension = 3;
  CHECK_THROWS_AS(assemble(three), GeometryError);
}
