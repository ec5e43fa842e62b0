#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <array>
#include <cstddef>
#include <vector>

#include "tubehom/regime.hpp"

namespace tubehom::direct {

/// Two-dimensional finite-difference model of the two-sheet manifold.
struct ModelConfig {
  ScalingLaw law;
  double eps = 0.25;
  /// Grid refinement: h = eps / refinement.
  int refinement = 4;
  /// Tube chain segments; 0 selects max(4, ceil(q(eps)/h)).
  int tube_segments = 0;
  std::array<double, 2> side_lengths{1.0, 1.0};
};

enum class Part { Sheet1, Sheet2, Tube };

struct NodeLocation {
  Part part = Part::Sheet1;
  /// Grid coordinates (1-based interior indices) for sheet nodes.
  int i = 0;
  int j = 0;
  /// Tube id and chain position (1 .. segments-1) for tube nodes.
  int tube = 0;
  int position = 0;
};

/// Stiffness/mass pair of K u = lambda M u.
///
/// Row ordering: sheet 1 interior nodes, then sheet 2, then the interior
/// nodes of each tube chain. Within a sheet the node (i, j) sits at row
/// (j-1)*nx + (i-1); tube t position k sits at 2*nx*ny + t*(segments-1) + k-1.
/// Chain position 0 is the sheet-1 junction node, position `segments` the
/// sheet-2 junction node.
struct DiscreteModel {
  Eigen::SparseMatrix<double> stiffness;
  Eigen::VectorXd mass;

  double h = 0.0;
  double tube_length = 0.0;
  double tube_step = 0.0;
  double tube_weight = 0.0;
  int nx = 0;
  int ny = 0;
  int tube_segments = 0;
  /// Grid coordinates of each hole centre (shared by both sheets).
  std::vector<std::array<int, 2>> holes;

  Eigen::Index size() const { return stiffness.rows(); }
  Eigen::Index sheet_size() const { return static_cast<Eigen::Index>(nx) * ny; }
  Eigen::Index sheet_row(int sheet, int i, int j) const;
  /// Row of tube `tube` at chain position 0..segments (junctions map to sheet rows).
  Eigen::Index tube_row(int tube, int position) const;
  NodeLocation locate(Eigen::Index row) const;
  /// Row of the mirror node under the sheet swap reflection.
  Eigen::Index mirror_row(Eigen::Index row) const;
};

/// Number of tube chain segments actually used for `config`.
int resolved_tube_segments(const ModelConfig& config);

/// Throws GeometryError if eps does not divide the sides or d(eps) >= h.
DiscreteModel assemble(const ModelConfig& config);

}  // namespace tubehom::direct
