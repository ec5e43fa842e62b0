#include "tubehom/direct/model.hpp"

#include <cmath>
#include <string>

#include "tubehom/errors.hpp"
#include "tubehom/spectrum.hpp"

namespace tubehom::direct {
namespace {

int exact_ratio(double numerator, double denominator, const char* what) {
  const double ratio = numerator / denominator;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio) {
    throw GeometryError(std::string(what) + " does not divide side length " + std::to_string(numerator));
  }
  return static_cast<int>(rounded);
}

}  // namespace

Eigen::Index DiscreteModel::sheet_row(int sheet, int i, int j) const {
  return static_cast<Eigen::Index>(sheet) * sheet_size() + static_cast<Eigen::Index>(j - 1) * nx + (i - 1);
}

Eigen::Index DiscreteModel::tube_row(int tube, int position) const {
  const auto& hole = holes[static_cast<std::size_t>(tube)];
  if (position == 0) return sheet_row(0, hole[0], hole[1]);
  if (position == tube_segments) return sheet_row(1, hole[0], hole[1]);
  return 2 * sheet_size() + static_cast<Eigen::Index>(tube) * (tube_segments - 1) + (position - 1);
}

NodeLocation DiscreteModel::locate(Eigen::Index row) const {
  NodeLocation loc;
  if (row < 2 * sheet_size()) {
    loc.part = row < sheet_size() ? Part::Sheet1 : Part::Sheet2;
    const Eigen::Index local = row % sheet_size();
    loc.i = static_cast<int>(local % nx) + 1;
    loc.j = static_cast<int>(local / nx) + 1;
    return loc;
  }
  const Eigen::Index local = row - 2 * sheet_size();
  loc.part = Part::Tube;
  loc.tube = static_cast<int>(local / (tube_segments - 1));
  loc.position = static_cast<int>(local % (tube_segments - 1)) + 1;
  return loc;
}

Eigen::Index DiscreteModel::mirror_row(Eigen::Index row) const {
  const NodeLocation loc = locate(row);
  switch (loc.part) {
    case Part::Sheet1: return row + sheet_size();
    case Part::Sheet2: return row - sheet_size();
    case Part::Tube: return tube_row(loc.tube, tube_segments - loc.position);
  }
  return row;
}

int resolved_tube_segments(const ModelConfig& config) {
  if (config.tube_segments > 0) return config.tube_segments;
  const double h = config.eps / config.refinement;
  const double q = config.law.length_at(config.eps);
  return std::max(4, static_cast<int>(std::ceil(q / h - 1e-9)));
}

DiscreteModel assemble(const ModelConfig& config) {
  if (config.law.dimension != 2) throw GeometryError("the direct model is two-dimensional");
  if (!(config.eps > 0.0)) throw GeometryError("eps must be positive");
  if (config.refinement < 1) throw GeometryError("grid refinement must be >= 1");

  DiscreteModel model;
  model.h = config.eps / config.refinement;
  const int cells_x = exact_ratio(config.side_lengths[0], config.eps, "eps") * config.refinement;
  const int cells_y = exact_ratio(config.side_lengths[1], config.eps, "eps") * config.refinement;
  model.nx = cells_x - 1;
  model.ny = cells_y - 1;
  if (model.nx < 1 || model.ny < 1) throw GeometryError("grid has no interior nodes");

  const double d = config.law.radius_at(config.eps);
  if (!(d < model.h)) {
    throw GeometryError("hole radius d=" + std::to_string(d) + " is not below the grid spacing h=" +
                        std::to_string(model.h));
  }
  model.tube_length = config.law.length_at(config.eps);
  model.tube_segments = resolved_tube_segments(config);
  if (model.tube_segments < 2) throw GeometryError("a tube needs at least two segments");
  model.tube_step = model.tube_length / model.tube_segments;
  model.tube_weight = sphere_volume(2) * d;  // omega * d^(N-1), N = 2

  // Hole centres i*eps with dist(x_i, boundary) >= eps/2, i.e. interior lattice
  // points. A zero-weight tube carries neither energy nor mass, so none are built.
  const int lattice_x = cells_x / config.refinement;
  const int lattice_y = cells_y / config.refinement;
  for (int b = 1; b < lattice_y && model.tube_weight > 0.0; ++b) {
    for (int a = 1; a < lattice_x; ++a) model.holes.push_back({a * config.refinement, b * config.refinement});
  }

  const Eigen::Index tubes = static_cast<Eigen::Index>(model.holes.size());
  const Eigen::Index dim = 2 * model.sheet_size() + tubes * (model.tube_segments - 1);
  model.mass = Eigen::VectorXd::Zero(dim);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(10 * model.sheet_size() + 4 * tubes * model.tube_segments));
  auto add_edge = [&](Eigen::Index a, Eigen::Index b, double weight) {
    triplets.emplace_back(a, a, weight);
    triplets.emplace_back(b, b, weight);
    triplets.emplace_back(a, b, -weight);
    triplets.emplace_back(b, a, -weight);
  };

  // Sheets: sum over grid edges of (u_a - u_b)^2; edges to the Dirichlet boundary keep only u_a^2.
  const double h2 = model.h * model.h;
  for (int sheet = 0; sheet < 2; ++sheet) {
    for (int j = 1; j <= model.ny; ++j) {
      for (int i = 1; i <= model.nx; ++i) {
        const Eigen::Index row = model.sheet_row(sheet, i, j);
        model.mass[row] = h2;
        if (i < model.nx) {
          add_edge(row, model.sheet_row(sheet, i + 1, j), 1.0);
        }
        if (j < model.ny) {
          add_edge(row, model.sheet_row(sheet, i, j + 1), 1.0);
        }
        const int boundary_edges = (i == 1) + (i == model.nx) + (j == 1) + (j == model.ny);
        if (boundary_edges > 0) triplets.emplace_back(row, row, static_cast<double>(boundary_edges));
      }
    }
  }

  // Tubes: w * sum_k (v_{k+1} - v_k)^2 / h_t with lumped mass w * h_t.
  const double w = model.tube_weight;
  const double edge = w / model.tube_step;
  for (int t = 0; t < static_cast<int>(tubes); ++t) {
    for (int k = 0; k < model.tube_segments; ++k) {
      const Eigen::Index a = model.tube_row(t, k);
      const Eigen::Index b = model.tube_row(t, k + 1);
      add_edge(a, b, edge);
    }
    for (int k = 1; k < model.tube_segments; ++k) model.mass[model.tube_row(t, k)] = w * model.tube_step;
    model.mass[model.tube_row(t, 0)] += 0.5 * w * model.tube_step;
    model.mass[model.tube_row(t, model.tube_segments)] += 0.5 * w * model.tube_step;
  }

  model.stiffness.resize(dim, dim);
  model.stiffness.setFromTriplets(triplets.begin(), triplets.end());
  model.stiffness.makeCompressed();
  return model;
}

}  // namespace tubehom::direct
