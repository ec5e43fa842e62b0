#include "tubehom/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>
#include <string>

#include "tubehom/errors.hpp"

namespace tubehom {
namespace {

constexpr double kCoincidence = 1e-12;

// Smallest `count` sums sum_j axes[j][k_j], one index per axis, as a min-heap
// walk over the index lattice. Each axis list must be sorted ascending.
std::vector<double> smallest_kronecker_sums(const std::vector<std::vector<double>>& axes, std::size_t count) {
  using Index = std::vector<std::size_t>;
  std::vector<double> out;
  if (count == 0) return out;
  out.reserve(count);

  auto value_of = [&](const Index& idx) {
    double v = 0.0;
    for (std::size_t j = 0; j < axes.size(); ++j) v += axes[j][idx[j]];
    return v;
  };
  using Item = std::pair<double, Index>;
  auto cmp = [](const Item& a, const Item& b) { return a.first > b.first || (a.first == b.first && a.second > b.second); };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
  std::set<Index> seen;

  Index start(axes.size(), 0);
  heap.emplace(value_of(start), start);
  seen.insert(start);
  while (!heap.empty() && out.size() < count) {
    auto [value, idx] = heap.top();
    heap.pop();
    out.push_back(value);
    for (std::size_t j = 0; j < axes.size(); ++j) {
      if (idx[j] + 1 >= axes[j].size()) continue;
      Index next = idx;
      ++next[j];
      if (seen.insert(next).second) heap.emplace(value_of(next), next);
    }
  }
  return out;
}

Spectrum from_values(const std::vector<double>& values) {
  std::vector<SpectrumEntry> raw;
  raw.reserve(values.size());
  for (double v : values) raw.push_back({v, 1, SpectrumTag::Base});
  return Spectrum::from_entries(std::move(raw), kCoincidence);
}

void require_sides(std::span<const double> sides) {
  if (sides.empty()) throw InvalidArgument("side_lengths must be nonempty");
  for (double a : sides) {
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("side lengths must be positive");
  }
}

}  // namespace

std::string_view to_string(SpectrumTag tag) {
  switch (tag) {
    case SpectrumTag::Base: return "base";
    case SpectrumTag::Tan: return "tan";
    case SpectrumTag::Cot: return "cot";
    case SpectrumTag::Both: return "both";
    case SpectrumTag::Plus2V: return "plus2V";
    case SpectrumTag::Scaled: return "scaled";
  }
  return "base";
}

SpectrumTag spectrum_tag_from_string(std::string_view text) {
  for (auto tag : {SpectrumTag::Base, SpectrumTag::Tan, SpectrumTag::Cot, SpectrumTag::Both, SpectrumTag::Plus2V,
                   SpectrumTag::Scaled}) {
    if (to_string(tag) == text) return tag;
  }
  throw InvalidArgument("unknown spectrum tag '" + std::string(text) + "'");
}

Spectrum Spectrum::from_entries(std::vector<SpectrumEntry> raw, double relative_tolerance) {
  std::stable_sort(raw.begin(), raw.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });
  Spectrum s;
  for (const auto& e : raw) {
    if (!s.entries.empty()) {
      auto& last = s.entries.back();
      if (std::abs(e.value - last.value) <= relative_tolerance * std::max(std::abs(e.value), std::abs(last.value))) {
        last.multiplicity += e.multiplicity;
        if ((last.tag == SpectrumTag::Tan && e.tag == SpectrumTag::Cot) ||
            (last.tag == SpectrumTag::Cot && e.tag == SpectrumTag::Tan) || e.tag == SpectrumTag::Both) {
          last.tag = SpectrumTag::Both;
        }
        continue;
      }
    }
    s.entries.push_back(e);
  }
  return s;
}

std::size_t Spectrum::total_multiplicity() const {
  std::size_t total = 0;
  for (const auto& e : entries) total += static_cast<std::size_t>(e.multiplicity);
  return total;
}

std::vector<double> Spectrum::expanded() const {
  std::vector<double> out;
  out.reserve(total_multiplicity());
  for (const auto& e : entries) out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), e.value);
  return out;
}

Spectrum Spectrum::truncated(std::size_t count) const {
  Spectrum out;
  out.accumulation_points = accumulation_points;
  std::size_t taken = 0;
  for (const auto& e : entries) {
    if (taken >= count) break;
    SpectrumEntry copy = e;
    copy.multiplicity = static_cast<int>(std::min<std::size_t>(e.multiplicity, count - taken));
    taken += static_cast<std::size_t>(copy.multiplicity);
    out.entries.push_back(copy);
  }
  return out;
}

double sphere_volume(int dimension) {
  if (dimension < 2) throw InvalidArgument("sphere_volume needs N >= 2");
  const double half = 0.5 * dimension;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

Spectrum box_dirichlet_spectrum(std::span<const double> side_lengths, std::size_t count) {
  require_sides(side_lengths);
  if (count == 0) return {};
  // Any index beyond `count` on one axis cannot appear among the first `count` sums.
  std::vector<std::vector<double>> axes;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  for (double a : side_lengths) {
    std::vector<double> axis(count);
    for (std::size_t k = 0; k < count; ++k) {
      const double kk = static_cast<double>(k + 1);
      axis[k] = pi2 * kk * kk / (a * a);
    }
    axes.push_back(std::move(axis));
  }
  return from_values(smallest_kronecker_sums(axes, count));
}

Spectrum fd_dirichlet_spectrum(std::span<const double> side_lengths, double h, std::size_t count) {
  require_sides(side_lengths);
  if (!(h > 0.0)) throw InvalidArgument("grid spacing h must be positive");

  std::vector<std::vector<double>> axes;
  std::size_t interior_total = 1;
  for (double a : side_lengths) {
    const double cells = a / h;
    const double rounded = std::round(cells);
    if (rounded < 1.0 || std::abs(cells - rounded) > 1e-9 * cells) {
      throw InvalidArgument("h does not divide side length " + std::to_string(a));
    }
    const auto nodes = static_cast<std::size_t>(rounded) - 1;
    interior_total *= nodes;
    if (nodes == 0) {
      axes.emplace_back();
      continue;
    }
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(nodes), 2.0 / (h * h));
    Eigen::VectorXd sub = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(nodes) - 1, -1.0 / (h * h));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    axes.emplace_back(ev.data(), ev.data() + ev.size());
  }
  if (count > interior_total) {
    throw ResolutionTooCoarse("requested " + std::to_string(count) + " eigenvalues but the grid has only " +
                              std::to_string(interior_total) + " interior nodes");
  }
  return from_values(smallest_kronecker_sums(axes, count));
}

}  // namespace tubehom
