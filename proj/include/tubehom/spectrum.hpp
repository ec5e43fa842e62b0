#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace tubehom {

enum class SpectrumTag { Base, Tan, Cot, Both, Plus2V, Scaled };

std::string_view to_string(SpectrumTag tag);
SpectrumTag spectrum_tag_from_string(std::string_view text);

struct SpectrumEntry {
  double value = 0.0;
  int multiplicity = 1;
  SpectrumTag tag = SpectrumTag::Base;

  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

/// Sorted eigenvalues with multiplicities, plus accumulation points that are
/// never listed as entries.
struct Spectrum {
  std::vector<SpectrumEntry> entries;
  std::vector<double> accumulation_points;

  /// Sorts the values and merges those equal to within `relative_tolerance`.
  /// Merging a Tan entry with a Cot entry yields Both; other mixtures keep the
  /// tag of the smaller value.
  static Spectrum from_entries(std::vector<SpectrumEntry> raw, double relative_tolerance = 1e-12);

  std::size_t total_multiplicity() const;
  /// Values repeated according to multiplicity.
  std::vector<double> expanded() const;
  /// Keeps exactly the first `count` values counted with multiplicity.
  Spectrum truncated(std::size_t count) const;
  bool empty() const { return entries.empty(); }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

/// Measure of the unit sphere S^{N-1}: 2 pi^{N/2} / Gamma(N/2).
double sphere_volume(int dimension);

/// First `count` Dirichlet eigenvalues of -Laplace on the box with the given
/// side lengths: pi^2 * sum_j k_j^2 / a_j^2, k_j >= 1.
Spectrum box_dirichlet_spectrum(std::span<const double> side_lengths, std::size_t count);

/// First `count` eigenvalues of the (2N+1)-point finite-difference Dirichlet
/// Laplacian with spacing h. The 1-D operators are diagonalised numerically and
/// combined as a Kronecker sum. Throws ResolutionTooCoarse when `count` exceeds
/// the number of interior nodes.
Spectrum fd_dirichlet_spectrum(std::span<const double> side_lengths, double h, std::size_t count);

}  // namespace tubehom
