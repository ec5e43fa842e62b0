#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "tubehom/direct/model.hpp"
#include "tubehom/direct/study.hpp"
#include "tubehom/pencil.hpp"
#include "tubehom/regime.hpp"
#include "tubehom/spectrum.hpp"

namespace tubehom {

inline constexpr int kSchemaVersion = 1;

/// Outcome of the classify command.
struct Classification {
  int dimension = 2;
  RegimeLimits limits;
  HomogenizedProblem problem;
  /// Only for power-law radii with N > 2.
  std::optional<PhaseLabel> phase;

  friend bool operator==(const Classification&, const Classification&) = default;
};

Classification classify_law(const ScalingLaw& law);

using Report = std::variant<Classification, Spectrum, PencilSpectrum, direct::ConvergenceReport>;

enum class Format { Json, Csv };

Format format_from_string(std::string_view text);

nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const Spectrum& s);
nlohmann::json to_json(const PencilSpectrum& s);
nlohmann::json to_json(const direct::ConvergenceReport& r);

Classification classification_from_json(const nlohmann::json& j);
Spectrum spectrum_from_json(const nlohmann::json& j);
PencilSpectrum pencil_spectrum_from_json(const nlohmann::json& j);
direct::ConvergenceReport convergence_report_from_json(const nlohmann::json& j);

/// Deterministic bytes: sorted keys, shortest round-trip floats, inf as "inf".
///
/// CSV layouts (header row first):
///   classification  key,value
///   spectrum        value,multiplicity,tag (accumulation points: multiplicity 0, tag "accumulation")
///   pencil          n,value,multiplicity,branch,sources,pole_flag (sources joined by ';')
///   convergence     eps,index,computed,predicted,kind,relative_error,window_count,ground_symmetry,dimension,error
std::string export_report(const Report& report, Format format);

/// Per-node eigenvector dump for plotting:
///   eps,vector,row,part,i,j,tube,position,value
/// with part in {sheet1, sheet2, tube}; i, j are 1-based grid indices on the
/// sheets and tube, position identify a chain node.
std::string eigenvector_csv(const direct::DiscreteModel& model, double eps, const std::vector<Eigen::VectorXd>& vectors);

/// Throws IoError when the file cannot be written.
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace tubehom
