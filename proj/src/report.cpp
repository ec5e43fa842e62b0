#include "tubehom/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "tubehom/errors.hpp"

namespace tubehom {
namespace {

using nlohmann::json;

constexpr PhaseLabel kAllLabels[] = {
    PhaseLabel::A,         PhaseLabel::B,     PhaseLabel::C,         PhaseLabel::D,         PhaseLabel::E,
    PhaseLabel::F,         PhaseLabel::G,     PhaseLabel::SegmentBC, PhaseLabel::RayCD,     PhaseLabel::SegmentCE,
    PhaseLabel::RayEF,     PhaseLabel::SegmentEG, PhaseLabel::Sigma1, PhaseLabel::Sigma2, PhaseLabel::Inadmissible,
};

json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double read_number(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) {
    const auto text = j.get<std::string>();
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    throw InvalidArgument("unexpected string '" + text + "' where a number was expected");
  }
  return j.get<double>();
}

json numbers(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

std::vector<double> read_numbers(const json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(read_number(x));
  return out;
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, result.ptr);
}

std::string csv_text(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ErrorKind error_kind_from_string(const std::string& text) {
  for (int k = 0; k <= static_cast<int>(ErrorKind::IoError); ++k) {
    if (to_string(static_cast<ErrorKind>(k)) == text) return static_cast<ErrorKind>(k);
  }
  throw InvalidArgument("unknown error kind '" + text + "'");
}

json header(std::string_view kind) {
  return json{{"schema_version", kSchemaVersion}, {"kind", kind}};
}

void expect_kind(const json& j, std::string_view kind) {
  if (!j.contains("schema_version") || j.at("schema_version").get<int>() != kSchemaVersion) {
    throw InvalidArgument("unsupported report schema version");
  }
  if (j.at("kind").get<std::string>() != kind) {
    throw InvalidArgument("expected a '" + std::string(kind) + "' report");
  }
}

json limits_json(const RegimeLimits& l) {
  return json{{"p", number(l.p.value())},
              {"q", number(l.q.value())},
              {"r", number(l.r.value())},
              {"D", number(l.D.value())},
              {"Q", l.Q ? number(l.Q->value()) : json(nullptr)}};
}

RegimeLimits limits_from(const json& j) {
  RegimeLimits l;
  l.p = Extended(read_number(j.at("p")));
  l.q = Extended(read_number(j.at("q")));
  l.r = Extended(read_number(j.at("r")));
  l.D = Extended(read_number(j.at("D")));
  if (!j.at("Q").is_null()) l.Q = Extended(read_number(j.at("Q")));
  return l;
}

std::string classification_csv(const Classification& c) {
  std::ostringstream out;
  out << "key,value\n";
  out << "regime," << regime_name(c.problem) << "\n";
  out << "dimension," << c.dimension << "\n";
  out << "phase," << (c.phase ? std::string(to_string(*c.phase)) : "") << "\n";
  const json j = to_json(c);
  for (const char* key : {"p", "q", "omega", "c", "V"}) {
    if (j.contains(key)) out << key << "," << csv_number(read_number(j.at(key))) << "\n";
  }
  const auto& l = c.limits;
  out << "limit_p," << csv_number(l.p.value()) << "\n";
  out << "limit_q," << csv_number(l.q.value()) << "\n";
  out << "limit_r," << csv_number(l.r.value()) << "\n";
  out << "limit_D," << csv_number(l.D.value()) << "\n";
  out << "limit_Q," << (l.Q ? csv_number(l.Q->value()) : "") << "\n";
  return out.str();
}

std::string spectrum_csv(const Spectrum& s) {
  std::ostringstream out;
  out << "value,multiplicity,tag\n";
  for (const auto& e : s.entries) out << csv_number(e.value) << "," << e.multiplicity << "," << to_string(e.tag) << "\n";
  for (double a : s.accumulation_points) out << csv_number(a) << ",0,accumulation\n";
  return out.str();
}

std::string pencil_csv(const PencilSpectrum& s) {
  std::ostringstream out;
  out << "n,value,multiplicity,branch,sources,pole_flag\n";
  for (const auto& interval : s.intervals) {
    for (const auto& root : interval.roots) {
      std::string sources;
      for (std::size_t k = 0; k < root.sources.size(); ++k) {
        if (k > 0) sources += ";";
        sources += std::to_string(root.sources[k]);
      }
      out << interval.n << "," << csv_number(root.value) << "," << root.multiplicity << "," << to_string(root.branch)
          << "," << sources << "," << (root.pole_flag ? "true" : "false") << "\n";
    }
  }
  return out.str();
}

std::string convergence_csv(const direct::ConvergenceReport& r) {
  std::ostringstream out;
  out << "eps,index,computed,predicted,kind,relative_error,window_count,ground_symmetry,dimension,error\n";
  for (const auto& row : r.rows) {
    const std::string window = row.window_count ? std::to_string(*row.window_count) : "";
    if (!row.ok()) {
      out << csv_number(row.eps) << ",,,,,," << window << ",," << row.dimension << "," << csv_text(*row.error)
          << "\n";
      continue;
    }
    for (std::size_t k = 0; k < row.computed.size(); ++k) {
      out << csv_number(row.eps) << "," << (k + 1) << "," << csv_number(row.computed[k]) << ","
          << csv_number(row.predicted[k]) << "," << csv_text(to_string(row.predicted_kind[k])) << ","
          << csv_number(row.relative_errors[k]) << "," << window << "," << csv_number(row.ground_symmetry) << ","
          << row.dimension << ",\n";
    }
  }
  return out.str();
}

}  // namespace

Classification classify_law(const ScalingLaw& law) {
  Classification c;
  c.dimension = law.dimension;
  c.limits = limits_from_law(law);
  c.problem = classify(c.limits, law.dimension, sphere_volume(law.dimension));
  if (law.dimension > 2 && !law.has_exponential_radius()) c.phase = phase_point(law);
  return c;
}

Format format_from_string(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  throw InvalidArgument("format must be json or csv, got '" + std::string(text) + "'");
}

json to_json(const Classification& c) {
  json j = header("classification");
  j["dimension"] = c.dimension;
  j["regime"] = regime_name(c.problem);
  j["limits"] = limits_json(c.limits);
  j["phase"] = c.phase ? json(to_string(*c.phase)) : json(nullptr);
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PencilProblem>) {
          j["p"] = number(p.p);
          j["q"] = number(p.q);
          j["omega"] = number(p.omega);
        } else if constexpr (std::is_same_v<T, DecoupledThresholdProblem>) {
          j["q"] = number(p.q);
        } else if constexpr (std::is_same_v<T, ScaledLaplacianProblem>) {
          j["p"] = number(p.p);
          j["omega"] = number(p.omega);
          j["c"] = number(p.c);
        } else {
          j["V"] = number(p.V);
        }
      },
      c.problem);
  return j;
}

Classification classification_from_json(const json& j) {
  expect_kind(j, "classification");
  Classification c;
  c.dimension = j.at("dimension").get<int>();
  c.limits = limits_from(j.at("limits"));
  if (!j.at("phase").is_null()) {
    const auto text = j.at("phase").get<std::string>();
    bool found = false;
    for (PhaseLabel label : kAllLabels) {
      if (to_string(label) == text) {
        c.phase = label;
        found = true;
      }
    }
    if (!found) throw InvalidArgument("unknown phase label '" + text + "'");
  }
  const auto regime = j.at("regime").get<std::string>();
  if (regime == "pencil") {
    c.problem = PencilProblem{read_number(j.at("p")), read_number(j.at("q")), read_number(j.at("omega"))};
  } else if (regime == "decoupled_threshold") {
    c.problem = DecoupledThresholdProblem{read_number(j.at("q"))};
  } else if (regime == "scaled_laplacian") {
    c.problem = ScaledLaplacianProblem{read_number(j.at("p")), read_number(j.at("omega")), read_number(j.at("c"))};
  } else if (regime == "coupled") {
    c.problem = CoupledProblem{read_number(j.at("V"))};
  } else {
    throw InvalidArgument("unknown regime '" + regime + "'");
  }
  return c;
}

json to_json(const Spectrum& s) {
  json j = header("spectrum");
  json entries = json::array();
  for (const auto& e : s.entries) {
    entries.push_back({{"value", number(e.value)}, {"multiplicity", e.multiplicity}, {"tag", to_string(e.tag)}});
  }
  j["entries"] = std::move(entries);
  j["accumulation_points"] = numbers(s.accumulation_points);
  return j;
}

Spectrum spectrum_from_json(const json& j) {
  expect_kind(j, "spectrum");
  Spectrum s;
  for (const auto& e : j.at("entries")) {
    s.entries.push_back({read_number(e.at("value")), e.at("multiplicity").get<int>(),
                         spectrum_tag_from_string(e.at("tag").get<std::string>())});
  }
  s.accumulation_points = read_numbers(j.at("accumulation_points"));
  return s;
}

json to_json(const PencilSpectrum& s) {
  json j = header("pencil");
  json intervals = json::array();
  for (const auto& interval : s.intervals) {
    json roots = json::array();
    for (const auto& root : interval.roots) {
      roots.push_back({{"value", number(root.value)},
                       {"multiplicity", root.multiplicity},
                       {"branch", to_string(root.branch)},
                       {"sources", root.sources},
                       {"pole_flag", root.pole_flag}});
    }
    intervals.push_back({{"n", interval.n},
                         {"lower", number(interval.bounds.lower)},
                         {"upper", number(interval.bounds.upper)},
                         {"complete_below", number(interval.complete_below)},
                         {"roots", std::move(roots)}});
  }
  j["intervals"] = std::move(intervals);
  j["accumulation_points"] = numbers(s.accumulation_points);
  return j;
}

PencilSpectrum pencil_spectrum_from_json(const json& j) {
  expect_kind(j, "pencil");
  PencilSpectrum s;
  for (const auto& ji : j.at("intervals")) {
    PencilInterval interval;
    interval.n = ji.at("n").get<int>();
    interval.bounds = {read_number(ji.at("lower")), read_number(ji.at("upper"))};
    interval.complete_below = read_number(ji.at("complete_below"));
    for (const auto& jr : ji.at("roots")) {
      PencilRoot root;
      root.value = read_number(jr.at("value"));
      root.multiplicity = jr.at("multiplicity").get<int>();
      root.branch = spectrum_tag_from_string(jr.at("branch").get<std::string>());
      root.sources = jr.at("sources").get<std::vector<std::size_t>>();
      root.pole_flag = jr.at("pole_flag").get<bool>();
      interval.roots.push_back(std::move(root));
    }
    s.intervals.push_back(std::move(interval));
  }
  s.accumulation_points = read_numbers(j.at("accumulation_points"));
  return s;
}

json to_json(const direct::ConvergenceReport& r) {
  json j = header("convergence");
  j["regime"] = r.regime;
  j["m"] = r.m;
  j["threshold"] = number(r.threshold);
  j["refinement"] = r.refinement;
  j["seconds"] = number(r.seconds);
  j["verdict"] = {{"theorem", r.verdict.theorem},
                  {"monotone", r.verdict.monotone},
                  {"final_error", number(r.verdict.final_error)},
                  {"below_threshold", r.verdict.below_threshold},
                  {"pass", r.verdict.pass}};
  json rows = json::array();
  for (const auto& row : r.rows) {
    json kinds = json::array();
    for (LimitKind kind : row.predicted_kind) kinds.push_back(to_string(kind));
    rows.push_back({{"eps", number(row.eps)},
                    {"dimension", row.dimension},
                    {"computed", numbers(row.computed)},
                    {"predicted", numbers(row.predicted)},
                    {"predicted_kind", std::move(kinds)},
                    {"relative_errors", numbers(row.relative_errors)},
                    {"window_count", row.window_count ? json(*row.window_count) : json(nullptr)},
                    {"ground_symmetry", number(row.ground_symmetry)},
                    {"seconds", number(row.seconds)},
                    {"error", row.error ? json(*row.error) : json(nullptr)},
                    {"error_kind", row.error_kind ? json(to_string(*row.error_kind)) : json(nullptr)}});
  }
  j["rows"] = std::move(rows);
  return j;
}

direct::ConvergenceReport convergence_report_from_json(const json& j) {
  expect_kind(j, "convergence");
  direct::ConvergenceReport r;
  r.regime = j.at("regime").get<std::string>();
  r.m = j.at("m").get<std::size_t>();
  r.threshold = read_number(j.at("threshold"));
  r.refinement = j.at("refinement").get<int>();
  r.seconds = read_number(j.at("seconds"));
  const auto& v = j.at("verdict");
  r.verdict.theorem = v.at("theorem").get<std::string>();
  r.verdict.monotone = v.at("monotone").get<bool>();
  r.verdict.final_error = read_number(v.at("final_error"));
  r.verdict.below_threshold = v.at("below_threshold").get<bool>();
  r.verdict.pass = v.at("pass").get<bool>();
  for (const auto& jr : j.at("rows")) {
    direct::StudyRow row;
    row.eps = read_number(jr.at("eps"));
    row.dimension = jr.at("dimension").get<Eigen::Index>();
    row.computed = read_numbers(jr.at("computed"));
    row.predicted = read_numbers(jr.at("predicted"));
    for (const auto& kind : jr.at("predicted_kind")) {
      row.predicted_kind.push_back(kind.get<std::string>() == "threshold" ? LimitKind::Threshold
                                                                          : LimitKind::DiscreteEigenvalue);
    }
    row.relative_errors = read_numbers(jr.at("relative_errors"));
    if (!jr.at("window_count").is_null()) row.window_count = jr.at("window_count").get<Eigen::Index>();
    row.ground_symmetry = read_number(jr.at("ground_symmetry"));
    row.seconds = read_number(jr.at("seconds"));
    if (!jr.at("error").is_null()) row.error = jr.at("error").get<std::string>();
    if (!jr.at("error_kind").is_null()) row.error_kind = error_kind_from_string(jr.at("error_kind").get<std::string>());
    r.rows.push_back(std::move(row));
  }
  return r;
}

std::string export_report(const Report& report, Format format) {
  if (format == Format::Json) {
    return std::visit([](const auto& r) { return to_json(r).dump(2) + "\n"; }, report);
  }
  return std::visit(
      [](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Classification>) {
          return classification_csv(r);
        } else if constexpr (std::is_same_v<T, Spectrum>) {
          return spectrum_csv(r);
        } else if constexpr (std::is_same_v<T, PencilSpectrum>) {
          return pencil_csv(r);
        } else {
          return convergence_csv(r);
        }
      },
      report);
}

std::string eigenvector_csv(const direct::DiscreteModel& model, double eps, const std::vector<Eigen::VectorXd>& vectors) {
  std::ostringstream out;
  out << "eps,vector,row,part,i,j,tube,position,value\n";
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    const auto& v = vectors[k];
    if (v.size() != model.size()) throw InvalidArgument("eigenvector dimension does not match the model");
    for (Eigen::Index row = 0; row < v.size(); ++row) {
      const auto loc = model.locate(row);
      out << csv_number(eps) << "," << (k + 1) << "," << row << ",";
      switch (loc.part) {
        case direct::Part::Sheet1: out << "sheet1," << loc.i << "," << loc.j << ",,"; break;
        case direct::Part::Sheet2: out << "sheet2," << loc.i << "," << loc.j << ",,"; break;
        case direct::Part::Tube: out << "tube,,," << loc.tube << "," << loc.position; break;
      }
      out << "," << csv_number(v[row]) << "\n";
    }
  }
  return out.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace tubehom
