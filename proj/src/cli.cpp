#include "tubehom/cli.hpp"

#include <CLI11.hpp>
#include <ostream>
#include <sstream>

#include "tubehom/direct/model.hpp"
#include "tubehom/direct/study.hpp"
#include "tubehom/errors.hpp"
#include "tubehom/limit_spectrum.hpp"
#include "tubehom/pencil.hpp"
#include "tubehom/rational.hpp"
#include "tubehom/regime.hpp"
#include "tubehom/report.hpp"
#include "tubehom/spectrum.hpp"

namespace tubehom::cli {
namespace {

/// Raised for flag values that parse but are unusable; carries the flag name.
struct FlagError : std::runtime_error {
  FlagError(const std::string& flag, const std::string& message) : std::runtime_error(flag + ": " + message) {}
};

struct LawFlags {
  int n = 2;
  std::string alpha;
  std::string beta;
  double d0 = 1.0;
  double q0 = 1.0;
  std::optional<double> exp_a;
};

struct RunConfig {
  LawFlags law;
  /// Empty means the unit box of the relevant dimension.
  std::vector<double> sides;
  std::size_t count = 20;
  int n_max = 3;
  std::size_t cap = 20;
  double tol = 1e-10;
  std::string regime;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> v;
  std::optional<double> omega;
  std::vector<std::string> eps{"1/4", "1/8", "1/16"};
  std::size_t m = 1;
  int k = 4;
  int nt = 0;
  double threshold = 0.1;
  std::string format = "json";
  std::string output;
  std::string dump_vectors;
};

Rational parse_rational(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw FlagError(flag, e.what());
  }
}

void add_law_flags(CLI::App* cmd, LawFlags& law) {
  cmd->add_option("--n", law.n, "Sheet dimension N")->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", law.alpha, "Radius exponent: d = d0 * eps^alpha (rational)");
  cmd->add_option("--beta", law.beta, "Length exponent: q = q0 * eps^beta (rational)");
  cmd->add_option("--d0", law.d0, "Radius coefficient");
  cmd->add_option("--q0", law.q0, "Length coefficient");
  cmd->add_option("--exp-a", law.exp_a, "Exponential radius d = exp(-a/eps^2), N = 2 only");
}

bool has_law(const LawFlags& law) { return !law.alpha.empty() || !law.beta.empty() || law.exp_a.has_value(); }

ScalingLaw build_law(const LawFlags& flags) {
  if (flags.beta.empty()) throw FlagError("--beta", "required to define the tube length law");
  if (flags.alpha.empty() == !flags.exp_a.has_value()) {
    throw FlagError("--alpha", "give exactly one of --alpha and --exp-a");
  }
  ScalingLaw law;
  law.dimension = flags.n;
  law.length = PowerLaw{flags.q0, parse_rational("--beta", flags.beta)};
  if (flags.exp_a) {
    law.radius = ExponentialLaw{*flags.exp_a};
  } else {
    law.radius = PowerLaw{flags.d0, parse_rational("--alpha", flags.alpha)};
  }
  return law;
}

template <class T>
T require(const std::optional<T>& value, const std::string& flag, const std::string& regime) {
  if (!value) throw FlagError(flag, "required for --regime " + regime);
  return *value;
}

HomogenizedProblem explicit_problem(const RunConfig& cfg, int dimension) {
  const double omega = cfg.omega ? *cfg.omega : sphere_volume(dimension);
  if (cfg.regime == "pencil") {
    return PencilProblem{require(cfg.p, "--p", cfg.regime), require(cfg.q, "--q", cfg.regime), omega};
  }
  if (cfg.regime == "decoupled_threshold") return DecoupledThresholdProblem{require(cfg.q, "--q", cfg.regime)};
  if (cfg.regime == "scaled_laplacian") {
    const double p = require(cfg.p, "--p", cfg.regime);
    return ScaledLaplacianProblem{p, omega, 1.0 / (1.0 + p * omega / 2.0)};
  }
  if (cfg.regime == "coupled") return CoupledProblem{require(cfg.v, "--v", cfg.regime)};
  throw FlagError("--regime", "unknown regime '" + cfg.regime + "'");
}

void check_sides(RunConfig& cfg, int dimension) {
  if (cfg.sides.empty()) cfg.sides.assign(static_cast<std::size_t>(dimension), 1.0);
  if (static_cast<int>(cfg.sides.size()) != dimension) {
    throw FlagError("--sides", "expected " + std::to_string(dimension) + " side lengths");
  }
  for (double a : cfg.sides) {
    if (!(a > 0.0)) throw FlagError("--sides", "side lengths must be positive");
  }
}

HomogenizedOptions homogenized_options(const RunConfig& cfg) {
  HomogenizedOptions options;
  options.count = cfg.count;
  options.n_max = cfg.n_max;
  options.tol = cfg.tol;
  return options;
}

Report run_classify(const RunConfig& cfg) { return classify_law(build_law(cfg.law)); }

Report run_spectrum(RunConfig& cfg) {
  HomogenizedProblem problem;
  int dimension = cfg.sides.empty() ? 2 : static_cast<int>(cfg.sides.size());
  if (!cfg.regime.empty()) {
    if (has_law(cfg.law)) throw FlagError("--regime", "cannot be combined with scaling-law flags");
    problem = explicit_problem(cfg, dimension);
  } else {
    if (!has_law(cfg.law)) throw FlagError("--regime", "give --regime or the scaling-law flags");
    const ScalingLaw law = build_law(cfg.law);
    dimension = law.dimension;
    problem = classify(limits_from_law(law), law.dimension, sphere_volume(law.dimension));
  }
  check_sides(cfg, dimension);
  const Spectrum base = box_dirichlet_spectrum(cfg.sides, cfg.count);
  return homogenized_spectrum(problem, base, homogenized_options(cfg));
}

Report run_pencil(RunConfig& cfg) {
  check_sides(cfg, cfg.sides.empty() ? 2 : static_cast<int>(cfg.sides.size()));
  PencilParams params;
  params.p = require(cfg.p, "--p", "pencil");
  params.q = require(cfg.q, "--q", "pencil");
  params.omega = cfg.omega ? *cfg.omega : sphere_volume(static_cast<int>(cfg.sides.size()));
  PencilOptions options;
  options.n_max = cfg.n_max;
  options.per_interval_cap = cfg.cap;
  options.tol = cfg.tol;
  const Spectrum base = box_dirichlet_spectrum(cfg.sides, cfg.count);
  return pencil_spectrum(base, params, options);
}

direct::ConvergenceReport run_verify(RunConfig& cfg, std::ostream& err) {
  const ScalingLaw law = build_law(cfg.law);
  if (law.dimension != 2) throw FlagError("--n", "verify simulates N = 2 only");
  check_sides(cfg, 2);
  std::vector<double> eps;
  for (const auto& text : cfg.eps) eps.push_back(parse_rational("--eps", text).to_double());

  direct::StudyOptions options;
  options.refinement = cfg.k;
  options.tube_segments = cfg.nt;
  options.side_lengths = {cfg.sides[0], cfg.sides[1]};
  options.tol = cfg.tol;
  options.threshold = cfg.threshold;
  options.keep_vectors = !cfg.dump_vectors.empty();
  direct::ConvergenceReport report = direct::convergence_study(law, eps, cfg.m, options);

  if (!cfg.dump_vectors.empty()) {
    std::string dump;
    for (const auto& row : report.rows) {
      if (!row.ok()) continue;
      direct::ModelConfig config{law, row.eps, cfg.k, cfg.nt, options.side_lengths};
      std::string part = eigenvector_csv(direct::assemble(config), row.eps, row.vectors);
      if (!dump.empty()) part = part.substr(part.find('\n') + 1);
      dump += part;
    }
    write_file(cfg.dump_vectors, dump);
  }
  for (const auto& row : report.rows) {
    if (row.error) err << "eps=" << row.eps << ": " << *row.error << "\n";
  }
  return report;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homogenized spectra of two sheets joined by thin tubes"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* classify_cmd = app.add_subcommand("classify", "Limits and limit problem of a scaling law");
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Spectrum of the limit problem");
  auto* pencil_cmd = app.add_subcommand("pencil", "Pencil eigenvalues per interval with branch tags");
  auto* verify_cmd = app.add_subcommand("verify", "Convergence study of the finite-difference model (N = 2)");

  for (auto* cmd : {classify_cmd, spectrum_cmd, pencil_cmd, verify_cmd}) {
    cmd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output", cfg.output, "Write the report to this file instead of stdout");
  }
  add_law_flags(classify_cmd, cfg.law);
  add_law_flags(spectrum_cmd, cfg.law);
  add_law_flags(verify_cmd, cfg.law);
  for (auto* cmd : {spectrum_cmd, pencil_cmd, verify_cmd}) {
    cmd->add_option("--sides", cfg.sides, "Box side lengths")->delimiter(',');
    cmd->add_option("--tol", cfg.tol, "Tolerance (root residual or eigenpair residual)")->check(CLI::PositiveNumber);
  }
  for (auto* cmd : {spectrum_cmd, pencil_cmd}) {
    cmd->add_option("--count", cfg.count, "Number of Dirichlet eigenvalues / listed values")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--n-max", cfg.n_max, "Number of intervals J_n / accumulation points")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--p", cfg.p, "Limit p");
    cmd->add_option("--q", cfg.q, "Limit q");
    cmd->add_option("--omega", cfg.omega, "Unit sphere measure (default from the box dimension)");
  }
  spectrum_cmd->add_option("--regime", cfg.regime, "Limit problem given directly")
      ->check(CLI::IsMember({"pencil", "decoupled_threshold", "scaled_laplacian", "coupled"}));
  spectrum_cmd->add_option("--v", cfg.v, "Coupling constant V");
  pencil_cmd->add_option("--cap", cfg.cap, "Hard-branch sources per interval")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--eps", cfg.eps, "Decreasing eps values (rationals)")->delimiter(',');
  verify_cmd->add_option("--m", cfg.m, "Eigenvalues compared per eps")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--k", cfg.k, "Grid refinement, h = eps/k")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--nt", cfg.nt, "Tube chain segments (0 = automatic)")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--threshold", cfg.threshold, "Relative error threshold at the finest eps");
  verify_cmd->add_option("--dump-vectors", cfg.dump_vectors, "CSV file for the computed eigenvectors");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }

  try {
    const Format format = format_from_string(cfg.format);
    Report report;
    if (classify_cmd->parsed()) {
      report = run_classify(cfg);
    } else if (spectrum_cmd->parsed()) {
      report = run_spectrum(cfg);
    } else if (pencil_cmd->parsed()) {
      report = run_pencil(cfg);
    } else {
      report = run_verify(cfg, err);
    }
    const std::string bytes = export_report(report, format);
    if (cfg.output.empty()) {
      out << bytes;
    } else {
      write_file(cfg.output, bytes);
    }
    if (const auto* r = std::get_if<direct::ConvergenceReport>(&report)) {
      for (const auto& row : r->rows) {
        if (row.error_kind && Error(*row.error_kind, "").is_numerical()) return kNumericalFailure;
      }
    }
    return kSuccess;
  } catch (const FlagError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_numerical() ? kNumericalFailure : kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }
}

}  // namespace tubehom::cli
