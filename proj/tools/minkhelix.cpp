// Command-line front end: analyze, selftest, version.

#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "minkhelix/errors.hpp"
#include "minkhelix/report.hpp"
#include "minkhelix/selftest.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitGeometry = 3;

// Exception type name for the structured error report.
std::string error_kind(const minkhelix::GeometryError& e) {
  using namespace minkhelix;
  if (dynamic_cast<const NotUnitSpeed*>(&e)) return "NotUnitSpeed";
  if (dynamic_cast<const DegenerateNormal*>(&e)) return "DegenerateNormal";
  if (dynamic_cast<const NotNull*>(&e)) return "NotNull";
  if (dynamic_cast<const DegenerateAcceleration*>(&e)) return "DegenerateAcceleration";
  if (dynamic_cast<const LeftHandedNullFrame*>(&e)) return "LeftHandedNullFrame";
  if (dynamic_cast<const NullCurveError*>(&e)) return "NullCurveError";
  if (dynamic_cast<const MixedCausality*>(&e)) return "MixedCausality";
  if (dynamic_cast<const LightlikeDarboux*>(&e)) return "LightlikeDarboux";
  if (dynamic_cast<const PreconditionError*>(&e)) return "PreconditionError";
  return "GeometryError";
}

int analyze(const std::string& config_path, const std::string& plot_dir, const std::string& convention) {
  using namespace minkhelix;
  AnalysisConfig cfg;
  try {
    cfg = load_config(config_path);
    if (!convention.empty()) cfg.field.convention = parse_convention(convention);
    (void)cfg.scalar_field();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    const RunReport report = run_analysis(cfg);
    std::cout << report_to_string(report);
    if (!plot_dir.empty()) emit_plot_data(report, plot_dir);
  } catch (const GeometryError& e) {
    nlohmann::ordered_json err;
    err["error"] = error_kind(e);
    err["message"] = e.what();
    err["config"] = config_path;
    err["tool_version"] = kToolVersion;
    std::cout << err.dump(2) << "\n";
    return kExitGeometry;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frames, eikonal gradients and helix classifiers in Minkowski 3-space"};
  app.require_subcommand(1);

  std::string config_path, plot_dir, convention;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run the configured checks and print a JSON report");
  analyze_cmd->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--emit-plot-data", plot_dir, "Directory for CSV plot data");
  analyze_cmd->add_option("--convention", convention, "Gradient convention (overrides the config)")
      ->check(CLI::IsMember({"metric", "coordinate"}));

  minkhelix::TolerancePolicy policy;
  auto* selftest_cmd = app.add_subcommand("selftest", "Reproduce the worked examples");
  selftest_cmd->add_option("--abs-tol", policy.abs_tol, "Absolute constancy tolerance");
  selftest_cmd->add_option("--rel-tol", policy.rel_tol, "Relative constancy tolerance");

  app.add_subcommand("version", "Print the tool version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*analyze_cmd) return analyze(config_path, plot_dir, convention);
  if (*selftest_cmd) {
    try {
      policy.validate();
    } catch (const std::invalid_argument& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    }
    try {
      return minkhelix::selftest(std::cout, policy);
    } catch (const minkhelix::Error& e) {
      std::cerr << "selftest error: " << e.what() << "\n";
      return 4;
    }
  }
  std::cout << minkhelix::kToolVersion << "\n";
  return 0;
}
