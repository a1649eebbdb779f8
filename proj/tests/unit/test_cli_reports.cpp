#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "minkhelix/report.hpp"
#include "minkhelix/selftest.hpp"

using namespace minkhelix;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"([curve]
x = sinh(s)
y = cosh(s)
z = s

[field]
f = x^2 + y^2 + z
)";

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("minkhelix_test_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<double> csv_values(const fs::path& file) {
  std::ifstream in(file);
  std::string line;
  std::vector<double> out;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 's') continue;
    out.push_back(std::stod(line.substr(line.find(',') + 1)));
  }
  return out;
}

}  // namespace

TEST_CASE("parse_config reads every section") {
  const AnalysisConfig c = parse_config(R"(# comment
[curve]
x = a*cosh(s)
y = a*sinh(s)
z = s
domain = [-2, 2]
param.a = 1.5

[field]
f = k*z
convention = metric
param.k = 2

[analysis]
samples = 32
domain = [-1, 0.5]
abs_tol = 1e-9
rel_tol = 1e-8
checks = eikonal, slant_helix
arc_length = true
)");
  CHECK(c.curve.x == "a*cosh(s)");
  CHECK(c.curve.domain == Interval{-2, 2});
  CHECK(c.curve.params.at("a") == 1.5);
  CHECK(c.field.convention == GradientConvention::Metric);
  CHECK(c.field.params.at("k") == 2.0);
  CHECK(c.samples == 32);
  CHECK(c.effective_domain() == Interval{-1, 0.5});
  CHECK(c.policy.abs_tol == 1e-9);
  CHECK(c.policy.rel_tol == 1e-8);
  REQUIRE(c.checks);
  CHECK(*c.checks == std::vector<std::string>{"eikonal", "slant_helix"});
  CHECK(c.arc_length);
}

TEST_CASE("parse_config defaults") {
  const AnalysisConfig c = parse_config(kMinimal);
  CHECK(c.samples == 128);
  CHECK(c.effective_domain() == Interval{-1, 1});
  CHECK(c.field.convention == GradientConvention::Coordinate);
  CHECK(c.policy == TolerancePolicy{});
  CHECK_FALSE(c.checks);
  CHECK_FALSE(c.arc_length);
}

TEST_CASE("parse_config errors") {
  SUBCASE("missing '=' reports line and column") {
    try {
      parse_config("[curve]\n  x sinh(s)\n");
      FAIL("no throw");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 3);
    }
  }
  SUBCASE("bad interval value column") {
    try {
      parse_config("[curve]\ndomain = [1, 0]\n");
      FAIL("no throw");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 10);
    }
  }
  CHECK_THROWS_AS(parse_config("[curve]\nw = s\n"), UnknownKey);
  CHECK_THROWS_AS(parse_config("[plot]\n"), UnknownKey);
  CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "[analysis]\nchecks = eikonal, bogus\n"), UnknownKey);
  CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "[analysis]\nsamples = 4\n"), ParseError);
  CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "[analysis]\nabs_tol = -1\n"), ParseError);
  CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "[analysis]\narc_length = maybe\n"), ParseError);
  CHECK_THROWS_AS(parse_config("[curve]\nx = s\nx = s\n"), ParseError);
  CHECK_THROWS_AS(parse_config("x = s\n"), ParseError);
  CHECK_THROWS_AS(parse_config("[curve]\nx = s\n"), ConfigError);
  try {
    parse_config("[curve]\nx = foo*s\ny = s\nz = s\n[field]\nf = z\n");
    FAIL("no throw");
  } catch (const BadExpression& e) {
    CHECK(std::string(e.what()).find("foo") != std::string::npos);
  }
  CHECK_THROWS_AS(load_config("/nonexistent/minkhelix.cfg"), IoError);
}

TEST_CASE("serialize_config round trip") {
  AnalysisConfig c = example_2_1_config(0.7, 1.3, 40);
  c.field.convention = GradientConvention::Metric;
  c.field.params = {{"k", 0.1}};
  c.policy = {1.0 / 3.0, 2e-7};
  c.checks = std::vector<std::string>{"eikonal", "theorem_2_1"};
  c.domain = Interval{-0.25, 1.0 / 7.0};
  c.arc_length = true;
  const std::string text = serialize_config(c);
  CHECK(parse_config(text) == c);
  CHECK(serialize_config(parse_config(text)) == text);
  CHECK(parse_config(serialize_config(example_3_1_config())) == example_3_1_config());
}

TEST_CASE("run_analysis on Example 3.1") {
  const RunReport r = run_analysis(load_config(MINKHELIX_CONFIG_DIR "/example_3_1.cfg"));
  CHECK(r.causal_kind == "null");
  CHECK(r.convention == "coordinate");
  CHECK(r.n_samples == 64);
  REQUIRE(r.eikonal);
  CHECK(r.eikonal->center == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK(r.verdict("null_helix").holds);
  CHECK(r.verdict("null_v2_slant").holds);
  CHECK(r.verdict("null_darboux").holds);
  CHECK(r.kappa.center == doctest::Approx(1.0));
  CHECK(r.tau.center == doctest::Approx(-0.5));
  CHECK(r.frames_continuous);
  CHECK(r.residuals.at("frame_ode") < 1e-6);
  for (const auto& t : r.theorems) {
    CAPTURE(t.name);
    CHECK(t.vacuous);
  }
  CHECK_THROWS(r.verdict("slant_helix"));
  CHECK(r.theorem("Theorem 3.1").hypothesis("null helix"));
}

TEST_CASE("run_analysis on Example 2.1") {
  const RunReport r = run_analysis(load_config(MINKHELIX_CONFIG_DIR "/example_2_1.cfg"));
  CHECK(r.causal_kind == "spacelike");
  CHECK(r.eikonal->center == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(r.verdict("slant_helix").holds);
  CHECK(r.verdict("darboux_helix").holds);
  CHECK(r.kappa.center == doctest::Approx(0.5));
  CHECK(std::abs(r.tau.center) == doctest::Approx(0.5));
  const TheoremReport& c21 = r.theorem("Corollary 2.1");
  CHECK_FALSE(c21.vacuous);
  CHECK(c21.conclusions_hold());
  CHECK(r.theorem("Theorem 2.1").vacuous);
}

TEST_CASE("run_analysis options") {
  AnalysisConfig c = example_3_1_config(16);
  c.checks = std::vector<std::string>{"eikonal", "slant_helix", "null_helix"};
  const RunReport r = run_analysis(c);
  CHECK(r.verdicts.size() == 1);
  CHECK(r.skipped.at("slant_helix") == "not applicable to null curves");
  CHECK(r.theorems.empty());

  // Example 2.1 traversed at twice the speed, reparameterised by arc length.
  AnalysisConfig fast = example_2_1_config(1.0, 1.0, 32);
  fast.curve.x = "cosh(2*s/sqrt(2))";
  fast.curve.y = "sinh(2*s/sqrt(2))";
  fast.curve.z = "2*s/sqrt(2)";
  fast.curve.params.clear();
  fast.domain = Interval{-1, 1};
  fast.arc_length = true;
  const RunReport a = run_analysis(fast);
  CHECK(a.arc_length);
  CHECK(a.kappa.is_constant);
  CHECK(a.kappa.center == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(a.verdict("slant_helix").holds);
  fast.arc_length = false;
  CHECK_THROWS_AS(run_analysis(fast), NotUnitSpeed);
}

TEST_CASE("run_analysis propagates geometric preconditions") {
  AnalysisConfig c = example_2_1_config();
  // Unit timelike speed and zero acceleration.
  c.curve.x = "sqrt(2)*s";
  c.curve.y = "s";
  c.curve.z = "0";
  CHECK_THROWS_AS(run_analysis(c), DegenerateNormal);
  c.curve.x = "s^2";
  c.curve.y = "0.7*s";
  c.domain = Interval{0, 1};
  CHECK_THROWS_AS(run_analysis(c), GeometryError);
}

TEST_CASE("report JSON round trip and determinism") {
  for (const auto& cfg : {example_2_1_config(), example_3_1_config()}) {
    const RunReport r = run_analysis(cfg);
    const std::string text = report_to_string(r);
    const RunReport back = report_from_string(text);
    CHECK(back == r);
    CHECK(report_to_string(back) == text);
    CHECK(report_to_string(run_analysis(cfg)) == text);
  }
  const auto j = nlohmann::json::parse(report_to_string(run_analysis(example_3_1_config(16))));
  CHECK(j.at("tool_version") == kToolVersion);
  CHECK(j.at("causal_kind") == "null");
  CHECK(j.at("eikonal").at("is_constant") == true);
}

TEST_CASE("emit_plot_data") {
  const RunReport r31 = run_analysis(example_3_1_config());
  const fs::path dir = scratch_dir("plots31");
  const auto files = emit_plot_data(r31, dir);
  CHECK(files.size() == r31.series.size());
  const auto v2 = csv_values(dir / "g_grad_f_V2.csv");
  CHECK(v2.size() == 64);
  for (double v : v2) CHECK(std::abs(v - 0.5) < 1e-9);
  std::ifstream head(dir / "g_grad_f_V2.csv");
  std::string first;
  std::getline(head, first);
  CHECK(first == "# quantity: g(grad f, V2)");

  const RunReport r21 = run_analysis(example_2_1_config());
  const fs::path dir21 = scratch_dir("plots21");
  emit_plot_data(r21, dir21);
  const auto d = csv_values(dir21 / "eps3_kappa_2_eps1_tau_2.csv");
  REQUIRE(d.size() == 64);
  for (double v : d) CHECK(std::abs(v - d.front()) < 1e-12);

  RunReport empty = r31;
  empty.series.clear();
  const fs::path none = scratch_dir("plots_empty");
  CHECK(emit_plot_data(empty, none).empty());
  CHECK_FALSE(fs::exists(none));

  // A regular file where the directory should go.
  const fs::path blocker = scratch_dir("plots_blocker");
  std::ofstream(blocker) << "x";
  CHECK_THROWS_AS(emit_plot_data(r31, blocker / "sub"), IoError);
  fs::remove_all(dir);
  fs::remove_all(dir21);
  fs::remove(blocker);
}

TEST_CASE("series file stems") {
  CHECK(series_file_stem("g(grad f, V2)") == "g_grad_f_V2");
  CHECK(series_file_stem("det(V2', V2'', V2''')") == "det_V2p_V2pp_V2ppp");
  CHECK(series_file_stem("||grad f||") == "grad_f");
}

TEST_CASE("selftest is deterministic and sensitive to tolerances") {
  std::ostringstream a, b;
  CHECK(selftest(a) == 0);
  CHECK(selftest(b) == 0);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("0 failed, 4 flagged") != std::string::npos);
  std::ostringstream tight;
  CHECK(selftest(tight, {1e-18, 1e-18}) == 4);
  std::ostringstream bad;
  CHECK_THROWS_AS(selftest(bad, {0.0, 1e-6}), std::invalid_argument);
}
