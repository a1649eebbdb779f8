#include "minkhelix/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "minkhelix/report.hpp"

namespace minkhelix {

AnalysisConfig example_2_1_config(double a, double b, int samples) {
  AnalysisConfig c;
  c.curve.x = "a*cosh(s/sqrt(a^2 + b^2))";
  c.curve.y = "a*sinh(s/sqrt(a^2 + b^2))";
  c.curve.z = "b*s/sqrt(a^2 + b^2)";
  c.curve.domain = Interval{-2.0, 2.0};
  c.curve.params = {{"a", a}, {"b", b}};
  c.field.f = "x^2 + y^2 + z";
  c.samples = samples;
  return c;
}

AnalysisConfig example_3_1_config(int samples) {
  AnalysisConfig c;
  c.curve.x = "sinh(s)";
  c.curve.y = "cosh(s)";
  c.curve.z = "s";
  c.curve.domain = Interval{-2.0, 2.0};
  c.field.f = "x^2 + y^2 + z";
  c.samples = samples;
  return c;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);  // no "-0"
  return buf;
}

std::string vec(const Vec3M& v) { return "(" + num(v(0)) + ", " + num(v(1)) + ", " + num(v(2)) + ")"; }

class Ledger {
 public:
  explicit Ledger(std::ostream& out) : out_(out) {}

  void section(const std::string& title) { out_ << "\n== " << title << "\n"; }

  void check(bool ok, const std::string& what, const std::string& evidence) {
    (ok ? passed_ : failed_)++;
    out_ << (ok ? "PASS     " : "FAIL     ") << what << "  [" << evidence << "]\n";
  }

  // Constant with the given target value.
  void constant(const std::string& what, const ConstancyReport& r, double target, double tol = 1e-8) {
    check(r.is_constant && std::abs(r.center - target) < tol, what + " constant = " + num(target),
          "center " + num(r.center) + ", max dev " + num(r.max_abs_dev));
  }

  void flag(const std::string& what, const std::string& evidence) {
    ++flagged_;
    out_ << "FLAGGED  " << what << "  [" << evidence << "]\n";
  }

  void info(const std::string& what) { out_ << "INFO     " << what << "\n"; }

  int finish() {
    out_ << "\nselftest: " << passed_ << " passed, " << failed_ << " failed, " << flagged_ << " flagged\n";
    return failed_ == 0 ? 0 : 4;
  }

 private:
  std::ostream& out_;
  int passed_ = 0;
  int failed_ = 0;
  int flagged_ = 0;
};

}  // namespace

int selftest(std::ostream& out, const TolerancePolicy& policy) {
  policy.validate();
  Ledger ledger(out);
  out << kToolVersion << " selftest (coordinate gradient, abs_tol " << num(policy.abs_tol) << ", rel_tol "
      << num(policy.rel_tol) << ")\n";
  int vacuous_reports = 0;
  int total_reports = 0;

  // Example 3.1 -------------------------------------------------------------
  ledger.section("Example 3.1: null curve (sinh s, cosh s, s), f = x^2 + y^2 + z");
  AnalysisConfig cfg31 = example_3_1_config();
  cfg31.policy = policy;
  const RunReport rep31 = run_analysis(cfg31);
  const CurveSpec curve31 = cfg31.curve_spec();
  const FrameTrace tr31 = frame_trace(curve31);

  ledger.check(rep31.causal_kind == "null", "causal kind is null", rep31.causal_kind);
  ledger.constant("||grad f||", *rep31.eikonal, std::sqrt(5.0));
  ledger.constant("g(grad f, V1)", rep31.verdict("null_helix").report, 1.0);
  ledger.constant("g(grad f, V2)", rep31.verdict("null_v2_slant").report, 0.5);
  ledger.constant("kappa", rep31.kappa, 1.0);
  ledger.constant("tau", rep31.tau, -0.5);
  ledger.constant("g(grad f, W)", rep31.verdict("null_darboux").report, -1.0);
  double w_dev = 0.0;
  double v2_dev = 0.0;
  for (const auto& fr : tr31.null()) {
    w_dev = std::max(w_dev, (darboux_null(fr) - Vec3M(0.0, 0.0, -1.0)).cwiseAbs().maxCoeff());
    const Vec3M printed(-0.5 * std::cosh(fr.s), -0.5 * std::sinh(fr.s), 0.5);
    v2_dev = std::max(v2_dev, (fr.V2 - printed).cwiseAbs().maxCoeff());
  }
  ledger.check(w_dev < 1e-9, "W = (0, 0, -1) at every sample", "max component dev " + num(w_dev));
  ledger.check(v2_dev < 1e-9, "V2 = (-cosh s / 2, -sinh s / 2, 1/2) at every sample", "max dev " + num(v2_dev));
  ledger.check(rep31.verdict("null_helix").holds && rep31.verdict("null_v2_slant").holds &&
                   rep31.verdict("null_darboux").holds,
               "null f-eikonal helix, V2-slant helix and Darboux helix", "Def 3.1 (i)-(iii)");
  const NullCartanFrame f0 = cartan_null(curve31, 0.0);
  const double cross_dev = (lorentz_cross(f0.V1, f0.V2) - f0.V3).cwiseAbs().maxCoeff();
  ledger.check(cross_dev < 1e-12, "V1 x V2 = V3 at s = 0", "max dev " + num(cross_dev));

  // Example 2.1 -------------------------------------------------------------
  ledger.section("Example 2.1: spacelike helix, a = b = 1, f = x^2 + y^2 + z");
  AnalysisConfig cfg21 = example_2_1_config();
  cfg21.policy = policy;
  const RunReport rep21 = run_analysis(cfg21);
  const CurveSpec curve21 = cfg21.curve_spec();
  const ScalarField field21 = cfg21.scalar_field();
  const FrameTrace tr21 = frame_trace(curve21);

  double speed_dev = 0.0;
  for (double s : curve21.grid()) speed_dev = std::max(speed_dev, std::abs(speed_character(curve21, s, 1e-9).first - 1.0));
  ledger.check(rep21.causal_kind == "spacelike" && speed_dev < 1e-10, "unit spacelike speed",
               "max |g(a', a') - 1| " + num(speed_dev));
  ledger.constant("||grad f||", *rep21.eikonal, std::sqrt(3.0));
  ledger.constant("kappa", rep21.kappa, 0.5);
  const auto& slant = rep21.verdict("slant_helix").report;
  ledger.check(slant.is_constant && std::abs(std::abs(slant.center) - 2.0) < 1e-8, "|g(grad f, V2)| constant = 2",
               "center " + num(slant.center) + ", max dev " + num(slant.max_abs_dev));
  const auto& nn = rep21.verdict("non_normed_darboux").report;
  ledger.check(nn.is_constant, "g(grad f, W) constant", "center " + num(nn.center) + ", max dev " + num(nn.max_abs_dev));
  const auto& dh = rep21.verdict("darboux_helix").report;
  ledger.check(dh.is_constant, "g(W0, grad f) constant", "center " + num(dh.center) + ", max dev " + num(dh.max_abs_dev));
  const ConstancyReport square = detect_constancy(darboux_squares(tr21), policy);
  ledger.check(square.is_constant, "eps3 kappa^2 + eps1 tau^2 constant", "center " + num(square.center));
  ledger.check(rep21.tau.is_constant, "tau constant", "center " + num(rep21.tau.center));
  ledger.check(rep21.verdict("slant_helix").holds && rep21.verdict("darboux_helix").holds,
               "non-null f-eikonal slant helix and Darboux helix", "Def 2.1, Def 2.2");
  const NonNullFrame g0 = tr21.nonnull()[tr21.size() / 2];
  ledger.info("eps = (" + std::to_string(g0.eps1) + ", " + std::to_string(g0.eps2) + ", " + std::to_string(g0.eps3) +
              "); at s = " + num(g0.s) + " constructed V2 = " + vec(g0.V2) + ", paper V2 = " +
              vec(Vec3M(std::cosh(g0.s / std::sqrt(2.0)), std::sinh(g0.s / std::sqrt(2.0)), 0.0)) +
              " (opposite sign forced by kappa > 0)");

  // Hypothesis gate ---------------------------------------------------------
  ledger.section("Hypothesis gate H^f = 0");
  ScalarField metric_field = field21;
  metric_field.convention = GradientConvention::Metric;
  const Mat3 h = hessian(metric_field, Vec3M(0.3, -0.2, 0.7));
  const auto region = tr21.positions();
  ledger.check(!parallel_gradient_check(field21, region), "parallel_gradient_check(x^2 + y^2 + z) is false",
               "metric Hessian diag " + vec(h.diagonal()));
  // Corollary 2.1 is the only result without an H^f hypothesis; it is
  // listed separately rather than counted.
  std::string ungated;
  for (const auto* rep : {&rep21, &rep31}) {
    for (const auto& t : rep->theorems) {
      const bool gated = std::any_of(t.hypotheses.begin(), t.hypotheses.end(),
                                     [](const Hypothesis& h) { return h.name == "Hessian H^f = 0"; });
      if (!gated) {
        ungated += (ungated.empty() ? "" : ", ") + t.name + (t.vacuous ? " (vacuous)" : " (not vacuous)");
        continue;
      }
      ++total_reports;
      if (t.vacuous) ++vacuous_reports;
    }
  }
  ledger.check(total_reports > 0 && vacuous_reports == total_reports,
               "every theorem report with hypothesis H^f = 0 on the paper examples is vacuous",
               std::to_string(vacuous_reports) + " of " + std::to_string(total_reports));
  ledger.info("results without an H^f hypothesis: " + (ungated.empty() ? std::string("none") : ungated));

  // Discrepancy ledger ------------------------------------------------------
  ledger.section("Known discrepancies");
  ledger.flag("Example 2.1 torsion: paper prints tau = -(a^2+b^2)/b = -2",
              "Frenet construction gives tau = " + num(rep21.tau.center) + ", |tau| = b/(a^2+b^2) = 0.5");
  const HelixVerdict metric_slant = slant_helix_check(metric_field, tr21, policy);
  ledger.flag("gradient convention: the examples use coordinate components (2x, 2y, 1); Def 1.3 forces (-2x, 2y, 1)",
              std::string("under the metric gradient g(grad f, V2) on Example 2.1 is ") +
                  (metric_slant.report.is_constant ? "constant" : "not constant") + ", max dev " +
                  num(metric_slant.report.max_abs_dev));
  ledger.flag("Eq. (20) relations V2 x V3 = V1 and V3 x V1 = V2 are unreachable with V1 x V2 = V3",
              "Example 3.1 at s = 0: V2 x V3 = " + vec(lorentz_cross(f0.V2, f0.V3)) + ", V3 x V1 = " +
                  vec(lorentz_cross(f0.V3, f0.V1)));
  ledger.flag("Hessian gate: f = x^2 + y^2 + z has H^f = diag(2, 2, 0) != 0",
              std::to_string(vacuous_reports) + " of " + std::to_string(total_reports) +
                  " H^f-gated theorem reports on the paper examples are vacuous");
  return ledger.finish();
}

}  // namespace minkhelix
