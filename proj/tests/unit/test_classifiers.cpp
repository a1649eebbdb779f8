#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "minkhelix/classifiers.hpp"
#include "minkhelix/selftest.hpp"
#include "witnesses.hpp"

using namespace minkhelix;

namespace {

const TolerancePolicy kPolicy;

struct Example {
  CurveSpec curve;
  FrameTrace trace;
};

Example example_2_1() {
  CurveSpec c = example_2_1_config().curve_spec();
  FrameTrace t = frame_trace(c);
  return {std::move(c), std::move(t)};
}

Example example_3_1() {
  CurveSpec c = example_3_1_config().curve_spec();
  FrameTrace t = frame_trace(c);
  return {std::move(c), std::move(t)};
}

ScalarField paper_field(GradientConvention c = GradientConvention::Coordinate) {
  return ScalarField::parse("x^2 + y^2 + z", c);
}

bool hessian_gated(const TheoremReport& r) {
  return std::any_of(r.hypotheses.begin(), r.hypotheses.end(),
                     [](const Hypothesis& h) { return h.name == "Hessian H^f = 0"; });
}

void check_sound(const TheoremReport& r) {
  CAPTURE(r.name);
  CHECK_FALSE(r.vacuous);
  for (const auto& h : r.hypotheses) {
    CAPTURE(h.name);
    CHECK(h.holds);
  }
  for (const auto& c : r.conclusions) {
    CAPTURE(c.name);
    CAPTURE(c.residual);
    CAPTURE(c.detail);
    CHECK(c.holds);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Definitions on the worked examples

TEST_CASE("Example 2.1 definition verdicts") {
  const auto ex = example_2_1();
  const ScalarField f = paper_field();
  const HelixVerdict slant = slant_helix_check(f, ex.trace, kPolicy);
  CHECK(slant.holds());
  CHECK(std::abs(std::abs(slant.report.center) - 2.0) < 1e-9);
  CHECK(darboux_helix_check(f, ex.trace, kPolicy).holds());
  CHECK(non_normed_darboux_check(f, ex.trace, kPolicy).report.is_constant);
  CHECK_THROWS_AS(null_helix_check(f, ex.trace, kPolicy), PreconditionError);
}

TEST_CASE("Example 3.1 definition verdicts") {
  const auto ex = example_3_1();
  const ScalarField f = paper_field();
  const HelixVerdict helix = null_helix_check(f, ex.trace, kPolicy);
  CHECK(helix.holds());
  CHECK(helix.report.center == doctest::Approx(1.0).epsilon(1e-12));
  const HelixVerdict v2 = null_slant_check(f, ex.trace, 2, kPolicy);
  CHECK(v2.holds());
  CHECK(v2.report.center == doctest::Approx(0.5).epsilon(1e-12));
  // g((2 sinh, 2 cosh, 1), (sinh, cosh, 0)) = 2.
  const HelixVerdict v3 = null_slant_check(f, ex.trace, 3, kPolicy);
  CHECK(v3.holds());
  CHECK(v3.report.center == doctest::Approx(2.0).epsilon(1e-12));
  const HelixVerdict darboux = null_darboux_check(f, ex.trace, kPolicy);
  CHECK(darboux.holds());
  CHECK(darboux.report.center == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK_THROWS_AS(slant_helix_check(f, ex.trace, kPolicy), PreconditionError);
}

TEST_CASE("non-eikonal and degenerate fields are never helices") {
  const auto ex = example_3_1();
  // ||(3x^2, 0, 0)|| = 3 sinh^2 s varies.
  const ScalarField cubic = ScalarField::parse("x^3", GradientConvention::Coordinate);
  CHECK_FALSE(null_helix_check(cubic, ex.trace, kPolicy).holds());
  CHECK_FALSE(null_helix_check(cubic, ex.trace, kPolicy).admissible);
  // Zero gradient: eikonal with norm zero is excluded.
  const ScalarField flat = ScalarField::parse("1", GradientConvention::Coordinate);
  const HelixVerdict v = null_darboux_check(flat, ex.trace, kPolicy);
  CHECK(v.report.is_constant);
  CHECK_FALSE(v.holds());
}

TEST_CASE("f = z on Example 3.1") {
  const auto ex = example_3_1();
  const ScalarField f = ScalarField::parse("z", GradientConvention::Metric);
  CHECK(null_helix_check(f, ex.trace, kPolicy).holds());
  CHECK(null_slant_check(f, ex.trace, 2, kPolicy).holds());
  // g(e3, V3) = 0: constant but not a non-zero constant.
  const HelixVerdict v3 = null_slant_check(f, ex.trace, 3, kPolicy);
  CHECK(v3.report.is_constant);
  CHECK_FALSE(v3.holds());

  const TheoremReport t31 = theorem_3_1_check(f, ex.trace, kPolicy);
  check_sound(t31);
  CHECK(t31.conclusion("(ii) axis c(-tau/kappa V1 + V2)").residual < 1e-10);
  CHECK(t31.conclusion("(i) kappa/tau constant").report->center == doctest::Approx(-2.0).epsilon(1e-12));
  check_sound(theorem_3_2_check(f, ex.trace, kPolicy));
  const TheoremReport t33 = theorem_3_3_check(f, ex.trace, kPolicy);
  check_sound(t33);
  // Theorem 3.5: Darboux helix, kappa tau = -1/2 constant, V3 pairing constant.
  check_sound(theorem_3_5_check(f, ex.trace, kPolicy));
  // Corollary 3.1 needs a non-zero V3 pairing.
  CHECK(corollary_3_1_check(f, ex.trace, kPolicy).vacuous);
}

TEST_CASE("x^2 - y^2 under the metric gradient on Example 2.1") {
  const auto ex = example_2_1();
  const ScalarField f = ScalarField::parse("x^2 - y^2", GradientConvention::Metric);
  // grad f = (-2x, -2y, 0) and V2 = -(cosh, sinh, 0): g = -2.
  const HelixVerdict slant = slant_helix_check(f, ex.trace, kPolicy);
  CHECK(slant.holds());
  CHECK(slant.report.center == doctest::Approx(-2.0).epsilon(1e-12));
}

// ---------------------------------------------------------------------------
// Non-null witnesses

TEST_CASE("sigma-slant witness") {
  const auto w = witness::sigma_slant_witness(0.3);
  const SigmaSeries sigma = sigma_invariant(w.trace, kPolicy);
  CHECK(sigma.report.is_constant);
  CHECK(std::abs(sigma.report.center - 0.3) < 1e-4);
  for (int sgn : sigma.darboux_sign) CHECK(sgn == 1);

  // Curvature from RK4 on tau' = sigma (tau^2 - 1)^(3/2) matches the closed form.
  const auto s = w.trace.parameters();
  const auto rk = witness::sigma_witness_tau_rk4(0.3, s);
  const auto taus = w.trace.taus();
  for (std::size_t k = 0; k < s.size(); ++k) CHECK(std::abs(rk[k] - taus[k]) < 1e-9);

  const ScalarField& f = w.field;
  const HelixVerdict slant = slant_helix_check(f, w.trace, kPolicy);
  CHECK(slant.holds());
  CHECK(slant.report.center == doctest::Approx(-0.3).epsilon(1e-9));
  check_sound(theorem_2_1_check(f, w.trace, kPolicy));
  check_sound(corollary_2_2_check(f, w.trace, kPolicy));
  check_sound(theorem_2_2_check(f, w.trace, kPolicy));
}

TEST_CASE("sigma scales with neither n nor the sign of the field") {
  for (double n : {0.5, 2.0, -1.0}) {
    const auto w = witness::sigma_slant_witness(0.3, n);
    CHECK(slant_helix_check(w.field, w.trace, kPolicy).holds());
    check_sound(theorem_2_1_check(w.field, w.trace, kPolicy));
  }
  const auto w = witness::sigma_slant_witness(-0.2);
  CHECK(std::abs(sigma_invariant(w.trace, kPolicy).report.center + 0.2) < 1e-4);
}

TEST_CASE("Eq. (13) axis reconstruction and Eq. (11) residuals") {
  const auto w = witness::sigma_slant_witness(0.3, 1.0);
  const auto [axis, residual] = axis_reconstruct_nonnull(w.field, w.trace, kPolicy);
  CHECK(residual < 1e-8);
  CHECK(axis.n == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(axis.c == doctest::Approx(-0.3).epsilon(1e-8));
  CHECK(axis.reconstruction_residual < 1e-8);

  const auto [first, second] = ode_system_residuals(w.trace, axis.n, axis.c);
  auto max_abs = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };
  CHECK(max_abs(first) < 1e-8);
  CHECK(max_abs(second) < 1e-8);
  // The opposite sign of c breaks both equations.
  const auto [bad1, bad2] = ode_system_residuals(w.trace, axis.n, -axis.c);
  CHECK(max_abs(bad1) > 0.1);
  CHECK(max_abs(bad2) > 0.1);

  const auto nonslant = witness::darboux_nonslant_witness();
  CHECK_THROWS_AS(axis_reconstruct_nonnull(nonslant.field, nonslant.trace, kPolicy), PreconditionError);
}

TEST_CASE("Theorem 2.3 and Corollaries 2.1, 2.3: positive witness") {
  const auto w = witness::unit_darboux_slant_witness();
  for (double d : darboux_squares(w.trace)) CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(slant_helix_check(w.field, w.trace, kPolicy).holds());
  CHECK(darboux_helix_check(w.field, w.trace, kPolicy).holds());
  const TheoremReport t23 = theorem_2_3_check(w.field, w.trace, kPolicy);
  check_sound(t23);
  CHECK(t23.conclusions.front().detail == "g(grad f, V2) constant = true, ||W|| non-zero constant = true");
  check_sound(corollary_2_3_check(w.field, w.trace, kPolicy));
  check_sound(corollary_2_1_check(w.field, w.trace, kPolicy));
}

TEST_CASE("Theorem 2.3 and Corollaries 2.1, 2.3: negative witness") {
  const auto w = witness::darboux_nonslant_witness();
  const HelixVerdict nn = non_normed_darboux_check(w.field, w.trace, kPolicy);
  CHECK(nn.holds());
  CHECK_FALSE(slant_helix_check(w.field, w.trace, kPolicy).report.is_constant);
  CHECK_FALSE(darboux_helix_check(w.field, w.trace, kPolicy).report.is_constant);
  CHECK_FALSE(detect_constancy(darboux_squares(w.trace), kPolicy).is_constant);
  const TheoremReport t23 = theorem_2_3_check(w.field, w.trace, kPolicy);
  check_sound(t23);
  CHECK(t23.conclusions.front().detail == "g(grad f, V2) constant = false, ||W|| non-zero constant = false");
  check_sound(corollary_2_3_check(w.field, w.trace, kPolicy));
  check_sound(corollary_2_1_check(w.field, w.trace, kPolicy));
  // Theorems 2.1, 2.2 and Corollary 2.2 need a slant helix.
  CHECK(theorem_2_1_check(w.field, w.trace, kPolicy).vacuous);
  CHECK(theorem_2_2_check(w.field, w.trace, kPolicy).vacuous);
  CHECK(corollary_2_2_check(w.field, w.trace, kPolicy).vacuous);
}

// ---------------------------------------------------------------------------
// Null witnesses

TEST_CASE("Theorem 3.4 and Corollary 3.1 on the V3-slant witness") {
  for (const auto& w : {witness::v3_slant_witness(), witness::v3_slant_witness(-2.0),
                        witness::v3_slant_witness_dae()}) {
    CAPTURE(w.description);
    const HelixVerdict v3 = null_slant_check(w.field, w.trace, 3, kPolicy);
    CHECK(v3.holds());
    const TheoremReport t34 = theorem_3_4_check(w.field, w.trace, kPolicy);
    check_sound(t34);
    CHECK(t34.conclusion("(i) kappa I_tau + tau I_kappa = 0").residual < 1e-7);
    CHECK(t34.conclusion("(ii) axis Eq. (26)").residual < 1e-7);
    check_sound(corollary_3_1_check(w.field, w.trace, kPolicy));
    CHECK_FALSE(null_helix_check(w.field, w.trace, kPolicy).report.is_constant);
  }
}

TEST_CASE("Theorem 3.4 fitted constants match the closed form") {
  // tau = K/(s+2)^2, kappa = 1: a1/c = s + 2 and a2/c = -K/(s + 2).
  const auto w = witness::v3_slant_witness(1.0, 0.25, 2.0);
  const FittedIntegrals in = theorem_3_4_integrals(w.field, w.trace, 1.0);
  const auto s = w.trace.parameters();
  for (std::size_t k = 0; k < s.size(); ++k) {
    CHECK(std::abs(in.int_kappa[k] - (s[k] + 2.0)) < 1e-8);
    CHECK(std::abs(in.int_tau[k] + 0.25 / (s[k] + 2.0)) < 1e-8);
  }
  CHECK_THROWS_AS(theorem_3_4_integrals(w.field, w.trace, 0.0), PreconditionError);
}

TEST_CASE("Theorem 3.5 positive and negative witnesses") {
  const auto pos = witness::darboux_v3_witness();
  const HelixVerdict d = null_darboux_check(pos.field, pos.trace, kPolicy);
  CHECK(d.holds());
  CHECK(d.report.center == doctest::Approx(1.0).epsilon(1e-9));
  const TheoremReport tp = theorem_3_5_check(pos.field, pos.trace, kPolicy);
  check_sound(tp);
  CHECK(tp.conclusions.front().detail == "g(grad f, V3) constant = true, kappa tau constant = true");

  const auto neg = witness::darboux_nonv3_witness();
  CHECK(null_darboux_check(neg.field, neg.trace, kPolicy).holds());
  const TheoremReport tn = theorem_3_5_check(neg.field, neg.trace, kPolicy);
  check_sound(tn);
  CHECK(tn.conclusions.front().detail == "g(grad f, V3) constant = false, kappa tau constant = false");
}

TEST_CASE("Theorem 3.3 determinant identity on random null curves") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 8; ++trial) {
    const auto sample = witness::random_null_curve(rng, 16);
    const FrameTrace tr = frame_trace(sample.curve);
    const TheoremReport r = theorem_3_3_det_check(tr, kPolicy);
    if (r.vacuous) continue;  // tau may cross zero
    CHECK(r.conclusion("Eq. (25) determinant identity").holds);
  }
  // Example 3.1: kappa/tau constant and the determinant vanishes.
  const TheoremReport ex = theorem_3_3_det_check(example_3_1().trace, kPolicy);
  check_sound(ex);
  CHECK(ex.conclusion("determinant vanishes iff kappa/tau constant").residual < 1e-9);
}

TEST_CASE("null axis decomposition reconstructs the gradient") {
  for (const auto& w : {witness::v3_slant_witness(), witness::darboux_v3_witness(), witness::darboux_nonv3_witness()}) {
    const AxisDecomposition d = axis_decomposition(w.field, w.trace);
    CHECK(d.reconstruction_residual < 1e-8);
  }
  const auto w = witness::sigma_slant_witness();
  CHECK(axis_decomposition(w.field, w.trace).reconstruction_residual < 1e-8);
}

// ---------------------------------------------------------------------------
// Invariance and gate discipline

TEST_CASE("verdicts do not depend on the sign or scale of f") {
  const auto w = witness::v3_slant_witness();
  for (double scale : {-1.0, 3.0}) {
    const ScalarField g = witness::linear_field(scale * w.axis);
    CHECK(null_slant_check(g, w.trace, 3, kPolicy).holds());
    CHECK(null_slant_check(g, w.trace, 3, kPolicy).report.center ==
          doctest::Approx(scale * null_slant_check(w.field, w.trace, 3, kPolicy).report.center));
    CHECK_FALSE(theorem_3_4_check(g, w.trace, kPolicy).vacuous);
    CHECK(theorem_3_4_check(g, w.trace, kPolicy).conclusions_hold());
  }
  const auto u = witness::unit_darboux_slant_witness(-2.0);
  check_sound(theorem_2_3_check(u.field, u.trace, kPolicy));
}

TEST_CASE("theorem verdicts do not depend on the frame sample count") {
  for (int samples : {17, 41}) {
    const auto w = witness::sigma_slant_witness(0.3, 1.0, samples);
    check_sound(theorem_2_1_check(w.field, w.trace, kPolicy));
  }
}

TEST_CASE("the Hessian gate makes every gated report on the paper examples vacuous") {
  const auto e21 = example_2_1();
  const auto e31 = example_3_1();
  const ScalarField f = paper_field();
  const std::vector<TheoremReport> reports{
      theorem_2_1_check(f, e21.trace, kPolicy),  corollary_2_2_check(f, e21.trace, kPolicy),
      theorem_2_2_check(f, e21.trace, kPolicy),  theorem_2_3_check(f, e21.trace, kPolicy),
      corollary_2_3_check(f, e21.trace, kPolicy), theorem_3_1_check(f, e31.trace, kPolicy),
      theorem_3_2_check(f, e31.trace, kPolicy),  theorem_3_3_check(f, e31.trace, kPolicy),
      theorem_3_4_check(f, e31.trace, kPolicy),  corollary_3_1_check(f, e31.trace, kPolicy),
      theorem_3_5_check(f, e31.trace, kPolicy)};
  for (const auto& r : reports) {
    CAPTURE(r.name);
    CHECK(hessian_gated(r));
    CHECK(r.vacuous);
    CHECK_FALSE(r.hypothesis("Hessian H^f = 0"));
    CHECK(r.consistent());
  }
  // Corollary 2.1 has no Hessian hypothesis and applies to Example 2.1.
  const TheoremReport c21 = corollary_2_1_check(f, e21.trace, kPolicy);
  CHECK_FALSE(hessian_gated(c21));
  check_sound(c21);
}

TEST_CASE("theorems of the wrong kind are vacuous") {
  const auto e21 = example_2_1();
  const auto e31 = example_3_1();
  const ScalarField f = ScalarField::parse("z", GradientConvention::Metric);
  CHECK(theorem_2_1_check(f, e31.trace, kPolicy).vacuous);
  CHECK(corollary_2_1_check(f, e31.trace, kPolicy).vacuous);
  CHECK(theorem_3_1_check(f, e21.trace, kPolicy).vacuous);
  CHECK(theorem_3_3_det_check(e21.trace, kPolicy).vacuous);
  CHECK_FALSE(theorem_3_5_check(f, e21.trace, kPolicy).hypothesis("null curve"));
}

TEST_CASE("a failed conclusion under satisfied hypotheses is inconsistent") {
  TheoremReport r;
  r.hypotheses = {{"h", true}};
  r.conclusions = {{"c", 1.0, std::nullopt, false, {}}};
  r.vacuous = false;
  CHECK_FALSE(r.consistent());
  r.vacuous = true;
  CHECK(r.consistent());
  CHECK_THROWS(r.conclusion("missing"));
}
