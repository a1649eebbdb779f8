#include "minkhelix/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace minkhelix {

bool TheoremReport::conclusions_hold() const {
  return std::all_of(conclusions.begin(), conclusions.end(), [](const ConclusionCheck& c) { return c.holds; });
}

const ConclusionCheck& TheoremReport::conclusion(const std::string& wanted) const {
  for (const auto& c : conclusions) {
    if (c.name == wanted) return c;
  }
  throw std::out_of_range(name + " has no conclusion check named '" + wanted + "'");
}

bool TheoremReport::hypothesis(const std::string& wanted) const {
  for (const auto& h : hypotheses) {
    if (h.name == wanted) return h.holds;
  }
  throw std::out_of_range(name + " has no hypothesis named '" + wanted + "'");
}

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

template <typename Frame>
const Vec3M& frame_vec(const Frame& fr, int i) {
  if (i < 1 || i > 3) throw std::invalid_argument("frame index must be 1, 2 or 3");
  return fr.vec(i);
}

ConstancyReport eikonal_report(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy) {
  return detect_constancy(gradient_norms(f, tr), policy);
}

bool eikonal_ok(const ConstancyReport& r) { return r.is_constant && r.is_nonzero; }

HelixVerdict verdict(std::string name, std::vector<double> samples, bool demands_nonzero, const ScalarField& f,
                     const FrameTrace& tr, const TolerancePolicy& policy) {
  HelixVerdict v;
  v.name = std::move(name);
  v.report = detect_constancy(samples, policy);
  v.samples = std::move(samples);
  v.admissible = eikonal_ok(eikonal_report(f, tr, policy)) && (!demands_nonzero || v.report.is_nonzero);
  return v;
}

ConclusionCheck constancy_conclusion(std::string name, const std::vector<double>& samples,
                                     const TolerancePolicy& policy) {
  ConclusionCheck c;
  c.name = std::move(name);
  c.report = detect_constancy(samples, policy);
  c.residual = c.report->max_abs_dev;
  c.holds = c.report->is_constant;
  return c;
}

ConclusionCheck residual_conclusion(std::string name, double residual, double tol, std::string detail = {}) {
  return {std::move(name), residual, std::nullopt, residual <= tol, std::move(detail)};
}

// A biconditional holds when both sides agree.
ConclusionCheck iff_conclusion(std::string name, bool lhs, bool rhs, const std::string& lhs_name,
                               const std::string& rhs_name) {
  ConclusionCheck c;
  c.name = std::move(name);
  c.holds = lhs == rhs;
  c.residual = c.holds ? 0.0 : 1.0;
  c.detail = lhs_name + " = " + (lhs ? "true" : "false") + ", " + rhs_name + " = " + (rhs ? "true" : "false");
  return c;
}

void finish(TheoremReport& r) {
  r.vacuous = std::any_of(r.hypotheses.begin(), r.hypotheses.end(), [](const Hypothesis& h) { return !h.holds; });
}

bool curvatures_nonzero(const FrameTrace& tr, const TolerancePolicy& policy) {
  for (double k : tr.kappas()) {
    if (std::abs(k) <= policy.abs_tol) return false;
  }
  for (double t : tr.taus()) {
    if (std::abs(t) <= policy.abs_tol) return false;
  }
  return true;
}

// Not a helix: NOT(tau/kappa constant and kappa constant).
bool not_a_helix(const FrameTrace& tr, const TolerancePolicy& policy) {
  const bool ratio_constant = detect_constancy(curvature_ratios(tr), policy).is_constant;
  const bool kappa_constant = detect_constancy(tr.kappas(), policy).is_constant;
  return !(ratio_constant && kappa_constant);
}

// Hypotheses shared by Theorems 2.1 to 2.3 and their corollaries.
std::vector<Hypothesis> nonnull_hypotheses(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                           const GateOptions& gates) {
  return {{"non-null unit-speed curve", tr.kind() == FrameKind::NonNull},
          {"non-zero curvatures", curvatures_nonzero(tr, policy)},
          {"not a helix", not_a_helix(tr, policy)},
          {"f eikonal along alpha", eikonal_ok(eikonal_report(f, tr, policy))},
          {"Hessian H^f = 0", hessian_vanishes(f, tr, gates.hessian_tol)}};
}

std::vector<Hypothesis> null_hypotheses(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                        const GateOptions& gates, bool need_nonzero_curvatures) {
  std::vector<Hypothesis> h{{"null curve", tr.kind() == FrameKind::Null}};
  if (need_nonzero_curvatures) h.push_back({"non-zero curvatures", curvatures_nonzero(tr, policy)});
  h.push_back({"f eikonal along alpha", eikonal_ok(eikonal_report(f, tr, policy))});
  h.push_back({"Hessian H^f = 0", hessian_vanishes(f, tr, gates.hessian_tol)});
  return h;
}

TheoremReport wrong_kind(const std::string& name, FrameKind wanted) {
  TheoremReport r;
  r.name = name;
  r.hypotheses.push_back({wanted == FrameKind::NonNull ? "non-null unit-speed curve" : "null curve", false});
  r.vacuous = true;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sampling helpers

std::vector<Vec3M> gradients_along(const ScalarField& f, const FrameTrace& tr) {
  std::vector<Vec3M> out;
  for (const Vec3M& p : tr.positions()) out.push_back(gradient(f, p));
  return out;
}

std::vector<double> frame_pairings(const ScalarField& f, const FrameTrace& tr, int i) {
  std::vector<double> out;
  out.reserve(tr.size());
  std::visit([&](const auto& frames) {
    for (const auto& fr : frames) out.push_back(minkowski_inner(gradient(f, fr.position), frame_vec(fr, i)));
  }, tr.frames);
  return out;
}

std::vector<double> darboux_pairings(const ScalarField& f, const FrameTrace& tr) {
  std::vector<double> out;
  if (tr.kind() == FrameKind::NonNull) {
    for (const auto& fr : tr.nonnull()) out.push_back(minkowski_inner(gradient(f, fr.position), darboux_nonnull(fr)));
  } else {
    for (const auto& fr : tr.null()) out.push_back(minkowski_inner(gradient(f, fr.position), darboux_null(fr)));
  }
  return out;
}

std::vector<double> gradient_norms(const ScalarField& f, const FrameTrace& tr) {
  std::vector<double> out;
  for (const Vec3M& g : gradients_along(f, tr)) out.push_back(pseudo_norm(g));
  return out;
}

std::vector<double> darboux_squares(const FrameTrace& tr) {
  std::vector<double> out;
  for (const auto& fr : tr.nonnull()) out.push_back(darboux_square(fr));
  return out;
}

std::vector<double> curvature_ratios(const FrameTrace& tr) {
  std::vector<double> out;
  if (tr.kind() == FrameKind::NonNull) {
    for (const auto& fr : tr.nonnull()) out.push_back(fr.tau / fr.kappa);
  } else {
    for (const auto& fr : tr.null()) {
      if (fr.tau == 0.0) throw DomainError("kappa / tau undefined where tau = 0");
      out.push_back(fr.kappa / fr.tau);
    }
  }
  return out;
}

AxisDecomposition axis_decomposition(const ScalarField& f, const FrameTrace& tr) {
  AxisDecomposition d;
  auto record = [&d](const Vec3M& grad, const Vec3M& v1, const Vec3M& v2, const Vec3M& v3, double a1, double a2,
                     double a3) {
    d.a1.push_back(a1);
    d.a2.push_back(a2);
    d.a3.push_back(a3);
    d.reconstruction_residual = std::max(d.reconstruction_residual, (grad - a1 * v1 - a2 * v2 - a3 * v3).norm());
  };
  if (tr.kind() == FrameKind::NonNull) {
    for (const auto& fr : tr.nonnull()) {
      const Vec3M g = gradient(f, fr.position);
      record(g, fr.V1, fr.V2, fr.V3, fr.eps1 * minkowski_inner(g, fr.V1), fr.eps2 * minkowski_inner(g, fr.V2),
             fr.eps3 * minkowski_inner(g, fr.V3));
    }
  } else {
    // The null frame is dual to itself with V1 and V2 swapped.
    for (const auto& fr : tr.null()) {
      const Vec3M g = gradient(f, fr.position);
      record(g, fr.V1, fr.V2, fr.V3, minkowski_inner(g, fr.V2), minkowski_inner(g, fr.V1), minkowski_inner(g, fr.V3));
    }
  }
  if (!d.a2.empty()) d.c = median(d.a2);
  return d;
}

bool hessian_vanishes(const ScalarField& f, const FrameTrace& tr, double tol) {
  const auto region = tr.positions();
  return parallel_gradient_check(f, region, tol);
}

// ---------------------------------------------------------------------------
// Non-null definitions

HelixVerdict slant_helix_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy) {
  tr.nonnull();
  return verdict("non-null f-eikonal slant helix", frame_pairings(f, tr, 2), true, f, tr, policy);
}

HelixVerdict darboux_helix_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                 double darboux_tol) {
  std::vector<double> samples;
  for (const auto& fr : tr.nonnull()) {
    samples.push_back(minkowski_inner(unit_darboux(fr, darboux_tol), gradient(f, fr.position)));
  }
  return verdict("non-null f-eikonal Darboux helix", std::move(samples), false, f, tr, policy);
}

HelixVerdict non_normed_darboux_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy) {
  tr.nonnull();
  return verdict("non-normed non-null f-eikonal Darboux helix", darboux_pairings(f, tr), false, f, tr, policy);
}

double sigma_from_curvatures(double kappa, double tau, double dkappa, double dtau, int eps1, int eps3) {
  // kappa^2 (tau/kappa)' = tau' kappa - tau kappa'.
  const double d = std::abs(eps1 * tau * tau + eps3 * kappa * kappa);
  return (dtau * kappa - tau * dkappa) / std::pow(d, 1.5);
}

SigmaSeries sigma_invariant(const FrameTrace& tr, const TolerancePolicy& policy, double darboux_tol) {
  SigmaSeries out;
  for (const auto& fr : tr.nonnull()) {
    const double d = darboux_square(fr);
    if (std::abs(d) <= darboux_tol) throw LightlikeDarboux("sigma undefined: lightlike Darboux vector");
    out.samples.push_back(sigma_from_curvatures(fr.kappa, fr.tau, fr.dkappa, fr.dtau, fr.eps1, fr.eps3));
    out.darboux_sign.push_back(d > 0.0 ? 1 : -1);
  }
  out.report = detect_constancy(out.samples, policy);
  return out;
}

std::pair<AxisDecomposition, double> axis_reconstruct_nonnull(const ScalarField& f, const FrameTrace& tr,
                                                              const TolerancePolicy& policy, double darboux_tol) {
  const HelixVerdict slant = slant_helix_check(f, tr, policy);
  if (!(slant.report.is_constant && slant.report.is_nonzero)) {
    throw PreconditionError("Eq. (13) decomposition needs g(grad f, V2) to be a non-zero constant");
  }
  AxisDecomposition d = axis_decomposition(f, tr);
  const auto& frames = tr.nonnull();

  // g(grad f, W0) = n g(W0, W0) for grad f = n W0 + c V2.
  std::vector<double> n_samples;
  for (const auto& fr : frames) {
    const double sign = darboux_square(fr) > 0.0 ? 1.0 : -1.0;
    n_samples.push_back(sign * minkowski_inner(gradient(f, fr.position), unit_darboux(fr, darboux_tol)));
  }
  d.n = median(n_samples);

  double residual = 0.0;
  for (const auto& fr : frames) {
    const Vec3M g = gradient(f, fr.position);
    residual = std::max(residual, (g - d.n * unit_darboux(fr, darboux_tol) - d.c * fr.V2).norm());
  }
  return {std::move(d), residual};
}

std::pair<std::vector<double>, std::vector<double>> ode_system_residuals(const FrameTrace& tr, double n, double c) {
  std::vector<double> first, second;
  for (const auto& fr : tr.nonnull()) {
    const double d = fr.eps1 * fr.tau * fr.tau + fr.eps3 * fr.kappa * fr.kappa;
    const double dd = 2.0 * (fr.eps1 * fr.tau * fr.dtau + fr.eps3 * fr.kappa * fr.dkappa);
    const double root = std::sqrt(std::abs(d));
    // (x / sqrt|D|)' = x' / sqrt|D| - x sgn(D) D' / (2 |D|^(3/2)).
    auto scaled_derivative = [&](double x, double dx) {
      return dx / root - x * (d > 0.0 ? 1.0 : -1.0) * dd / (2.0 * root * root * root);
    };
    first.push_back(n * scaled_derivative(fr.tau, fr.dtau) - fr.eps1 * fr.kappa * c);
    second.push_back(n * scaled_derivative(fr.kappa, fr.dkappa) + fr.eps3 * fr.tau * c);
  }
  return {first, second};
}

TheoremReport corollary_2_1_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                  const GateOptions& gates) {
  const std::string name = "Corollary 2.1";
  if (tr.kind() != FrameKind::NonNull) return wrong_kind(name, FrameKind::NonNull);
  TheoremReport r;
  r.name = name;
  const HelixVerdict non_normed = non_normed_darboux_check(f, tr, policy);
  r.hypotheses = {{"non-null unit-speed curve", true},
                  {"f eikonal along alpha", eikonal_ok(eikonal_report(f, tr, policy))},
                  {"non-normed Darboux helix", non_normed.report.is_constant},
                  {"g(W, grad f) non-zero", non_normed.report.is_nonzero}};
  const ConstancyReport square = detect_constancy(darboux_squares(tr), policy);
  const HelixVerdict darboux = darboux_helix_check(f, tr, policy, gates.darboux_tol);
  r.conclusions.push_back(constancy_conclusion("eps3 k^2 + eps1 t^2 constant", darboux_squares(tr), policy));
  r.conclusions.back().holds = true;  // informational; the biconditional carries the claim
  r.conclusions.push_back(iff_conclusion("Darboux helix iff eps3 k^2 + eps1 t^2 constant", darboux.report.is_constant,
                                         square.is_constant, "g(W0, grad f) constant",
                                         "eps3 k^2 + eps1 t^2 constant"));
  finish(r);
  return r;
}

TheoremReport theorem_2_1_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                const GateOptions& gates) {
  const std::string name = "Theorem 2.1";
  if (tr.kind() != FrameKind::NonNull) return wrong_kind(name, FrameKind::NonNull);
  TheoremReport r;
  r.name = name;
  r.hypotheses = nonnull_hypotheses(f, tr, policy, gates);
  const HelixVerdict slant = slant_helix_check(f, tr, policy);
  r.hypotheses.push_back({"slant helix", slant.holds()});

  const SigmaSeries sigma = sigma_invariant(tr, policy, gates.darboux_tol);
  r.conclusions.push_back(constancy_conclusion("(i) sigma constant", sigma.samples, policy));
  if (slant.report.is_constant && slant.report.is_nonzero) {
    const auto [axis, residual] = axis_reconstruct_nonnull(f, tr, policy, gates.darboux_tol);
    r.conclusions.push_back(residual_conclusion("(ii) axis Eq. (10)", residual, gates.residual_tol,
                                                "n = " + std::to_string(axis.n) + ", c = " + std::to_string(axis.c)));
  } else {
    r.conclusions.push_back({"(ii) axis Eq. (10)", 0.0, std::nullopt, false, "slant pairing not a non-zero constant"});
  }
  finish(r);
  return r;
}

TheoremReport corollary_2_2_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                  const GateOptions& gates) {
  const std::string name = "Corollary 2.2";
  if (tr.kind() != FrameKind::NonNull) return wrong_kind(name, FrameKind::NonNull);
  TheoremReport r;
  r.name = name;
  r.hypotheses = nonnull_hypotheses(f, tr, policy, gates);
  const HelixVerdict slant = slant_helix_check(f, tr, policy);
  r.hypotheses.push_back({"slant helix", slant.holds()});

  if (slant.report.is_constant && slant.report.is_nonzero) {
    const auto [axis, unused] = axis_reconstruct_nonnull(f, tr, policy, gates.darboux_tol);
    const auto [first, second] = ode_system_residuals(tr, axis.n, axis.c);
    r.conclusions.push_back(residual_conclusion("Eq. (11) first equation", max_abs(first), gates.residual_tol));
    r.conclusions.push_back(residual_conclusion("Eq. (11) second equation", max_abs(second), gates.residual_tol,
                                                "sign of eps3 tau c as forced by Eqs. (4) and (10)"));
  } else {
    r.conclusions.push_back({"Eq. (11)", 0.0, std::nullopt, false, "n, c undefined without a slant helix"});
  }
  finish(r);
  return r;
}

TheoremReport theorem_2_2_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                const GateOptions& gates) {
  const std::string name = "Theorem 2.2";
  if (tr.kind() != FrameKind::NonNull) return wrong_kind(name, FrameKind::NonNull);
  TheoremReport r;
  r.name = name;
  r.hypotheses = nonnull_hypotheses(f, tr, policy, gates);
  const HelixVerdict slant = slant_helix_check(f, tr, policy);
  r.hypotheses.push_back({"slant helix", slant.holds()});

  const HelixVerdict darboux = darboux_helix_check(f, tr, policy, gates.darboux_tol);
  ConclusionCheck dh{"Darboux helix", darboux.report.max_abs_dev, darboux.report, darboux.report.is_constant, {}};
  r.conclusions.push_back(dh);
  if (slant.report.is_constant && slant.report.is_nonzero) {
    const auto [axis, residual] = axis_reconstruct_nonnull(f, tr, policy, gates.darboux_tol);
    r.conclusions.push_back(residual_conclusion("Eq. (13) grad f = n W0 + c V2", residual, gates.residual_tol));
  }
  finish(r);
  return r;
}

TheoremReport theorem_2_3_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                const GateOptions& gates) {
  const std::string name = "Theorem 2.3";
  if (tr.kind() != FrameKind::NonNull) return wrong_kind(name, FrameKind::NonNull);
  TheoremReport r;
  r.name = name;
  r.hypotheses = nonnull_hypotheses(f, tr, policy, gates);
  const HelixVerdict non_normed = non_normed_darboux_check(f, tr, policy);
  r.hypotheses.push_back({"non-normed Darboux helix", non_normed.holds()});

  std::vector<double> norms;
  for (double d : darboux_squares(tr)) norms.push_back(std::sqrt(std::abs(d)));
  const ConstancyReport w = detect_constancy(norms, policy);
  const HelixVerdict slant = slant_helix_check(f, tr, policy);
  r.conclusions.push_back(iff_conclusion("slant helix iff ||W|| non-zero constant", slant.report.is_constant,
                                         w.is_constant && w.is_nonzero, "g(grad f, V2) constant",
                                         "||W|| non-zero constant"));
  finish(r);
  return r;
}

TheoremReport corollary_2_3_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                  const GateOptions& gates) {
  const std::string name = "Corollary 2.3";
  if (tr.kind() != FrameKind::NonNull) return wrong_kind(name, FrameKind::NonNull);
  TheoremReport r;
  r.name = name;
  r.hypotheses = nonnull_hypotheses(f, tr, policy, gates);
  const HelixVerdict non_normed = non_normed_darboux_check(f, tr, policy);
  r.hypotheses.push_back({"non-normed Darboux helix", non_normed.holds()});

  const HelixVerdict slant = slant_helix_check(f, tr, policy);
  const HelixVerdict darboux = darboux_helix_check(f, tr, policy, gates.darboux_tol);
  r.conclusions.push_back(iff_conclusion("slant helix iff Darboux helix", slant.report.is_constant,
                                         darboux.report.is_constant, "g(grad f, V2) constant",
                                         "g(W0, grad f) constant"));
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------
// Null definitions

HelixVerdict null_helix_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy) {
  tr.null();
  return verdict("null f-eikonal helix", frame_pairings(f, tr, 1), true, f, tr, policy);
}

HelixVerdict null_slant_check(const ScalarField& f, const FrameTrace& tr, int i, const TolerancePolicy& policy) {
  if (i != 2 && i != 3) throw std::invalid_argument("null slant helices pair grad f with V2 or V3");
  tr.null();
  return verdict("null f-eikonal V" + std::to_string(i) + "-slant helix", frame_pairings(f, tr, i), true, f, tr,
                 policy);
}

HelixVerdict null_darboux_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy) {
  tr.null();
  return verdict("null f-eikonal Darboux helix", darboux_pairings(f, tr), true, f, tr, policy);
}

std::vector<double> theorem_3_3_determinants(const FrameTrace& tr) {
  std::vector<double> out;
  for (const auto& fr : tr.null()) {
    if (!fr.has_higher_derivatives) throw PreconditionError("Theorem 3.3 needs V2 derivatives up to order 3");
    const auto& d = fr.V2_derivatives;
    out.push_back(lorentz_triple(d[0], d[1], d[2]));
  }
  return out;
}

std::vector<double> theorem_3_3_closed_forms(const FrameTrace& tr) {
  std::vector<double> out;
  for (const auto& fr : tr.null()) {
    // tau^5 (kappa/tau)' = tau^3 (kappa' tau - kappa tau').
    out.push_back(fr.tau * fr.tau * fr.tau * (fr.dkappa * fr.tau - fr.kappa * fr.dtau));
  }
  return out;
}

TheoremReport theorem_3_1_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                const GateOptions& gates) {
  const std::string name = "Theorem 3.1";
  if (tr.kind() != FrameKind::Null) return wrong_kind(name, FrameKind::Null);
  TheoremReport r;
  r.name = name;
  r.hypotheses = null_hypotheses(f, tr, policy, gates, true);
  const HelixVerdict helix = null_helix_check(f, tr, policy);
  r.hypotheses.push_back({"null helix", helix.holds()});

  if (!curvatures_nonzero(tr, policy)) {
    r.conclusions.push_back({"(i) kappa/tau constant", 0.0, std::nullopt, false, "tau vanishes on the trace"});
  } else {
    r.conclusions.push_back(constancy_conclusion("(i) kappa/tau constant", curvature_ratios(tr), policy));
  }
  const double c = helix.report.center;
  double residual = 0.0;
  for (const auto& fr : tr.null()) {
    const Vec3M predicted = c * (-fr.tau / fr.kappa * fr.V1 + fr.V2);
    residual = std::max(residual, (gradient(f, fr.position) - predicted).norm());
  }
  r.conclusions.push_back(residual_conclusion("(ii) axis c(-tau/kappa V1 + V2)", residual, gates.residual_tol,
                                              "c = " + std::to_string(c)));
  finish(r);
  return r;
}

TheoremReport theorem_3_2_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                const GateOptions& gates) {
  const std::string name = "Theorem 3.2";
  if (tr.kind() != FrameKind::Null) return wrong_kind(name, FrameKind::Null);
  TheoremReport r;
  r.name = name;
  r.hypotheses = null_hypotheses(f, tr, policy, gates, true);
  r.hypotheses.push_back({"null V2-slant helix", null_slant_check(f, tr, 2, policy).holds()});

  const HelixVerdict helix = null_helix_check(f, tr, policy);
  r.conclusions.push_back({"null helix", helix.report.max_abs_dev, helix.report, helix.report.is_constant, {}});
  const TheoremReport axis = theorem_3_1_check(f, tr, policy, gates);
  r.conclusions.push_back(axis.conclusion("(ii) axis c(-tau/kappa V1 + V2)"));
  finish(r);
  return r;
}

TheoremReport theorem_3_3_det_check(const FrameTrace& tr, const TolerancePolicy& policy) {
  const std::string name = "Theorem 3.3";
  if (tr.kind() != FrameKind::Null) return wrong_kind(name, FrameKind::Null);
  TheoremReport r;
  r.name = name;
  const bool jets = std::all_of(tr.null().begin(), tr.null().end(),
                                [](const NullCartanFrame& fr) { return fr.has_higher_derivatives; });
  r.hypotheses = {{"null curve", true},
                  {"V2 derivatives to order 3", jets},
                  {"non-zero curvatures", curvatures_nonzero(tr, policy)}};
  finish(r);
  if (r.vacuous) return r;

  const auto det = theorem_3_3_determinants(tr);
  const auto closed = theorem_3_3_closed_forms(tr);
  double diff = 0.0;
  for (std::size_t k = 0; k < det.size(); ++k) diff = std::max(diff, std::abs(det[k] - closed[k]));
  // Relative to the sup norm of the closed form, floored so that an
  // identically vanishing pair does not divide by zero.
  const double relative = diff / std::max(max_abs(closed), 1e-8);
  r.conclusions.push_back(residual_conclusion("Eq. (25) determinant identity", relative, 1e-5,
                                              "relative to max(sup |tau^5 (kappa/tau)'|, 1e-8)"));

  const bool ratio_constant = detect_constancy(curvature_ratios(tr), policy).is_constant;
  const bool vanishes = max_abs(det) <= policy.abs_tol;
  r.conclusions.push_back(iff_conclusion("determinant vanishes iff kappa/tau constant", vanishes, ratio_constant,
                                         "det == 0", "kappa/tau constant"));
  r.conclusions.back().residual = max_abs(det);
  return r;
}

TheoremReport theorem_3_3_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                const GateOptions& gates) {
  const std::string name = "Theorem 3.3";
  if (tr.kind() != FrameKind::Null) return wrong_kind(name, FrameKind::Null);
  const TheoremReport identity = theorem_3_3_det_check(tr, policy);
  TheoremReport r;
  r.name = name;
  r.hypotheses = null_hypotheses(f, tr, policy, gates, true);
  r.hypotheses.push_back(identity.hypotheses[1]);
  r.hypotheses.push_back({"null helix or V2-slant helix", null_helix_check(f, tr, policy).holds() ||
                                                              null_slant_check(f, tr, 2, policy).holds()});
  r.conclusions = identity.conclusions;
  finish(r);
  return r;
}

FittedIntegrals theorem_3_4_integrals(const ScalarField& f, const FrameTrace& tr, double c) {
  if (!tr.curvatures_at) throw PreconditionError("Theorem 3.4 needs curvature evaluation between samples");
  if (c == 0.0) throw PreconditionError("Theorem 3.4 needs g(grad f, V3) non-zero");
  const auto s = tr.parameters();
  FittedIntegrals out;
  out.int_tau.assign(s.size(), 0.0);
  out.int_kappa.assign(s.size(), 0.0);
  auto tau = [&tr](double u) { return tr.curvatures_at(u)[1]; };
  auto kappa = [&tr](double u) { return tr.curvatures_at(u)[0]; };
  for (std::size_t k = 1; k < s.size(); ++k) {
    out.int_tau[k] = out.int_tau[k - 1] + integrate(tau, s[k - 1], s[k]);
    out.int_kappa[k] = out.int_kappa[k - 1] + integrate(kappa, s[k - 1], s[k]);
  }
  // The fitted constants are the least-squares offsets of a1/c and a2/c
  // against the antiderivatives.
  const auto a1 = frame_pairings(f, tr, 2);
  const auto a2 = frame_pairings(f, tr, 1);
  for (std::size_t k = 0; k < s.size(); ++k) {
    out.const_tau += a1[k] / c - out.int_tau[k];
    out.const_kappa += a2[k] / c - out.int_kappa[k];
  }
  out.const_tau /= static_cast<double>(s.size());
  out.const_kappa /= static_cast<double>(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    out.int_tau[k] += out.const_tau;
    out.int_kappa[k] += out.const_kappa;
  }
  return out;
}

TheoremReport theorem_3_4_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                const GateOptions& gates) {
  const std::string name = "Theorem 3.4";
  if (tr.kind() != FrameKind::Null) return wrong_kind(name, FrameKind::Null);
  TheoremReport r;
  r.name = name;
  r.hypotheses = null_hypotheses(f, tr, policy, gates, false);
  const HelixVerdict slant3 = null_slant_check(f, tr, 3, policy);
  r.hypotheses.push_back({"null V3-slant helix", slant3.holds()});

  const double c = slant3.report.center;
  if (c == 0.0 || !tr.curvatures_at) {
    r.conclusions.push_back({"(i) integral identity", 0.0, std::nullopt, false, "c = 0 or no curvature function"});
    finish(r);
    return r;
  }
  const FittedIntegrals in = theorem_3_4_integrals(f, tr, c);
  const auto& frames = tr.null();
  double identity = 0.0;
  double axis = 0.0;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const auto& fr = frames[k];
    identity = std::max(identity, std::abs(fr.kappa * in.int_tau[k] + fr.tau * in.int_kappa[k]));
    const Vec3M predicted = c * (in.int_tau[k] * fr.V1 + in.int_kappa[k] * fr.V2 + fr.V3);
    axis = std::max(axis, (gradient(f, fr.position) - predicted).norm());
  }
  const std::string constants =
      "fitted constants C_tau = " + std::to_string(in.const_tau) + ", C_kappa = " + std::to_string(in.const_kappa);
  r.conclusions.push_back(residual_conclusion("(i) kappa I_tau + tau I_kappa = 0", identity, gates.residual_tol,
                                              constants));
  r.conclusions.push_back(residual_conclusion("(ii) axis Eq. (26)", axis, gates.residual_tol, constants));
  finish(r);
  return r;
}

TheoremReport corollary_3_1_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                  const GateOptions& gates) {
  const std::string name = "Corollary 3.1";
  if (tr.kind() != FrameKind::Null) return wrong_kind(name, FrameKind::Null);
  TheoremReport r;
  r.name = name;
  r.hypotheses = null_hypotheses(f, tr, policy, gates, false);
  r.hypotheses.push_back({"null V3-slant helix", null_slant_check(f, tr, 3, policy).holds()});

  // The Cartan frame needs kappa > 0, so the branch kappa == 0 cannot occur;
  // the checkable content is the contrapositive.
  const HelixVerdict helix = null_helix_check(f, tr, policy);
  ConclusionCheck first{"(i) kappa > 0 implies not a null helix", helix.report.max_abs_dev, helix.report,
                        !helix.report.is_constant, "kappa == 0 branch structurally unreachable"};
  r.conclusions.push_back(first);

  const HelixVerdict slant2 = null_slant_check(f, tr, 2, policy);
  const bool tau_zero = max_abs(tr.taus()) <= policy.abs_tol;
  r.conclusions.push_back(iff_conclusion("(ii) V2-slant helix iff tau == 0", slant2.report.is_constant, tau_zero,
                                         "g(grad f, V2) constant", "tau == 0"));
  finish(r);
  return r;
}

TheoremReport theorem_3_5_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                const GateOptions& gates) {
  const std::string name = "Theorem 3.5";
  if (tr.kind() != FrameKind::Null) return wrong_kind(name, FrameKind::Null);
  TheoremReport r;
  r.name = name;
  r.hypotheses = null_hypotheses(f, tr, policy, gates, true);
  r.hypotheses.push_back({"null Darboux helix", null_darboux_check(f, tr, policy).holds()});

  std::vector<double> product;
  for (const auto& fr : tr.null()) product.push_back(fr.kappa * fr.tau);
  const ConstancyReport kt = detect_constancy(product, policy);
  const HelixVerdict slant3 = null_slant_check(f, tr, 3, policy);
  r.conclusions.push_back(iff_conclusion("V3-slant helix iff kappa tau constant", slant3.report.is_constant,
                                         kt.is_constant, "g(grad f, V3) constant", "kappa tau constant"));
  finish(r);
  return r;
}

}  // namespace minkhelix
