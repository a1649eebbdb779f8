#pragma once

// Helix definitions and theorems of eikonal helix theory as executable checks.
//
// Definitions become HelixVerdicts (a constancy report on one pairing of the
// gradient with a frame field).  Theorems become TheoremReports: every
// hypothesis is evaluated and recorded, and conclusion checks are only
// meaningful when none of them fails (vacuous == false).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minkhelix/curves.hpp"
#include "minkhelix/frames.hpp"
#include "minkhelix/numerics.hpp"

namespace minkhelix {

/// Thresholds for hypothesis gates and residual conclusions.
struct GateOptions {
  double hessian_tol = 1e-9;    // H^f = 0 when max |entry| <= this
  double residual_tol = 1e-6;   // residual conclusions hold below this
  double darboux_tol = 1e-9;    // |eps3 k^2 + eps1 t^2| below this is lightlike
};

struct HelixVerdict {
  std::string name;
  ConstancyReport report;
  /// Field eikonal (and non-degenerate) along the curve, and the pairing
  /// non-zero where the definition asks for a non-zero constant.
  bool admissible = false;
  std::vector<double> samples;

  bool holds() const { return admissible && report.is_constant; }
};

struct Hypothesis {
  std::string name;
  bool holds = false;
  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

struct ConclusionCheck {
  std::string name;
  double residual = 0.0;
  std::optional<ConstancyReport> report;
  bool holds = false;
  std::string detail;
  friend bool operator==(const ConclusionCheck&, const ConclusionCheck&) = default;
};

struct TheoremReport {
  std::string name;
  std::vector<Hypothesis> hypotheses;
  std::vector<ConclusionCheck> conclusions;
  bool vacuous = true;

  bool conclusions_hold() const;
  /// A theorem is contradicted only by a failed conclusion under satisfied
  /// hypotheses.
  bool consistent() const { return vacuous || conclusions_hold(); }
  const ConclusionCheck& conclusion(const std::string& name) const;
  bool hypothesis(const std::string& name) const;

  friend bool operator==(const TheoremReport&, const TheoremReport&) = default;
};

/// Components of grad f in the moving frame.  Non-null: a_i = eps_i g(grad, V_i).
/// Null: a1 = g(grad, V2), a2 = g(grad, V1), a3 = g(grad, V3).
struct AxisDecomposition {
  std::vector<double> a1, a2, a3;
  double c = 0.0;
  double n = 0.0;
  /// max over samples of ||grad f - sum a_i V_i|| (Euclidean).
  double reconstruction_residual = 0.0;
};

// ---------------------------------------------------------------------------
// Sampling helpers

std::vector<Vec3M> gradients_along(const ScalarField& f, const FrameTrace& tr);
/// g(grad f, V_i) for i in {1, 2, 3}.
std::vector<double> frame_pairings(const ScalarField& f, const FrameTrace& tr, int i);
/// g(grad f, W) with the Darboux vector of the trace's kind.
std::vector<double> darboux_pairings(const ScalarField& f, const FrameTrace& tr);
/// ||grad f|| along the trace.
std::vector<double> gradient_norms(const ScalarField& f, const FrameTrace& tr);
/// eps3 k^2 + eps1 t^2 along a non-null trace.
std::vector<double> darboux_squares(const FrameTrace& tr);
/// kappa / tau (null) or tau / kappa (non-null) along the trace.
std::vector<double> curvature_ratios(const FrameTrace& tr);

AxisDecomposition axis_decomposition(const ScalarField& f, const FrameTrace& tr);

/// Hessian gate evaluated on the trace positions.
bool hessian_vanishes(const ScalarField& f, const FrameTrace& tr, double tol);

// ---------------------------------------------------------------------------
// Non-null definitions

HelixVerdict slant_helix_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy);
HelixVerdict darboux_helix_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                 double darboux_tol = 1e-9);
HelixVerdict non_normed_darboux_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy);

struct SigmaSeries {
  std::vector<double> samples;
  ConstancyReport report;
  /// Sign of eps1 t^2 + eps3 k^2 at each sample.
  std::vector<int> darboux_sign;
};

/// sigma = k^2 / |eps1 t^2 + eps3 k^2|^(3/2) (t/k)'.  Throws LightlikeDarboux.
SigmaSeries sigma_invariant(const FrameTrace& tr, const TolerancePolicy& policy, double darboux_tol = 1e-9);
double sigma_from_curvatures(double kappa, double tau, double dkappa, double dtau, int eps1, int eps3);

/// Eq. (13) decomposition grad f = n W0 + c V2.  Throws PreconditionError
/// unless g(grad f, V2) is a non-zero constant.  Returns the decomposition
/// (with n = g(grad f, W0) g(W0, W0) and c = eps2 g(grad f, V2), both medians)
/// and max ||grad f - n W0 - c V2||.
std::pair<AxisDecomposition, double> axis_reconstruct_nonnull(const ScalarField& f, const FrameTrace& tr,
                                                              const TolerancePolicy& policy,
                                                              double darboux_tol = 1e-9);

/// Sampled residuals of both equations of Eq. (11) (second one with the sign
/// that follows from Eqs. (4) and (10)).
std::pair<std::vector<double>, std::vector<double>> ode_system_residuals(const FrameTrace& tr, double n, double c);

TheoremReport corollary_2_1_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                  const GateOptions& gates = {});
TheoremReport theorem_2_1_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                const GateOptions& gates = {});
TheoremReport corollary_2_2_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                  const GateOptions& gates = {});
TheoremReport theorem_2_2_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                const GateOptions& gates = {});
TheoremReport theorem_2_3_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                const GateOptions& gates = {});
TheoremReport corollary_2_3_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                  const GateOptions& gates = {});

// ---------------------------------------------------------------------------
// Null definitions

HelixVerdict null_helix_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy);
/// i in {2, 3}.
HelixVerdict null_slant_check(const ScalarField& f, const FrameTrace& tr, int i, const TolerancePolicy& policy);
HelixVerdict null_darboux_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy);

/// det(V2', V2'', V2''') as the Lorentzian triple product g(V2' x V2'', V2''').
std::vector<double> theorem_3_3_determinants(const FrameTrace& tr);
/// tau^5 (kappa / tau)'.
std::vector<double> theorem_3_3_closed_forms(const FrameTrace& tr);

TheoremReport theorem_3_1_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                const GateOptions& gates = {});
TheoremReport theorem_3_2_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                const GateOptions& gates = {});
/// The Eq. (25) identity and its vanishing direction as pure frame geometry.
TheoremReport theorem_3_3_det_check(const FrameTrace& tr, const TolerancePolicy& policy);
/// Theorem 3.3 as stated: the same conclusions gated on an eikonal f with
/// H^f = 0 for which alpha is a null helix or V2-slant helix.
TheoremReport theorem_3_3_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                const GateOptions& gates = {});

/// Antiderivatives of tau and kappa on the trace grid with the integration
/// constants fitted to the sampled pairings (see theorem_3_4_check).
struct FittedIntegrals {
  std::vector<double> int_tau, int_kappa;
  double const_tau = 0.0, const_kappa = 0.0;
};
FittedIntegrals theorem_3_4_integrals(const ScalarField& f, const FrameTrace& tr, double c);

TheoremReport theorem_3_4_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                const GateOptions& gates = {});
TheoremReport corollary_3_1_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                  const GateOptions& gates = {});
TheoremReport theorem_3_5_check(const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy,
                                const GateOptions& gates = {});

}  // namespace minkhelix
