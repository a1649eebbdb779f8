#pragma once

// Moving frames along curves of R^3_1.
//
// Non-null unit-speed curves carry an orthonormal Frenet frame {V1, V2, V3}
// with causal characters (eps1, eps2, eps3), eps3 = -eps1 eps2, evolving by
//
//   V1' =  eps2 kappa V2
//   V2' = -eps1 kappa V1 - eps3 tau V3
//   V3' =  eps2 tau V2.
//
// Null curves carry a Cartan frame with g(V1,V1) = g(V2,V2) = 0,
// g(V1,V2) = 1, g(V3,V3) = 1, V3 orthogonal to both, evolving by
//
//   V1' = kappa V3,   V2' = tau V3,   V3' = -tau V1 - kappa V2.
//
// Frames are built from Taylor jets of the curve, so each frame also carries
// exact first derivatives of its vectors and curvatures.

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "minkhelix/curves.hpp"
#include "minkhelix/lorentz.hpp"

namespace minkhelix {

struct NonNullFrame {
  double s = 0.0;
  Vec3M position = Vec3M::Zero();
  Vec3M V1 = Vec3M::Zero();
  Vec3M V2 = Vec3M::Zero();
  Vec3M V3 = Vec3M::Zero();
  double kappa = 0.0;
  double tau = 0.0;
  int eps1 = 1;
  int eps2 = 1;
  int eps3 = -1;
  // d/ds of V1, V2, V3, kappa and tau.
  std::array<Vec3M, 3> dV{Vec3M::Zero(), Vec3M::Zero(), Vec3M::Zero()};
  double dkappa = 0.0;
  double dtau = 0.0;

  const Vec3M& vec(int i) const { return i == 1 ? V1 : i == 2 ? V2 : V3; }
  int eps(int i) const { return i == 1 ? eps1 : i == 2 ? eps2 : eps3; }
};

struct NullCartanFrame {
  double s = 0.0;
  Vec3M position = Vec3M::Zero();
  Vec3M V1 = Vec3M::Zero();
  Vec3M V2 = Vec3M::Zero();
  Vec3M V3 = Vec3M::Zero();
  double kappa = 0.0;
  double tau = 0.0;
  std::array<Vec3M, 3> dV{Vec3M::Zero(), Vec3M::Zero(), Vec3M::Zero()};
  double dkappa = 0.0;
  double dtau = 0.0;
  // First three derivatives of V2; only filled when built from a curve jet.
  std::array<Vec3M, 3> V2_derivatives{Vec3M::Zero(), Vec3M::Zero(), Vec3M::Zero()};
  bool has_higher_derivatives = false;

  const Vec3M& vec(int i) const { return i == 1 ? V1 : i == 2 ? V2 : V3; }
};

enum class FrameKind { NonNull, Null };

std::string to_string(FrameKind k);

/// Frames over an increasing sample grid, all of one kind.
struct FrameTrace {
  std::variant<std::vector<NonNullFrame>, std::vector<NullCartanFrame>> frames;
  /// Optional (kappa, tau) at arbitrary s, used for integral conditions.
  std::function<std::array<double, 2>(double)> curvatures_at;

  FrameKind kind() const { return frames.index() == 0 ? FrameKind::NonNull : FrameKind::Null; }
  std::size_t size() const;

  /// Throws PreconditionError when the trace is of the other kind.
  const std::vector<NonNullFrame>& nonnull() const;
  const std::vector<NullCartanFrame>& null() const;
  std::vector<NonNullFrame>& nonnull();
  std::vector<NullCartanFrame>& null();

  std::vector<double> parameters() const;
  std::vector<Vec3M> positions() const;
  std::vector<double> kappas() const;
  std::vector<double> taus() const;
};

struct FrameOptions {
  double causal_tol = 1e-9;   // |g(v,v)| below this counts as null
  double frame_tol = 1e-8;    // unit speed and non-degenerate acceleration
};

/// Frenet frame of a unit-speed non-null curve at s.  Throws NotUnitSpeed or
/// DegenerateNormal.  kappa > 0 always; V2 = alpha'' / (eps2 kappa) and
/// V3 = eps1 eps2 (V1 x V2).
NonNullFrame frenet_nonnull(const ParametricCurve& c, double s, double tol = 1e-8);

/// Cartan frame of a null curve at s.  Throws NotNull,
/// DegenerateAcceleration, or LeftHandedNullFrame when V1 x V2 = -V3.
NullCartanFrame cartan_null(const ParametricCurve& c, double s, double tol = 1e-8);

/// The null vector V2 with g(V1,V2) = 1 and g(V2,V3) = 0, built by
/// projecting `seed` off V3, normalising against V1 and correcting along V1.
/// Requires g(V1, seed) != 0 after projection.
template <typename Scalar>
Vec3<Scalar> null_binormal(const Vec3<Scalar>& v1, const Vec3<Scalar>& v3, const Vec3<Scalar>& seed) {
  const Vec3<Scalar> projected = seed - v3 * minkowski_inner(seed, v3);
  const Vec3<Scalar> scaled = projected * (Scalar(1.0) / minkowski_inner(v1, projected));
  return scaled - v1 * (minkowski_inner(scaled, scaled) * 0.5);
}

/// W = tau V1 - kappa V3.
Vec3M darboux_nonnull(const NonNullFrame& fr);
/// eps3 kappa^2 + eps1 tau^2, which equals g(W, W).
double darboux_square(const NonNullFrame& fr);
/// W / sqrt|eps3 kappa^2 + eps1 tau^2|; throws LightlikeDarboux when the
/// normaliser is at most tol.
Vec3M unit_darboux(const NonNullFrame& fr, double tol = 1e-9);
/// W = tau V1 - kappa V2.
Vec3M darboux_null(const NullCartanFrame& fr);

/// Builds frames on the grid; the kind is detected from the speed.  Throws
/// MixedCausality when the grid mixes null and non-null speed.
FrameTrace frame_trace(std::shared_ptr<const ParametricCurve> c, std::span<const double> grid,
                       const FrameOptions& options = {});
FrameTrace frame_trace(const CurveSpec& c, const FrameOptions& options = {});

/// True when no frame vector flips orientation between adjacent samples.
bool frames_continuous(const FrameTrace& tr);

/// Per-sample max over i of |dV_i/ds - (structure equation RHS)_i|.
std::vector<double> frame_ode_residuals(const FrameTrace& tr);
double frame_ode_residual(const FrameTrace& tr);

/// Per-sample max over i of |dV_i/ds - W x V_i|.
std::vector<double> darboux_rotation_residuals(const FrameTrace& tr);
double darboux_rotation_residual(const FrameTrace& tr);

}  // namespace minkhelix
