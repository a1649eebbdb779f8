#include "minkhelix/frames.hpp"

#include <cmath>
#include <sstream>

namespace minkhelix {

namespace {

using JetVec = Vec3<Jet>;

JetVec derive(const JetVec& v) { return JetVec(v(0).differentiate(), v(1).differentiate(), v(2).differentiate()); }

Vec3M value_of(const JetVec& v) { return Vec3M(v(0).value(), v(1).value(), v(2).value()); }

// k-th derivative of a vector jet.
Vec3M derivative_of(const JetVec& v, int k) {
  return Vec3M(v(0).derivative(k), v(1).derivative(k), v(2).derivative(k));
}

std::string at(double s) {
  std::ostringstream os;
  os.precision(17);
  os << " at s = " << s;
  return os.str();
}

// Curve jets of order 6 leave order 4 on the frame vectors and 3 on tau,
// enough for V2''' in Theorem 3.3.
constexpr int kCurveOrder = 6;

}  // namespace

std::string to_string(FrameKind k) { return k == FrameKind::NonNull ? "nonnull" : "null"; }

NonNullFrame frenet_nonnull(const ParametricCurve& c, double s, double tol) {
  const JetVec p = c.position_jet(s, kCurveOrder);
  const JetVec d1 = derive(p);
  const JetVec d2 = derive(d1);

  const double speed_sq = minkowski_inner(value_of(d1), value_of(d1));
  if (std::abs(std::abs(speed_sq) - 1.0) > tol) {
    throw NotUnitSpeed("|g(alpha', alpha')| = " + std::to_string(std::abs(speed_sq)) + " is not 1" + at(s));
  }
  const Jet accel_sq = minkowski_inner(d2, d2);
  if (std::abs(accel_sq.value()) <= tol) {
    throw DegenerateNormal("g(alpha'', alpha'') vanishes" + at(s) + " (geodesic or lightlike acceleration)");
  }

  NonNullFrame fr;
  fr.s = s;
  fr.position = value_of(p);
  fr.eps1 = speed_sq > 0.0 ? 1 : -1;
  fr.eps2 = accel_sq.value() > 0.0 ? 1 : -1;
  fr.eps3 = -fr.eps1 * fr.eps2;

  const Jet kappa = sqrt(abs(accel_sq));
  const JetVec v1 = d1;
  const JetVec v2 = d2 * (1.0 / (fr.eps2 * kappa));
  const JetVec v3 = lorentz_cross(v1, v2) * static_cast<double>(fr.eps1 * fr.eps2);
  const Jet tau = -minkowski_inner(derive(v2), v3);

  fr.V1 = value_of(v1);
  fr.V2 = value_of(v2);
  fr.V3 = value_of(v3);
  fr.kappa = kappa.value();
  fr.tau = tau.value();
  fr.dV = {derivative_of(v1, 1), derivative_of(v2, 1), derivative_of(v3, 1)};
  fr.dkappa = kappa.derivative(1);
  fr.dtau = tau.derivative(1);
  return fr;
}

NullCartanFrame cartan_null(const ParametricCurve& c, double s, double tol) {
  const JetVec p = c.position_jet(s, kCurveOrder);
  const JetVec d1 = derive(p);
  const JetVec d2 = derive(d1);

  const double speed_sq = minkowski_inner(value_of(d1), value_of(d1));
  if (std::abs(speed_sq) > tol) {
    throw NotNull("g(alpha', alpha') = " + std::to_string(speed_sq) + " is not null" + at(s));
  }
  const Jet accel_sq = minkowski_inner(d2, d2);
  if (accel_sq.value() <= tol) {
    throw DegenerateAcceleration("null curve needs g(alpha'', alpha'') > 0" + at(s) +
                                 "; null geodesics and other parameterisations are rejected");
  }

  const Jet kappa = sqrt(accel_sq);
  const JetVec v1 = d1;
  const JetVec v3 = d2 * (1.0 / kappa);
  const JetVec seed(-v1(0), v1(1), v1(2));
  const JetVec v2 = null_binormal<Jet>(v1, v3, seed);

  if (lorentz_triple(value_of(v1), value_of(v2), value_of(v3)) < 0.0) {
    throw LeftHandedNullFrame("V1 x V2 = -V3" + at(s) +
                              "; the Cartan frame of Eq. (20) needs a right-handed null curve");
  }

  const JetVec dv2 = derive(v2);
  const Jet tau = minkowski_inner(dv2, v3);

  NullCartanFrame fr;
  fr.s = s;
  fr.position = value_of(p);
  fr.V1 = value_of(v1);
  fr.V2 = value_of(v2);
  fr.V3 = value_of(v3);
  fr.kappa = kappa.value();
  fr.tau = tau.value();
  fr.dV = {derivative_of(v1, 1), derivative_of(v2, 1), derivative_of(v3, 1)};
  fr.dkappa = kappa.derivative(1);
  fr.dtau = tau.derivative(1);
  fr.V2_derivatives = {derivative_of(v2, 1), derivative_of(v2, 2), derivative_of(v2, 3)};
  fr.has_higher_derivatives = true;
  return fr;
}

Vec3M darboux_nonnull(const NonNullFrame& fr) { return fr.tau * fr.V1 - fr.kappa * fr.V3; }

double darboux_square(const NonNullFrame& fr) {
  return fr.eps3 * fr.kappa * fr.kappa + fr.eps1 * fr.tau * fr.tau;
}

Vec3M unit_darboux(const NonNullFrame& fr, double tol) {
  const double d = std::abs(darboux_square(fr));
  if (d <= tol) throw LightlikeDarboux("Darboux vector is lightlike" + at(fr.s) + "; W0 is undefined");
  return darboux_nonnull(fr) / std::sqrt(d);
}

Vec3M darboux_null(const NullCartanFrame& fr) { return fr.tau * fr.V1 - fr.kappa * fr.V2; }

// ---------------------------------------------------------------------------
// Traces

std::size_t FrameTrace::size() const {
  return std::visit([](const auto& v) { return v.size(); }, frames);
}

const std::vector<NonNullFrame>& FrameTrace::nonnull() const {
  if (kind() != FrameKind::NonNull) throw PreconditionError("operation needs a non-null frame trace");
  return std::get<0>(frames);
}
const std::vector<NullCartanFrame>& FrameTrace::null() const {
  if (kind() != FrameKind::Null) throw PreconditionError("operation needs a null frame trace");
  return std::get<1>(frames);
}
std::vector<NonNullFrame>& FrameTrace::nonnull() {
  if (kind() != FrameKind::NonNull) throw PreconditionError("operation needs a non-null frame trace");
  return std::get<0>(frames);
}
std::vector<NullCartanFrame>& FrameTrace::null() {
  if (kind() != FrameKind::Null) throw PreconditionError("operation needs a null frame trace");
  return std::get<1>(frames);
}

namespace {

template <typename Fn>
auto collect(const FrameTrace& tr, Fn fn) {
  using T = decltype(fn(NonNullFrame{}));
  std::vector<T> out;
  out.reserve(tr.size());
  std::visit([&](const auto& frames) {
    for (const auto& fr : frames) out.push_back(fn(fr));
  }, tr.frames);
  return out;
}

}  // namespace

std::vector<double> FrameTrace::parameters() const {
  return collect(*this, [](const auto& fr) { return fr.s; });
}
std::vector<Vec3M> FrameTrace::positions() const {
  return collect(*this, [](const auto& fr) { return fr.position; });
}
std::vector<double> FrameTrace::kappas() const {
  return collect(*this, [](const auto& fr) { return fr.kappa; });
}
std::vector<double> FrameTrace::taus() const {
  return collect(*this, [](const auto& fr) { return fr.tau; });
}

FrameTrace frame_trace(std::shared_ptr<const ParametricCurve> c, std::span<const double> grid,
                       const FrameOptions& options) {
  if (grid.empty()) throw std::invalid_argument("frame trace needs a non-empty grid");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw std::invalid_argument("frame trace grid must increase strictly");
  }

  int null_count = 0;
  int sign = 0;
  for (double s : grid) {
    const auto [g, character] = speed_character(*c, s, options.causal_tol);
    if (character.tag == Causality::Null) {
      ++null_count;
      continue;
    }
    if (sign != 0 && character.epsilon != sign) throw MixedCausality("speed changes causal character" + at(s));
    sign = character.epsilon;
  }
  if (null_count != 0 && null_count != static_cast<int>(grid.size())) {
    throw MixedCausality("curve is null at " + std::to_string(null_count) + " of " + std::to_string(grid.size()) +
                         " samples");
  }

  FrameTrace tr;
  const double tol = options.frame_tol;
  if (null_count == 0) {
    std::vector<NonNullFrame> frames;
    frames.reserve(grid.size());
    for (double s : grid) frames.push_back(frenet_nonnull(*c, s, tol));
    tr.frames = std::move(frames);
    tr.curvatures_at = [c, tol](double s) {
      const NonNullFrame fr = frenet_nonnull(*c, s, tol);
      return std::array<double, 2>{fr.kappa, fr.tau};
    };
  } else {
    std::vector<NullCartanFrame> frames;
    frames.reserve(grid.size());
    for (double s : grid) frames.push_back(cartan_null(*c, s, tol));
    tr.frames = std::move(frames);
    tr.curvatures_at = [c, tol](double s) {
      const NullCartanFrame fr = cartan_null(*c, s, tol);
      return std::array<double, 2>{fr.kappa, fr.tau};
    };
  }
  return tr;
}

FrameTrace frame_trace(const CurveSpec& c, const FrameOptions& options) {
  const auto grid = c.grid();
  return frame_trace(std::make_shared<CurveSpec>(c), grid, options);
}

bool frames_continuous(const FrameTrace& tr) {
  if (tr.kind() == FrameKind::NonNull) {
    const auto& f = tr.nonnull();
    for (std::size_t k = 1; k < f.size(); ++k) {
      for (int i = 1; i <= 3; ++i) {
        if (f[k].eps(i) * minkowski_inner(f[k - 1].vec(i), f[k].vec(i)) <= 0.0) return false;
      }
    }
    return true;
  }
  // Two future-pointing null vectors have g <= 0, so the null legs are
  // compared through the sign of their time components.
  const auto& f = tr.null();
  for (std::size_t k = 1; k < f.size(); ++k) {
    if (f[k - 1].V1(0) * f[k].V1(0) <= 0.0 || f[k - 1].V2(0) * f[k].V2(0) <= 0.0) return false;
    if (minkowski_inner(f[k - 1].V3, f[k].V3) <= 0.0) return false;
  }
  return true;
}

namespace {

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace

std::vector<double> frame_ode_residuals(const FrameTrace& tr) {
  std::vector<double> out;
  out.reserve(tr.size());
  auto compare = [&out](const auto& fr, const std::array<Vec3M, 3>& rhs) {
    double r = 0.0;
    for (int i = 0; i < 3; ++i) r = std::max(r, (fr.dV[i] - rhs[i]).norm());
    out.push_back(r);
  };
  if (tr.kind() == FrameKind::NonNull) {
    for (const auto& fr : tr.nonnull()) {
      compare(fr, {fr.eps2 * fr.kappa * fr.V2, -fr.eps1 * fr.kappa * fr.V1 - fr.eps3 * fr.tau * fr.V3,
                   fr.eps2 * fr.tau * fr.V2});
    }
  } else {
    for (const auto& fr : tr.null()) {
      compare(fr, {fr.kappa * fr.V3, fr.tau * fr.V3, -fr.tau * fr.V1 - fr.kappa * fr.V2});
    }
  }
  return out;
}

double frame_ode_residual(const FrameTrace& tr) { return max_of(frame_ode_residuals(tr)); }

std::vector<double> darboux_rotation_residuals(const FrameTrace& tr) {
  std::vector<double> out;
  out.reserve(tr.size());
  auto rotate = [&out](const auto& fr, const Vec3M& w) {
    double r = 0.0;
    for (int i = 0; i < 3; ++i) r = std::max(r, (fr.dV[i] - lorentz_cross(w, fr.vec(i + 1))).norm());
    out.push_back(r);
  };
  if (tr.kind() == FrameKind::NonNull) {
    for (const auto& fr : tr.nonnull()) rotate(fr, darboux_nonnull(fr));
  } else {
    for (const auto& fr : tr.null()) rotate(fr, darboux_null(fr));
  }
  return out;
}

double darboux_rotation_residual(const FrameTrace& tr) { return max_of(darboux_rotation_residuals(tr)); }

}  // namespace minkhelix
