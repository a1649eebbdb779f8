#pragma once

// Flat Lorentzian metric of R^3_1.  Coordinate 0 (the first component) is
// the timelike one: g(a, b) = -a0 b0 + a1 b1 + a2 b2.
//
// Everything here is templated on the Eigen expression so that the same code
// serves plain double vectors and vectors of Taylor jets.

#include <cmath>
#include <string>

#include <Eigen/Core>

namespace minkhelix {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

/// A vector of R^3_1 in coordinates (c1 timelike, c2, c3).
using Vec3M = Vec3<double>;
using Mat3 = Eigen::Matrix3d;

/// Diagonal of the metric tensor.
inline const Vec3M& metric_signature() {
  static const Vec3M eta(-1.0, 1.0, 1.0);
  return eta;
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar minkowski_inner(const Eigen::MatrixBase<DerivedA>& u,
                                          const Eigen::MatrixBase<DerivedB>& v) {
  return -(u(0) * v(0)) + u(1) * v(1) + u(2) * v(2);
}

/// Lorentzian vector product, the unique bilinear map with
/// g(u x v, w) = -det[u; v; w] for every w.
template <typename DerivedA, typename DerivedB>
Vec3<typename DerivedA::Scalar> lorentz_cross(const Eigen::MatrixBase<DerivedA>& u,
                                              const Eigen::MatrixBase<DerivedB>& v) {
  return Vec3<typename DerivedA::Scalar>(u(1) * v(2) - u(2) * v(1),  //
                                         u(0) * v(2) - u(2) * v(0),  //
                                         u(1) * v(0) - u(0) * v(1));
}

/// g(u x v, w); equals -det[u; v; w].
template <typename DerivedA, typename DerivedB, typename DerivedC>
typename DerivedA::Scalar lorentz_triple(const Eigen::MatrixBase<DerivedA>& u,
                                         const Eigen::MatrixBase<DerivedB>& v,
                                         const Eigen::MatrixBase<DerivedC>& w) {
  return minkowski_inner(lorentz_cross(u, v), w);
}

/// sqrt|g(v, v)|; zero exactly on null vectors.
template <typename Derived>
double pseudo_norm(const Eigen::MatrixBase<Derived>& v) {
  return std::sqrt(std::abs(minkowski_inner(v, v)));
}

enum class Causality { Spacelike, Timelike, Null };

struct CausalCharacter {
  Causality tag = Causality::Null;
  int epsilon = 0;

  friend bool operator==(const CausalCharacter&, const CausalCharacter&) = default;
};

inline std::string to_string(Causality c) {
  switch (c) {
    case Causality::Spacelike:
      return "spacelike";
    case Causality::Timelike:
      return "timelike";
    case Causality::Null:
      return "null";
  }
  return "unknown";
}

/// Classifies a value of g(v, v); |g| <= tol counts as null.
inline CausalCharacter classify_square(double g_vv, double tol) {
  if (std::abs(g_vv) <= tol) return {Causality::Null, 0};
  if (g_vv > 0.0) return {Causality::Spacelike, 1};
  return {Causality::Timelike, -1};
}

template <typename Derived>
CausalCharacter causal_character(const Eigen::MatrixBase<Derived>& v, double tol) {
  return classify_square(minkowski_inner(v, v), tol);
}

}  // namespace minkhelix
