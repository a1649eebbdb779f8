#pragma once

// Truncated Taylor series arithmetic.
//
// A Jet of order K carries the Taylor coefficients c[0..K] of a scalar
// function about an expansion point, c[k] = f^(k)(t0) / k!.  Arithmetic and
// the elementary functions propagate the coefficients exactly (up to
// floating-point rounding), so derivatives obtained this way carry no
// truncation error.  Binary operations on jets of different order truncate to
// the lower order.

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include <Eigen/Core>

#include "minkhelix/errors.hpp"

namespace minkhelix {

class Jet {
 public:
  static constexpr int kMaxOrder = 7;

  Jet() = default;

  /// Constant of the given order.  A constant's series is exact at every
  /// order, so the default is the maximum and mixing never truncates.
  explicit Jet(double value, int order = kMaxOrder) : order_(checked(order)) { c_[0] = value; }

  // Eigen constructs scalars from integer literals (Scalar(0), Scalar(1)).
  Jet(int value) : Jet(static_cast<double>(value)) {}  // NOLINT(google-explicit-constructor)

  /// Independent variable t expanded about `at`.
  static Jet variable(double at, int order) {
    Jet j(at, order);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  /// Builds a jet from derivative values d[k] = f^(k)(t0).
  template <typename Range>
  static Jet from_derivatives(const Range& d) {
    Jet j;
    int k = 0;
    double factorial = 1.0;
    for (double v : d) {
      if (k > kMaxOrder) throw OrderError("jet order exceeds maximum");
      if (k > 0) factorial *= k;
      j.c_[k] = v / factorial;
      ++k;
    }
    j.order_ = std::max(k - 1, 0);
    return j;
  }

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double coeff(int k) const { return k <= order_ ? c_[k] : 0.0; }
  double& coeff_ref(int k) { return c_[k]; }

  /// k-th derivative at the expansion point.
  double derivative(int k) const {
    if (k > order_) return 0.0;
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;
    return c_[k] * factorial;
  }

  /// Derivative values d[0..order].
  std::array<double, kMaxOrder + 1> derivatives() const {
    std::array<double, kMaxOrder + 1> d{};
    double factorial = 1.0;
    for (int k = 0; k <= order_; ++k) {
      if (k > 0) factorial *= k;
      d[k] = c_[k] * factorial;
    }
    return d;
  }

  /// Jet of f' (one order lower).
  Jet differentiate() const {
    if (order_ == 0) throw OrderError("cannot differentiate an order-0 jet");
    Jet r;
    r.order_ = order_ - 1;
    for (int k = 0; k < order_; ++k) r.c_[k] = (k + 1) * c_[k + 1];
    return r;
  }

  /// Jet of the antiderivative with value `constant` at the expansion point.
  Jet integrate(double constant) const {
    Jet r;
    r.order_ = std::min(order_ + 1, kMaxOrder);
    r.c_[0] = constant;
    for (int k = 1; k <= r.order_; ++k) r.c_[k] = c_[k - 1] / k;
    return r;
  }

  /// Same series truncated to a lower order.
  Jet truncated(int order) const {
    Jet r = *this;
    r.order_ = std::min(order_, order);
    for (int k = r.order_ + 1; k <= kMaxOrder; ++k) r.c_[k] = 0.0;
    return r;
  }

  Jet& operator+=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
    clear_tail();
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
    clear_tail();
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }
  Jet& operator+=(double v) {
    c_[0] += v;
    return *this;
  }
  Jet& operator-=(double v) {
    c_[0] -= v;
    return *this;
  }
  Jet& operator*=(double v) {
    for (int k = 0; k <= order_; ++k) c_[k] *= v;
    return *this;
  }
  Jet& operator/=(double v) {
    for (int k = 0; k <= order_; ++k) c_[k] /= v;
    return *this;
  }

  friend Jet operator-(Jet a) {
    for (int k = 0; k <= a.order_; ++k) a.c_[k] = -a.c_[k];
    return a;
  }
  friend Jet operator+(const Jet& a) { return a; }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(Jet a, double b) { return a -= b; }
  friend Jet operator-(double a, const Jet& b) { return -b + a; }
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator*(double a, Jet b) { return b *= a; }
  friend Jet operator/(Jet a, double b) { return a /= b; }
  friend Jet operator/(double a, const Jet& b) { return Jet(a, b.order_) / b; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.order_ = std::min(a.order_, b.order_);
    for (int k = 0; k <= r.order_; ++k) {
      double s = 0.0;
      for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    if (b.c_[0] == 0.0) throw DomainError("division by zero");
    Jet q;
    q.order_ = std::min(a.order_, b.order_);
    for (int k = 0; k <= q.order_; ++k) {
      double s = a.c_[k];
      for (int j = 1; j <= k; ++j) s -= b.c_[j] * q.c_[k - j];
      q.c_[k] = s / b.c_[0];
    }
    return q;
  }

  // Ordering and equality compare values only; Eigen needs them for pivoting.
  friend bool operator<(const Jet& a, const Jet& b) { return a.c_[0] < b.c_[0]; }
  friend bool operator>(const Jet& a, const Jet& b) { return a.c_[0] > b.c_[0]; }
  friend bool operator<=(const Jet& a, const Jet& b) { return a.c_[0] <= b.c_[0]; }
  friend bool operator>=(const Jet& a, const Jet& b) { return a.c_[0] >= b.c_[0]; }
  friend bool operator==(const Jet& a, const Jet& b) { return a.c_[0] == b.c_[0]; }
  friend bool operator!=(const Jet& a, const Jet& b) { return a.c_[0] != b.c_[0]; }

  friend std::ostream& operator<<(std::ostream& os, const Jet& j) {
    os << "Jet[";
    for (int k = 0; k <= j.order_; ++k) os << (k ? ", " : "") << j.c_[k];
    return os << "]";
  }

 private:
  static int checked(int order) {
    if (order < 0 || order > kMaxOrder) throw OrderError("jet order out of range");
    return order;
  }
  void clear_tail() {
    for (int k = order_ + 1; k <= kMaxOrder; ++k) c_[k] = 0.0;
  }

  int order_ = kMaxOrder;
  std::array<double, kMaxOrder + 1> c_{};
};

// Elementary functions.  Each uses the standard first-order recurrence
// obtained by differentiating the defining identity (e.g. y' = y a' for exp).

inline Jet exp(const Jet& a) {
  Jet r(std::exp(a.value()), a.order());
  for (int k = 1; k <= a.order(); ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * a.coeff(j) * r.coeff(k - j);
    r.coeff_ref(k) = s / k;
  }
  return r;
}

inline Jet log(const Jet& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) throw DomainError("log of non-positive value");
  Jet r(std::log(a0), a.order());
  for (int k = 1; k <= a.order(); ++k) {
    double s = 0.0;
    for (int j = 1; j < k; ++j) s += j * r.coeff(j) * a.coeff(k - j);
    r.coeff_ref(k) = (a.coeff(k) - s / k) / a0;
  }
  return r;
}

inline Jet sqrt(const Jet& a) {
  const double a0 = a.value();
  if (a0 < 0.0 || (a0 == 0.0 && a.order() > 0)) throw DomainError("sqrt of non-positive value");
  Jet r(std::sqrt(a0), a.order());
  for (int k = 1; k <= a.order(); ++k) {
    double s = a.coeff(k);
    for (int j = 1; j < k; ++j) s -= r.coeff(j) * r.coeff(k - j);
    r.coeff_ref(k) = s / (2.0 * r.value());
  }
  return r;
}

namespace detail {
// Shared recurrence for the (sin, cos) and (sinh, cosh) pairs; `sign` is -1
// for the circular functions and +1 for the hyperbolic ones.
inline void trig_pair(const Jet& a, double s0, double c0, double sign, Jet& s, Jet& c) {
  s = Jet(s0, a.order());
  c = Jet(c0, a.order());
  for (int k = 1; k <= a.order(); ++k) {
    double ss = 0.0;
    double cc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ss += j * a.coeff(j) * c.coeff(k - j);
      cc += j * a.coeff(j) * s.coeff(k - j);
    }
    s.coeff_ref(k) = ss / k;
    c.coeff_ref(k) = sign * cc / k;
  }
}
}  // namespace detail

inline Jet sin(const Jet& a) {
  Jet s, c;
  detail::trig_pair(a, std::sin(a.value()), std::cos(a.value()), -1.0, s, c);
  return s;
}
inline Jet cos(const Jet& a) {
  Jet s, c;
  detail::trig_pair(a, std::sin(a.value()), std::cos(a.value()), -1.0, s, c);
  return c;
}
inline Jet sinh(const Jet& a) {
  Jet s, c;
  detail::trig_pair(a, std::sinh(a.value()), std::cosh(a.value()), 1.0, s, c);
  return s;
}
inline Jet cosh(const Jet& a) {
  Jet s, c;
  detail::trig_pair(a, std::sinh(a.value()), std::cosh(a.value()), 1.0, s, c);
  return c;
}
inline Jet tanh(const Jet& a) {
  Jet s, c;
  detail::trig_pair(a, std::sinh(a.value()), std::cosh(a.value()), 1.0, s, c);
  return s / c;
}

/// a^n for integer n, by repeated squaring.
inline Jet pow(const Jet& a, int n) {
  if (n < 0) return 1.0 / pow(a, -n);
  Jet result(1.0, a.order());
  Jet base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

/// a^p for real p; requires a > 0.
inline Jet pow(const Jet& a, double p) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) throw DomainError("real power of non-positive value");
  Jet r(std::pow(a0, p), a.order());
  for (int k = 1; k <= a.order(); ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += ((p + 1.0) * j - k) * a.coeff(j) * r.coeff(k - j);
    r.coeff_ref(k) = s / (k * a0);
  }
  return r;
}

inline Jet pow(const Jet& a, const Jet& b) { return exp(b * log(a)); }

/// |a|, differentiable away from zero.
inline Jet abs(const Jet& a) { return a.value() < 0.0 ? -a : a; }

/// Series composition outer(inner(t)) where `outer` is expanded about
/// inner(t0).  The constant term of `inner` is ignored.
inline Jet compose(const Jet& outer, const Jet& inner) {
  Jet delta = inner;
  delta.coeff_ref(0) = 0.0;
  const int order = std::min(outer.order(), inner.order());
  Jet r(outer.coeff(outer.order()), order);
  for (int k = outer.order() - 1; k >= 0; --k) r = r * delta + outer.coeff(k);
  return r.truncated(order);
}

}  // namespace minkhelix

namespace Eigen {

template <>
struct NumTraits<minkhelix::Jet> : NumTraits<double> {
  using Real = minkhelix::Jet;
  using NonInteger = minkhelix::Jet;
  using Nested = minkhelix::Jet;
  using Literal = minkhelix::Jet;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 8,
    MulCost = 32,
  };
};

template <typename BinaryOp>
struct ScalarBinaryOpTraits<minkhelix::Jet, double, BinaryOp> {
  using ReturnType = minkhelix::Jet;
};
template <typename BinaryOp>
struct ScalarBinaryOpTraits<double, minkhelix::Jet, BinaryOp> {
  using ReturnType = minkhelix::Jet;
};

}  // namespace Eigen
