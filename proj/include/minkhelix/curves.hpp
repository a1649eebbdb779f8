#pragma once

// Parametric curves and scalar fields on R^3_1.

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "minkhelix/expression.hpp"
#include "minkhelix/jet.hpp"
#include "minkhelix/lorentz.hpp"
#include "minkhelix/numerics.hpp"

namespace minkhelix {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  bool contains(double s, double slack = 1e-12) const {
    const double pad = slack * std::max({1.0, std::abs(lo), std::abs(hi)});
    return s >= lo - pad && s <= hi + pad;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A curve whose position can be expanded as a Taylor jet at any parameter.
class ParametricCurve {
 public:
  virtual ~ParametricCurve() = default;

  /// Position jet of the given order; coefficient k of each component is
  /// the k-th Taylor coefficient of alpha at s.
  virtual Vec3<Jet> position_jet(double s, int order) const = 0;
  virtual Interval domain() const = 0;
};

/// Curve given by three expressions in the parameter `s`.
class CurveSpec final : public ParametricCurve {
 public:
  CurveSpec() = default;
  CurveSpec(Expression x, Expression y, Expression z, Interval domain, int n_samples = 128);

  /// Parses the three component expressions in `s` with named constants.
  static CurveSpec parse(const std::string& x, const std::string& y, const std::string& z, Interval domain,
                         int n_samples = 128, const std::map<std::string, double>& constants = {});

  Vec3<Jet> position_jet(double s, int order) const override;
  Interval domain() const override { return domain_; }
  int n_samples() const { return n_samples_; }
  std::vector<double> grid() const { return linspace(domain_.lo, domain_.hi, n_samples_); }

  const Expression& x() const { return x_; }
  const Expression& y() const { return y_; }
  const Expression& z() const { return z_; }

 private:
  Expression x_, y_, z_;
  Interval domain_;
  int n_samples_ = 128;
};

/// Entry k is the k-th derivative of alpha at s (entry 0 is the position).
std::vector<Vec3M> eval_curve(const ParametricCurve& c, double s, int order);

/// g(alpha', alpha') at s and its causal classification.
std::pair<double, CausalCharacter> speed_character(const ParametricCurve& c, double s, double tol);

/// Unit-speed reparameterisation of a non-null curve.
///
/// A table of cumulative arc length over the base parameter locates the base
/// parameter for any arc length by Newton iteration on the quadrature.  The
/// local jet of the inverse arc-length map is then obtained by Picard
/// iteration on the series of 1/speed, so derivatives of the reparameterised
/// curve are exact series, not interpolants.
class ArcLengthCurve final : public ParametricCurve {
 public:
  Vec3<Jet> position_jet(double sigma, int order) const override;
  Interval domain() const override { return {0.0, total_length_}; }

  double total_length() const { return total_length_; }
  /// Base-curve parameter at arc length sigma.
  double base_parameter(double sigma) const;
  const ParametricCurve& base() const { return *base_; }

 private:
  friend ArcLengthCurve reparameterize_arc_length(std::shared_ptr<const ParametricCurve>, double, int);

  double speed(double t) const;

  std::shared_ptr<const ParametricCurve> base_;
  std::vector<double> t_table_;
  std::vector<double> length_table_;
  double total_length_ = 0.0;
};

/// Throws NullCurveError when the speed vanishes (within tol) anywhere on
/// the check grid and MixedCausality when g(alpha', alpha') changes sign.
ArcLengthCurve reparameterize_arc_length(std::shared_ptr<const ParametricCurve> c, double tol = 1e-9,
                                         int table_size = 257);

enum class GradientConvention { Metric, Coordinate };

std::string to_string(GradientConvention c);
GradientConvention parse_convention(const std::string& name);

/// Scalar field f(x, y, z) together with the gradient convention it is read
/// under.  Metric: grad f is metric-dual to df, i.e. (-f_x, f_y, f_z).
/// Coordinate: the component list (f_x, f_y, f_z).
struct ScalarField {
  Expression f;
  GradientConvention convention = GradientConvention::Coordinate;

  static ScalarField parse(const std::string& text, GradientConvention convention,
                           const std::map<std::string, double>& constants = {});
};

/// Partial derivatives (f_x, f_y, f_z) at p.
Vec3M partials(const Expression& f, const Vec3M& p);
/// Matrix of second partials at p.
Mat3 second_partials(const Expression& f, const Vec3M& p);

Vec3M gradient(const ScalarField& f, const Vec3M& p);

/// H(i, j) = g(D_{e_i} grad f, e_j) with D the flat coordinate derivative.
/// Symmetric under the metric convention.
Mat3 hessian(const ScalarField& f, const Vec3M& p);

/// Constancy of ||grad f|| along the sample grid of the curve.
ConstancyReport eikonal_check(const ScalarField& f, const ParametricCurve& c, std::span<const double> grid,
                              const TolerancePolicy& policy);
ConstancyReport eikonal_check(const ScalarField& f, const CurveSpec& c, const TolerancePolicy& policy);

/// Largest Hessian entry magnitude over the region.
double max_hessian_entry(const ScalarField& f, std::span<const Vec3M> region);

/// True iff the Hessian vanishes (max entry <= tol) on every point of the
/// region, the flat-space reading of "grad f is parallel".
bool parallel_gradient_check(const ScalarField& f, std::span<const Vec3M> region, double tol = 1e-9);

}  // namespace minkhelix
