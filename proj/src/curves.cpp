#include "minkhelix/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace minkhelix {

CurveSpec::CurveSpec(Expression x, Expression y, Expression z, Interval domain, int n_samples)
    : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)), domain_(domain), n_samples_(n_samples) {
  if (!(domain_.lo < domain_.hi)) throw std::invalid_argument("curve domain must satisfy s_min < s_max");
  if (n_samples_ < 8) throw std::invalid_argument("curves need at least 8 samples");
}

CurveSpec CurveSpec::parse(const std::string& x, const std::string& y, const std::string& z, Interval domain,
                           int n_samples, const std::map<std::string, double>& constants) {
  return CurveSpec(Expression::parse(x, {"s"}, constants), Expression::parse(y, {"s"}, constants),
                   Expression::parse(z, {"s"}, constants), domain, n_samples);
}

Vec3<Jet> CurveSpec::position_jet(double s, int order) const {
  if (!domain_.contains(s)) {
    std::ostringstream msg;
    msg << "parameter " << s << " outside curve domain [" << domain_.lo << ", " << domain_.hi << "]";
    throw DomainError(msg.str());
  }
  return Vec3<Jet>(eval_jet(x_, s, order), eval_jet(y_, s, order), eval_jet(z_, s, order));
}

std::vector<Vec3M> eval_curve(const ParametricCurve& c, double s, int order) {
  if (order < 0 || order > 6) throw OrderError("curve derivative order must lie in [0, 6]");
  const Vec3<Jet> p = c.position_jet(s, order);
  std::vector<Vec3M> out;
  out.reserve(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) out.emplace_back(p(0).derivative(k), p(1).derivative(k), p(2).derivative(k));
  return out;
}

std::pair<double, CausalCharacter> speed_character(const ParametricCurve& c, double s, double tol) {
  const auto d = eval_curve(c, s, 1);
  const double g = minkowski_inner(d[1], d[1]);
  return {g, classify_square(g, tol)};
}

// ---------------------------------------------------------------------------
// Arc length

double ArcLengthCurve::speed(double t) const {
  const auto d = eval_curve(*base_, t, 1);
  return pseudo_norm(d[1]);
}

double ArcLengthCurve::base_parameter(double sigma) const {
  if (sigma < -1e-12 * std::max(1.0, total_length_) || sigma > total_length_ * (1.0 + 1e-12) + 1e-12) {
    throw DomainError("arc length outside reparameterised domain");
  }
  auto it = std::upper_bound(length_table_.begin(), length_table_.end(), sigma);
  std::size_t k = it == length_table_.begin() ? 0 : static_cast<std::size_t>(it - length_table_.begin()) - 1;
  k = std::min(k, t_table_.size() - 2);
  const double t_lo = t_table_[k];
  const double t_hi = t_table_[k + 1];
  auto length_at = [&](double t) {
    return length_table_[k] + integrate([this](double u) { return speed(u); }, t_lo, t, {1e-14});
  };
  double t = t_lo + (sigma - length_table_[k]) / speed(t_lo);
  for (int iter = 0; iter < 60; ++iter) {
    t = std::clamp(t, t_lo, t_hi);
    const double step = (length_at(t) - sigma) / speed(t);
    t -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(t))) break;
  }
  return std::clamp(t, base_->domain().lo, base_->domain().hi);
}

Vec3<Jet> ArcLengthCurve::position_jet(double sigma, int order) const {
  if (order < 0 || order > 6) throw OrderError("curve derivative order must lie in [0, 6]");
  const double t0 = base_parameter(sigma);
  const Vec3<Jet> p = base_->position_jet(t0, order);
  if (order == 0) return p;

  const Vec3<Jet> velocity(p(0).differentiate(), p(1).differentiate(), p(2).differentiate());
  const Jet inv_speed = 1.0 / sqrt(abs(minkowski_inner(velocity, velocity)));

  // delta(sigma) = t(sigma) - t0 solves delta' = 1/speed(t0 + delta); each
  // Picard sweep fixes one more Taylor coefficient.
  Jet delta = Jet(0.0, 1);
  delta.coeff_ref(1) = inv_speed.value();
  while (delta.order() < order) delta = compose(inv_speed, delta).integrate(0.0);

  return Vec3<Jet>(compose(p(0), delta), compose(p(1), delta), compose(p(2), delta));
}

ArcLengthCurve reparameterize_arc_length(std::shared_ptr<const ParametricCurve> c, double tol, int table_size) {
  if (table_size < 2) throw std::invalid_argument("arc length table needs at least two entries");
  ArcLengthCurve out;
  out.base_ = std::move(c);
  const Interval dom = out.base_->domain();
  out.t_table_ = linspace(dom.lo, dom.hi, table_size);

  // Causality scan on a grid four times finer than the table.
  int sign = 0;
  for (double t : linspace(dom.lo, dom.hi, 4 * (table_size - 1) + 1)) {
    const auto [g, character] = speed_character(*out.base_, t, tol);
    if (character.tag == Causality::Null) {
      std::ostringstream msg;
      msg << "speed is null at s = " << t << " (g(alpha', alpha') = " << g << ")";
      throw NullCurveError(msg.str());
    }
    if (sign != 0 && character.epsilon != sign) {
      std::ostringstream msg;
      msg << "g(alpha', alpha') changes sign near s = " << t;
      throw MixedCausality(msg.str());
    }
    sign = character.epsilon;
  }

  out.length_table_.assign(out.t_table_.size(), 0.0);
  for (std::size_t k = 1; k < out.t_table_.size(); ++k) {
    out.length_table_[k] = out.length_table_[k - 1] +
                           integrate([&out](double u) { return out.speed(u); }, out.t_table_[k - 1], out.t_table_[k],
                                     {1e-14});
  }
  out.total_length_ = out.length_table_.back();
  return out;
}

// ---------------------------------------------------------------------------
// Scalar fields

std::string to_string(GradientConvention c) {
  return c == GradientConvention::Metric ? "metric" : "coordinate";
}

GradientConvention parse_convention(const std::string& name) {
  if (name == "metric") return GradientConvention::Metric;
  if (name == "coordinate") return GradientConvention::Coordinate;
  throw ConfigError("unknown gradient convention '" + name + "' (expected metric or coordinate)");
}

ScalarField ScalarField::parse(const std::string& text, GradientConvention convention,
                               const std::map<std::string, double>& constants) {
  return {Expression::parse(text, {"x", "y", "z"}, constants), convention};
}

namespace {

// Second-order jet of t -> f(p + t d).
Jet directional_jet(const Expression& f, const Vec3M& p, const Vec3M& d) {
  Jet args[3];
  for (int i = 0; i < 3; ++i) {
    args[i] = Jet(p(i), 2);
    args[i].coeff_ref(1) = d(i);
  }
  return f.eval<Jet>(args);
}

}  // namespace

Vec3M partials(const Expression& f, const Vec3M& p) {
  Vec3M out;
  for (int i = 0; i < 3; ++i) out(i) = directional_jet(f, p, Vec3M::Unit(i)).coeff(1);
  return out;
}

Mat3 second_partials(const Expression& f, const Vec3M& p) {
  Mat3 h;
  // Second directional derivative along d is 2 c2.
  for (int i = 0; i < 3; ++i) h(i, i) = 2.0 * directional_jet(f, p, Vec3M::Unit(i)).coeff(2);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double mixed = 2.0 * directional_jet(f, p, Vec3M::Unit(i) + Vec3M::Unit(j)).coeff(2);
      h(i, j) = h(j, i) = 0.5 * (mixed - h(i, i) - h(j, j));
    }
  }
  return h;
}

Vec3M gradient(const ScalarField& f, const Vec3M& p) {
  Vec3M g = partials(f.f, p);
  if (f.convention == GradientConvention::Metric) g(0) = -g(0);
  return g;
}

Mat3 hessian(const ScalarField& f, const Vec3M& p) {
  const Mat3 d2 = second_partials(f.f, p);
  if (f.convention == GradientConvention::Metric) return d2;
  // Coordinate convention: g(D_{e_i} grad, e_j) = eta_j f_ij.
  return d2 * metric_signature().asDiagonal();
}

ConstancyReport eikonal_check(const ScalarField& f, const ParametricCurve& c, std::span<const double> grid,
                              const TolerancePolicy& policy) {
  std::vector<double> norms;
  norms.reserve(grid.size());
  for (double s : grid) norms.push_back(pseudo_norm(gradient(f, eval_curve(c, s, 0)[0])));
  return detect_constancy(norms, policy);
}

ConstancyReport eikonal_check(const ScalarField& f, const CurveSpec& c, const TolerancePolicy& policy) {
  const auto grid = c.grid();
  return eikonal_check(f, static_cast<const ParametricCurve&>(c), grid, policy);
}

double max_hessian_entry(const ScalarField& f, std::span<const Vec3M> region) {
  double worst = 0.0;
  for (const Vec3M& p : region) worst = std::max(worst, hessian(f, p).cwiseAbs().maxCoeff());
  return worst;
}

bool parallel_gradient_check(const ScalarField& f, std::span<const Vec3M> region, double tol) {
  if (region.empty()) throw std::invalid_argument("parallel gradient check needs a non-empty region");
  return max_hessian_entry(f, region) <= tol;
}

}  // namespace minkhelix
