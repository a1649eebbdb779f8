#include "minkhelix/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace minkhelix {

void TolerancePolicy::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !std::isfinite(abs_tol) || !std::isfinite(rel_tol)) {
    throw std::invalid_argument("tolerances must be positive and finite");
  }
}

double median(std::span<const double> values) {
  if (values.empty()) throw InsufficientSamples("median of an empty sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

ConstancyReport detect_constancy(std::span<const double> samples, const TolerancePolicy& policy) {
  if (samples.size() < 8) {
    throw InsufficientSamples("constancy detection needs at least 8 samples, got " + std::to_string(samples.size()));
  }
  ConstancyReport r;
  r.n_samples = static_cast<int>(samples.size());
  r.center = median(samples);
  for (double v : samples) {
    if (!std::isfinite(v)) throw DomainError("non-finite sample in constancy detection");
    r.max_abs_dev = std::max(r.max_abs_dev, std::abs(v - r.center));
  }
  r.scale = std::max(std::abs(r.center), 1.0);
  r.is_constant = r.max_abs_dev <= policy.abs_tol + policy.rel_tol * r.scale;
  r.is_nonzero = std::abs(r.center) > policy.abs_tol;
  return r;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw std::invalid_argument("linspace needs at least two points");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  out.back() = b;
  return out;
}

namespace {

double central_difference(const std::function<double(double)>& f, double x, int k, double h) {
  switch (k) {
    case 1:
      return (f(x + h) - f(x - h)) / (2.0 * h);
    case 2:
      return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    case 3:
      return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) / (2.0 * h * h * h);
    case 4:
      return (f(x + 2 * h) - 4.0 * f(x + h) + 6.0 * f(x) - 4.0 * f(x - h) + f(x - 2 * h)) / (h * h * h * h);
    default:
      throw OrderError("finite differences support derivative orders 1 to 4");
  }
}

}  // namespace

double finite_diff_oracle(const std::function<double(double)>& f, double at, int k, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step must be positive");
  // All four stencils have an O(h^2) leading error term.
  const double coarse = central_difference(f, at, k, h);
  const double fine = central_difference(f, at, k, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

double finite_diff_oracle(const Expression& e, double at, int k, double h) {
  return finite_diff_oracle([&e](double s) { return e(s); }, at, k, h);
}

namespace {

constexpr int kMaxDepth = 48;

struct SimpsonState {
  const std::function<double(double)>& f;
  long evaluations = 0;
  long budget = 0;
};

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(SimpsonState& st, double a, double fa, double m, double fm, double b, double fb, double whole,
             double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  st.evaluations += 2;
  if (st.evaluations > st.budget) throw NonConvergence("adaptive quadrature exhausted its evaluation budget");
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double left = simpson(a, fa, flm, m, fm);
  const double right = simpson(m, fm, frm, b, fb);
  const double delta = left + right - whole;
  // At least three levels of subdivision before trusting the estimate.
  if (std::abs(delta) <= 15.0 * tol && depth <= kMaxDepth - 3) return left + right + delta / 15.0;
  if (depth <= 0) throw NonConvergence("adaptive quadrature reached its subdivision depth limit");
  return adapt(st, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
         adapt(st, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  if (a == b) return 0.0;
  SimpsonState st{f, 3, options.max_evaluations};
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(a, fa, fm, b, fb);
  const double result = adapt(st, a, fa, m, fm, b, fb, whole, options.tol, kMaxDepth);
  if (!std::isfinite(result)) throw DomainError("non-finite integrand");
  return result;
}

double integrate(const Expression& e, double a, double b, double tol) {
  return integrate([&e](double s) { return e(s); }, a, b, QuadratureOptions{tol});
}

}  // namespace minkhelix
