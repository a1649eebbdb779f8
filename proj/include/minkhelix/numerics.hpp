#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "minkhelix/errors.hpp"
#include "minkhelix/expression.hpp"

namespace minkhelix {

/// Combined absolute/relative tolerance used for every constancy decision.
struct TolerancePolicy {
  double abs_tol = 1e-7;
  double rel_tol = 1e-6;

  /// Throws std::invalid_argument unless both tolerances are positive and finite.
  void validate() const;

  friend bool operator==(const TolerancePolicy&, const TolerancePolicy&) = default;
};

/// Verdict on whether a sampled function is constant, with its evidence.
struct ConstancyReport {
  int n_samples = 0;
  double center = 0.0;       // sample median
  double max_abs_dev = 0.0;  // max |sample - center|
  double scale = 1.0;        // max(|center|, 1)
  bool is_constant = false;
  bool is_nonzero = false;

  friend bool operator==(const ConstancyReport&, const ConstancyReport&) = default;
};

/// Median-centred constancy test.  Needs at least 8 samples.
ConstancyReport detect_constancy(std::span<const double> samples, const TolerancePolicy& policy);

double median(std::span<const double> values);

/// n evenly spaced points covering [a, b] inclusive.
std::vector<double> linspace(double a, double b, int n);

/// Central-difference estimate of the k-th derivative (1 <= k <= 4) with one
/// Richardson extrapolation step.  Independent of the jet machinery; meant
/// for cross-checking it.
double finite_diff_oracle(const std::function<double(double)>& f, double at, int k, double h);
double finite_diff_oracle(const Expression& e, double at, int k, double h);

struct QuadratureOptions {
  double tol = 1e-10;
  long max_evaluations = 1L << 20;
};

/// Adaptive Simpson quadrature.  Throws NonConvergence when the evaluation
/// budget runs out before the error estimate drops below tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& options = {});
double integrate(const Expression& e, double a, double b, double tol = 1e-10);

}  // namespace minkhelix
