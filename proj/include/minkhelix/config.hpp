#pragma once

// Analysis configuration: a sectioned key = value text format.
//
//   [curve]     x, y, z (expressions in s), domain = [lo, hi], param.NAME
//   [field]     f (expression in x, y, z), convention, param.NAME
//   [analysis]  samples, domain, abs_tol, rel_tol, checks, arc_length
//
// Lines starting with '#' or ';' are comments.  Curve parameters are visible
// to the field expression too; a field parameter of the same name wins there.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minkhelix/curves.hpp"
#include "minkhelix/numerics.hpp"

namespace minkhelix {

struct AnalysisConfig {
  struct Curve {
    std::string x, y, z;
    std::optional<Interval> domain;
    std::map<std::string, double> params;
    friend bool operator==(const Curve&, const Curve&) = default;
  };
  struct Field {
    std::string f;
    GradientConvention convention = GradientConvention::Coordinate;
    std::map<std::string, double> params;
    friend bool operator==(const Field&, const Field&) = default;
  };

  Curve curve;
  Field field;
  int samples = 128;
  std::optional<Interval> domain;  // overrides the curve's domain
  TolerancePolicy policy;
  /// nullopt runs every check applicable to the detected causal kind.
  std::optional<std::vector<std::string>> checks;
  /// Reparameterise a non-null curve by arc length before building frames.
  bool arc_length = false;

  /// Domain used for the run: analysis override, then curve, then [-1, 1].
  Interval effective_domain() const;
  CurveSpec curve_spec() const;
  ScalarField scalar_field() const;

  friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

/// Every check name the analyzer understands, in report order.
const std::vector<std::string>& known_checks();
const std::vector<std::string>& nonnull_checks();
const std::vector<std::string>& null_checks();

/// Throws ParseError (with line/column), UnknownKey or BadExpression.
AnalysisConfig parse_config(const std::string& text);
AnalysisConfig load_config(const std::string& path);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const AnalysisConfig& c);

}  // namespace minkhelix
