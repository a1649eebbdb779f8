#pragma once

// End-to-end reproduction of the two worked examples, with a ledger of the
// known discrepancies between the printed values and the constructions.

#include <ostream>

#include "minkhelix/config.hpp"

namespace minkhelix {

/// Example 2.1: the spacelike helix (a cosh(s/r), a sinh(s/r), b s/r),
/// r = sqrt(a^2 + b^2), with f = x^2 + y^2 + z, on [-2, 2].
AnalysisConfig example_2_1_config(double a = 1.0, double b = 1.0, int samples = 64);
/// Example 3.1: the null curve (sinh s, cosh s, s) with the same field.
AnalysisConfig example_3_1_config(int samples = 64);

/// Runs both examples under `policy` and prints one line per assertion plus
/// the discrepancy ledger.  Returns 0 when every assertion passes, else 4.
int selftest(std::ostream& out, const TolerancePolicy& policy = {});

}  // namespace minkhelix
