#pragma once

#include <vector>

#include "fivepoint/status.h"

namespace fivepoint {

// Real roots of c3 x^3 + c2 x^2 + c1 x + c0, ascending and distinct.
//
// A leading coefficient below 1e-12 of the largest coefficient drops the
// degree (cubic -> quadratic -> linear). Roots are polished with Newton steps
// so that |p(r)| <= 1e-9 max|c| max(1, |r|)^3.
//
// Errors: kAllCoefficientsZero; kNoRealRoot on a degraded even-degree (or
// constant) polynomial without real roots.
Result<std::vector<double>> RealCubicRoots(double c3, double c2, double c1,
                                           double c0);

}  // namespace fivepoint
