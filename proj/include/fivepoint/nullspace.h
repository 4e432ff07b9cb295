#pragma once

#include <vector>

#include <Eigen/Core>

#include "fivepoint/status.h"
#include "fivepoint/types.h"

namespace fivepoint {

using CoefficientMatrix = Eigen::Matrix<double, Eigen::Dynamic, 9>;

// Right singular vectors belonging to the `expected_dim` smallest singular
// values of M, ordered by decreasing singular value (the last one spans the
// direction of least residual). The vectors are orthonormal.
//
// Fails with kRankDefect when the (9 - expected_dim)-th singular value is
// below 1e-10 of the largest, i.e. the null space is larger than expected.
Result<std::vector<Vector9d>> NullSpace(const CoefficientMatrix& M,
                                        int expected_dim);

}  // namespace fivepoint
