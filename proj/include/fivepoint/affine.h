#pragma once

#include <Eigen/Core>

#include "fivepoint/status.h"
#include "fivepoint/types.h"

namespace fivepoint {

// First-order approximation of H at p1:
//   a1 = (h1 - h7 u2) / s,  a2 = (h2 - h8 u2) / s,
//   a3 = (h4 - h7 v2) / s,  a4 = (h5 - h8 v2) / s,
// with s = u1 h7 + v1 h8 + h9 and (u2, v2) the projection of p1 through H.
// Fails with kDepthSingular when |s| <= 1e-12 * ||H||.
Result<LocalAffine> AffineFromHomography(const Homography& H,
                                         const Eigen::Vector2d& p1);

// Splits A into rotation, axis scales and shear so that
// A = R(alpha) [scale_u shear; 0 scale_v] with scale_u > 0.
// Fails with kDegenerateAffine when the first column is (numerically) zero.
Result<AffineDecomposition> DecomposeAffine(const LocalAffine& A);

LocalAffine ComposeAffine(const AffineDecomposition& decomposition);

}  // namespace fivepoint
