#pragma once

#include <span>

#include <Eigen/Core>

#include "fivepoint/types.h"

namespace fivepoint {

struct EpipolarDistance {
  double pixels = 0.0;
  // Set when a point coincides with its epipole, in which case the line
  // direction is undefined and `pixels` is 0 by convention.
  bool at_epipole = false;
};

// Mean of the point-to-epipolar-line distances in both images:
//   r = p2^T F p1,
//   d = 1/2 (|r| / ||(F p1)_{1,2}|| + |r| / ||(F^T p2)_{1,2}||).
// Invariant to the scale (and sign) of F.
EpipolarDistance SymmetricEpipolarDistance(const FundamentalMatrix& F,
                                           const Correspondence& c);

// Convenience for scoring loops: the pixel distance only.
double SymmetricEpipolarError(const FundamentalMatrix& F,
                              const Correspondence& c);

// The epipole in image 2, e2^T F = 0, unit norm.
Eigen::Vector3d LeftEpipole(const FundamentalMatrix& F);

// The epipole in image 1, F e1 = 0, unit norm.
Eigen::Vector3d RightEpipole(const FundamentalMatrix& F);

// Oriented epipolar (cheirality) test. For every correspondence the vectors
// e2 x p2 and F p1 must be parallel with the same sign of proportionality
// across the whole set. Correspondences whose sign is undefined (point at the
// epipole) are skipped.
bool OrientedEpipolarCheck(const FundamentalMatrix& F,
                           std::span<const Correspondence> correspondences);

}  // namespace fivepoint
