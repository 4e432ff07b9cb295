#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "fivepoint/status.h"
#include "fivepoint/types.h"

namespace fivepoint {

struct NormalizedPoints {
  NormalizationTransform transform;
  std::vector<Eigen::Vector2d> points;
};

// Translates the centroid to the origin and scales isotropically so that the
// mean distance from the origin is sqrt(2). Needs at least two distinct
// points, otherwise kDegeneratePointSet.
Result<NormalizedPoints> HartleyNormalize(
    std::span<const Eigen::Vector2d> points);

// Transform only; the same as HartleyNormalize(points)->transform.
Result<NormalizationTransform> HartleyTransform(
    std::span<const Eigen::Vector2d> points);

// F = T2^T Fn T1 for Fn estimated on normalized coordinates.
FundamentalMatrix DenormalizeFundamental(const FundamentalMatrix& normalized,
                                         const NormalizationTransform& t1,
                                         const NormalizationTransform& t2);

// H = T2^-1 Hn T1 for Hn estimated on normalized coordinates.
Homography DenormalizeHomography(const Homography& normalized,
                                 const NormalizationTransform& t1,
                                 const NormalizationTransform& t2);

}  // namespace fivepoint
