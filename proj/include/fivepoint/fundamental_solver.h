#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "fivepoint/homography_solver.h"
#include "fivepoint/status.h"
#include "fivepoint/types.h"

namespace fivepoint {

using Sample2 = std::array<Correspondence, 2>;
using Sample5 = std::array<Correspondence, 5>;

// Five point pairs consistent with H: the three anchors and the midpoints of
// anchor pairs {0, 1} and {1, 2}, each mapped through H. The alpha fields are
// zero. Fails with kDepthSingular if a point maps to infinity.
Result<std::array<Correspondence, 5>> HallucinateCorrespondences(
    const Homography& H, const Sample3& anchors);

// 1/2 (|H p1 - p2| + |H^-1 p2 - p1|); infinity if either transfer is singular.
double SymmetricTransferError(const Homography& H, const Eigen::Matrix3d& inverse,
                              const Correspondence& c);

// True (reject the sample) iff both general correspondences are explained by
// H to within `threshold` pixels of symmetric transfer error.
bool IsSampleDegenerate(const Homography& H, const Sample2& generals,
                        double threshold);

struct FundamentalSolverOptions {
  bool hartley_normalization = true;
  // Drop candidates that violate the oriented epipolar constraint on the real
  // (non-hallucinated) correspondences.
  bool oriented_filter = true;
};

// Rank-deficient members of the pencil eps * E + (1 - eps) * G, obtained from
// the real roots of the cubic det(G + eps (E - G)) = 0. Vectors are row-major.
// Fails with kRankDefect when the cubic vanishes identically.
Result<std::vector<Eigen::Matrix3d>> RankTwoPencilMembers(const Vector9d& e,
                                                          const Vector9d& g);

// Coefficients (c3, c2, c1, c0) of det(G + eps M).
std::array<double, 4> PencilDeterminantCubic(const Eigen::Matrix3d& G,
                                             const Eigen::Matrix3d& M);

// Fundamental matrices compatible with H and two further correspondences.
// The epipolar system stacks the five hallucinated pairs, the two general
// pairs and the three anchors (10 x 9) and has a two-dimensional null space;
// the rank constraint selects 1-3 members. Errors: kDepthSingular,
// kRankDefect, kNoValidCandidate.
Result<std::vector<FundamentalMatrix>> FundamentalFromHomographyAndPoints(
    const Homography& H, const Sample3& anchors, const Sample2& generals,
    const FundamentalSolverOptions& options = {});

struct FivePointOptions {
  // Symmetric transfer threshold (pixels) for rejecting samples whose general
  // points lie on the plane. Zero disables the check.
  double degeneracy_threshold = 0.0;
  // Estimate the homography from each of the three rotation pairs instead of
  // only the closest pair, and return the union of the candidates.
  bool use_all_rotation_pairs = false;
  FundamentalSolverOptions fundamental;
};

// Three co-planar correspondences (given by `plane_indices`, which must carry
// valid rotations) and two in general position.
Result<std::vector<FundamentalMatrix>> SolveFivePoint(
    const Sample5& sample, const std::array<int, 3>& plane_indices,
    const FivePointOptions& options = {});

// As SolveFivePoint, with every rejection reported as an empty list.
std::vector<FundamentalMatrix> FivePointFundamental(
    const Sample5& sample, const std::array<int, 3>& plane_indices,
    const FivePointOptions& options = {});

// Classical seven-point algorithm on exactly seven correspondences. Returns
// every real-root candidate (1-3). Errors: kInvalidArgument, kRankDefect.
Result<std::vector<FundamentalMatrix>> SevenPoint(
    std::span<const Correspondence> sample, bool hartley_normalization = true);

// Normalized eight-point least squares on at least eight correspondences,
// followed by rank-2 projection. Errors: kInvalidArgument, kRankDefect.
Result<FundamentalMatrix> EightPoint(std::span<const Correspondence> sample,
                                     bool hartley_normalization = true);

}  // namespace fivepoint
