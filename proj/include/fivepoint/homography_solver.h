#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "fivepoint/status.h"
#include "fivepoint/types.h"

namespace fivepoint {

using Sample3 = std::array<Correspondence, 3>;

// Two homogeneous rows r with r . h = 0 whenever H p1 ~ p2:
//   [u1 v1 1 0 0 0 -u1u2 -v1u2 -u2]
//   [0 0 0 u1 v1 1 -u1v2 -v1v2 -v2]
std::array<Vector9d, 2> DltRows(const Correspondence& c);

// The four linear constraints that tie a homography to a full local affine
// frame A at (p1, p2), with the depth s = u1 h7 + v1 h8 + h9 kept
// homogeneous:
//   h1 - (u2 + a1 u1) h7 - a1 v1 h8 - a1 h9 = 0
//   h2 - a2 u1 h7 - (u2 + a2 v1) h8 - a2 h9 = 0
//   h4 - (v2 + a3 u1) h7 - a3 v1 h8 - a3 h9 = 0
//   h5 - a4 u1 h7 - (v2 + a4 v1) h8 - a4 h9 = 0
// Each row annihilates h for every H with H p1 ~ p2 whose Jacobian at p1
// equals A.
std::array<Vector9d, 4> AcConstraintRows(const Correspondence& c,
                                         const LocalAffine& A);

// Index pair (i < j) minimizing |p1_i - p1_j| + |p2_i - p2_j|. Ties go to the
// lexicographically smallest pair; sums within 1e-12 relative are ties.
std::array<int, 2> SelectRotationPair(const Sample3& sample);

// h = beta b + gamma c + delta d with delta fixed to 1.
struct NullSpaceCombination {
  Vector9d b = Vector9d::Zero();
  Vector9d c = Vector9d::Zero();
  Vector9d d = Vector9d::Zero();
  double beta = 0.0;
  double gamma = 0.0;
  static constexpr double kDelta = 1.0;

  Vector9d Combine() const { return beta * b + gamma * c + kDelta * d; }
};

// Rotation equations (first and third rows of the affine/homography system)
// of two correspondences after substituting h = beta b + gamma c + d. Columns
// follow the monomials
//   [beta, gamma, su1, su1*beta, su1*gamma, su2, su2*beta, su2*gamma]
// and `constants` holds the monomial-free term, so that every row satisfies
//   coefficients.row(k) . monomials + constants(k) = 0.
// Rows 0, 1 belong to the first correspondence, rows 2, 3 to the second.
struct RotationConstraintSystem {
  Eigen::Matrix<double, 4, 8> coefficients;
  Eigen::Vector4d constants;

  Eigen::Vector4d Evaluate(double beta, double gamma, double su1,
                           double su2) const;
};

RotationConstraintSystem BuildRotationConstraintSystem(
    const Vector9d& b, const Vector9d& c, const Vector9d& d,
    const Correspondence& first, const Correspondence& second);

struct BetaGamma {
  double beta = 0.0;
  double gamma = 0.0;
};

// Closed-form beta and gamma from the two rotation constraints. Only
// b, c, d entries 1, 4, 7 and the image-2 coordinates and rotations of the
// two correspondences enter. Fails with kRotationDegenerate when the shared
// denominator vanishes relative to the magnitude of its terms.
Result<BetaGamma> SolveBetaGamma(const Vector9d& b, const Vector9d& c,
                                 const Vector9d& d, const Correspondence& first,
                                 const Correspondence& second);

struct HomographyEstimate {
  Homography homography;  // unit Frobenius norm
  // Null-space combination in the normalized coordinates used internally.
  NullSpaceCombination combination;
  std::array<int, 2> rotation_pair{0, 1};
  // Signed scale along u of the two rotation-providing correspondences,
  // recovered from the estimated homography.
  std::array<double, 2> scale_u{0.0, 0.0};
};

// Homography through three co-planar correspondences using the rotations of
// `rotation_pair`. Errors: kCollinearSample, kRotationDegenerate.
Result<HomographyEstimate> EstimateHomographyFromThreeSift(
    const Sample3& sample, const std::array<int, 2>& rotation_pair);

// Uses the rotations of the two closest correspondences.
Result<HomographyEstimate> EstimateHomographyFromThreeSift(
    const Sample3& sample);

Result<Homography> HomographyFromThreeSift(const Sample3& sample);

// One homography per rotation pair; failures are skipped.
std::vector<HomographyEstimate> HomographiesFromAllRotationPairs(
    const Sample3& sample);

}  // namespace fivepoint
