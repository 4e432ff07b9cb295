#include "fivepoint/fundamental_solver.h"

#include <cmath>
#include <limits>

#include <Eigen/Geometry>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "fivepoint/epipolar.h"
#include "fivepoint/normalization.h"
#include "fivepoint/nullspace.h"
#include "fivepoint/polynomial.h"

namespace fivepoint {
namespace {

constexpr double kDepthTolerance = 1e-12;

Eigen::Matrix3d Cofactors(const Eigen::Matrix3d& m) {
  Eigen::Matrix3d c;
  c.row(0) = m.row(1).cross(m.row(2));
  c.row(1) = m.row(2).cross(m.row(0));
  c.row(2) = m.row(0).cross(m.row(1));
  return c;
}

Eigen::Matrix3d RowMajor(const Vector9d& v) {
  return FundamentalMatrix::FromVector(v).matrix();
}

struct Conditioning {
  NormalizationTransform t1;
  NormalizationTransform t2;
};

Result<Conditioning> ConditionFor(std::span<const Correspondence> data,
                                  bool enabled) {
  Conditioning out;
  if (!enabled) {
    return out;
  }
  std::vector<Eigen::Vector2d> points1;
  std::vector<Eigen::Vector2d> points2;
  points1.reserve(data.size());
  points2.reserve(data.size());
  for (const auto& c : data) {
    points1.push_back(c.Point1());
    points2.push_back(c.Point2());
  }
  auto t1 = HartleyTransform(points1);
  auto t2 = HartleyTransform(points2);
  if (!t1 || !t2) {
    return ErrorCode::kRankDefect;
  }
  out.t1 = *t1;
  out.t2 = *t2;
  return out;
}

// Epipolar rows [u1u2, v1u2, u2, u1v2, v1v2, v2, u1, v1, 1] of the
// conditioned correspondences.
CoefficientMatrix EpipolarRows(std::span<const Correspondence> data,
                               const Conditioning& conditioning) {
  CoefficientMatrix rows(static_cast<Eigen::Index>(data.size()), 9);
  for (size_t i = 0; i < data.size(); ++i) {
    const Eigen::Vector2d p1 = conditioning.t1.Apply(data[i].Point1());
    const Eigen::Vector2d p2 = conditioning.t2.Apply(data[i].Point2());
    rows.row(static_cast<Eigen::Index>(i)) << p1.x() * p2.x(),
        p1.y() * p2.x(), p2.x(), p1.x() * p2.y(), p1.y() * p2.y(), p2.y(),
        p1.x(), p1.y(), 1.0;
  }
  return rows;
}

FundamentalMatrix Restore(const Eigen::Matrix3d& normalized,
                          const Conditioning& conditioning) {
  const FundamentalMatrix raw = DenormalizeFundamental(
      FundamentalMatrix(normalized), conditioning.t1, conditioning.t2);
  return FundamentalMatrix(raw.matrix() / raw.matrix().norm());
}

}  // namespace

Result<std::array<Correspondence, 5>> HallucinateCorrespondences(
    const Homography& H, const Sample3& anchors) {
  const std::array<Eigen::Vector2d, 5> points1{
      anchors[0].Point1(), anchors[1].Point1(), anchors[2].Point1(),
      0.5 * (anchors[0].Point1() + anchors[1].Point1()),
      0.5 * (anchors[1].Point1() + anchors[2].Point1())};
  const double tolerance = kDepthTolerance * H.matrix().norm();
  std::array<Correspondence, 5> out;
  for (int i = 0; i < 5; ++i) {
    const Eigen::Vector3d q = H.matrix() * points1[i].homogeneous();
    if (!(std::abs(q.z()) > tolerance)) {
      return ErrorCode::kDepthSingular;
    }
    out[i] = Correspondence{points1[i].x(), points1[i].y(), q.x() / q.z(),
                            q.y() / q.z(), 0.0};
  }
  return out;
}

double SymmetricTransferError(const Homography& H,
                              const Eigen::Matrix3d& inverse,
                              const Correspondence& c) {
  const Eigen::Vector3d forward = H.matrix() * c.Homogeneous1();
  const Eigen::Vector3d backward = inverse * c.Homogeneous2();
  if (forward.z() == 0.0 || backward.z() == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return 0.5 * ((forward.hnormalized() - c.Point2()).norm() +
                (backward.hnormalized() - c.Point1()).norm());
}

bool IsSampleDegenerate(const Homography& H, const Sample2& generals,
                        double threshold) {
  const Eigen::Matrix3d inverse = H.matrix().inverse();
  for (const auto& c : generals) {
    if (!(SymmetricTransferError(H, inverse, c) < threshold)) {
      return false;
    }
  }
  return true;
}

std::array<double, 4> PencilDeterminantCubic(const Eigen::Matrix3d& G,
                                             const Eigen::Matrix3d& M) {
  return {M.determinant(), Cofactors(M).cwiseProduct(G).sum(),
          Cofactors(G).cwiseProduct(M).sum(), G.determinant()};
}

Result<std::vector<Eigen::Matrix3d>> RankTwoPencilMembers(const Vector9d& e,
                                                          const Vector9d& g) {
  const Eigen::Matrix3d E = RowMajor(e);
  const Eigen::Matrix3d G = RowMajor(g);
  const Eigen::Matrix3d M = E - G;
  const auto cubic = PencilDeterminantCubic(G, M);
  const auto roots = RealCubicRoots(cubic[0], cubic[1], cubic[2], cubic[3]);
  if (!roots) {
    return ErrorCode::kRankDefect;
  }
  std::vector<Eigen::Matrix3d> members;
  members.reserve(roots->size());
  for (const double eps : *roots) {
    members.push_back(eps * E + (1.0 - eps) * G);
  }
  return members;
}

Result<std::vector<FundamentalMatrix>> FundamentalFromHomographyAndPoints(
    const Homography& H, const Sample3& anchors, const Sample2& generals,
    const FundamentalSolverOptions& options) {
  const auto hallucinated = HallucinateCorrespondences(H, anchors);
  if (!hallucinated) {
    return hallucinated.error();
  }
  std::array<Correspondence, 10> system;
  std::copy(hallucinated->begin(), hallucinated->end(), system.begin());
  system[5] = generals[0];
  system[6] = generals[1];
  std::copy(anchors.begin(), anchors.end(), system.begin() + 7);

  const auto conditioning = ConditionFor(system, options.hartley_normalization);
  if (!conditioning) {
    return conditioning.error();
  }
  const auto basis = NullSpace(EpipolarRows(system, *conditioning), 2);
  if (!basis) {
    return basis.error();
  }
  const auto members = RankTwoPencilMembers((*basis)[0], (*basis)[1]);
  if (!members) {
    return members.error();
  }

  const std::array<Correspondence, 5> real{anchors[0], anchors[1], anchors[2],
                                           generals[0], generals[1]};
  std::vector<FundamentalMatrix> candidates;
  for (const auto& member : *members) {
    FundamentalMatrix F = Restore(member, *conditioning);
    if (options.oriented_filter && !OrientedEpipolarCheck(F, real)) {
      continue;
    }
    candidates.push_back(F);
  }
  if (candidates.empty()) {
    return ErrorCode::kNoValidCandidate;
  }
  return candidates;
}

Result<std::vector<FundamentalMatrix>> SolveFivePoint(
    const Sample5& sample, const std::array<int, 3>& plane_indices,
    const FivePointOptions& options) {
  Sample3 plane;
  Sample2 generals;
  std::array<bool, 5> on_plane{};
  for (int k = 0; k < 3; ++k) {
    const int index = plane_indices[k];
    if (index < 0 || index >= 5 || on_plane[index]) {
      return Error{ErrorCode::kInvalidArgument, "bad plane indices"};
    }
    on_plane[index] = true;
    plane[k] = sample[index];
  }
  for (int i = 0, g = 0; i < 5; ++i) {
    if (!on_plane[i]) {
      generals[g++] = sample[i];
    }
  }

  std::vector<HomographyEstimate> homographies;
  if (options.use_all_rotation_pairs) {
    homographies = HomographiesFromAllRotationPairs(plane);
    if (homographies.empty()) {
      return ErrorCode::kRotationDegenerate;
    }
  } else {
    auto estimate = EstimateHomographyFromThreeSift(plane);
    if (!estimate) {
      return estimate.error();
    }
    homographies.push_back(std::move(*estimate));
  }

  std::vector<FundamentalMatrix> candidates;
  Error last_error{ErrorCode::kDegenerateSample, {}};
  for (const auto& estimate : homographies) {
    if (options.degeneracy_threshold > 0.0 &&
        IsSampleDegenerate(estimate.homography, generals,
                           options.degeneracy_threshold)) {
      continue;
    }
    auto solutions = FundamentalFromHomographyAndPoints(
        estimate.homography, plane, generals, options.fundamental);
    if (!solutions) {
      last_error = solutions.error();
      continue;
    }
    candidates.insert(candidates.end(), solutions->begin(), solutions->end());
  }
  if (candidates.empty()) {
    return last_error;
  }
  return candidates;
}

std::vector<FundamentalMatrix> FivePointFundamental(
    const Sample5& sample, const std::array<int, 3>& plane_indices,
    const FivePointOptions& options) {
  auto result = SolveFivePoint(sample, plane_indices, options);
  if (!result) {
    return {};
  }
  return std::move(*result);
}

Result<std::vector<FundamentalMatrix>> SevenPoint(
    std::span<const Correspondence> sample, bool hartley_normalization) {
  if (sample.size() != 7) {
    return Error{ErrorCode::kInvalidArgument, "seven correspondences needed"};
  }
  const auto conditioning = ConditionFor(sample, hartley_normalization);
  if (!conditioning) {
    return conditioning.error();
  }
  const auto basis = NullSpace(EpipolarRows(sample, *conditioning), 2);
  if (!basis) {
    return basis.error();
  }
  const auto members = RankTwoPencilMembers((*basis)[0], (*basis)[1]);
  if (!members) {
    return members.error();
  }
  std::vector<FundamentalMatrix> candidates;
  candidates.reserve(members->size());
  for (const auto& member : *members) {
    candidates.push_back(Restore(member, *conditioning));
  }
  return candidates;
}

Result<FundamentalMatrix> EightPoint(std::span<const Correspondence> sample,
                                     bool hartley_normalization) {
  if (sample.size() < 8) {
    return Error{ErrorCode::kInvalidArgument,
                 "at least eight correspondences needed"};
  }
  const auto conditioning = ConditionFor(sample, hartley_normalization);
  if (!conditioning) {
    return conditioning.error();
  }
  const auto basis = NullSpace(EpipolarRows(sample, *conditioning), 1);
  if (!basis) {
    return basis.error();
  }
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      RowMajor((*basis)[0]), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Vector3d sigma = svd.singularValues();
  sigma(2) = 0.0;
  const Eigen::Matrix3d rank_two =
      svd.matrixU() * sigma.asDiagonal() * svd.matrixV().transpose();
  return Restore(rank_two, *conditioning);
}

}  // namespace fivepoint
