#include "fivepoint/normalization.h"

#include <cmath>
#include <numbers>

namespace fivepoint {

Result<NormalizationTransform> HartleyTransform(
    std::span<const Eigen::Vector2d> points) {
  if (points.size() < 2) {
    return Error{ErrorCode::kDegeneratePointSet, "fewer than two points"};
  }
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
  for (const auto& p : points) {
    centroid += p;
  }
  centroid /= static_cast<double>(points.size());

  double mean_distance = 0.0;
  double extent = centroid.lpNorm<Eigen::Infinity>();
  for (const auto& p : points) {
    mean_distance += (p - centroid).norm();
    extent = std::max(extent, p.lpNorm<Eigen::Infinity>());
  }
  mean_distance /= static_cast<double>(points.size());
  if (!(mean_distance > 1e-12 * std::max(1.0, extent))) {
    return Error{ErrorCode::kDegeneratePointSet, "all points coincide"};
  }

  const double scale = std::numbers::sqrt2 / mean_distance;
  NormalizationTransform t;
  t.matrix << scale, 0.0, -scale * centroid.x(), 0.0, scale,
      -scale * centroid.y(), 0.0, 0.0, 1.0;
  return t;
}

Result<NormalizedPoints> HartleyNormalize(
    std::span<const Eigen::Vector2d> points) {
  auto transform = HartleyTransform(points);
  if (!transform) {
    return transform.error();
  }
  NormalizedPoints out;
  out.transform = *transform;
  out.points.reserve(points.size());
  for (const auto& p : points) {
    out.points.push_back(out.transform.Apply(p));
  }
  return out;
}

FundamentalMatrix DenormalizeFundamental(const FundamentalMatrix& normalized,
                                         const NormalizationTransform& t1,
                                         const NormalizationTransform& t2) {
  return FundamentalMatrix(t2.matrix.transpose() * normalized.matrix() *
                           t1.matrix);
}

Homography DenormalizeHomography(const Homography& normalized,
                                 const NormalizationTransform& t1,
                                 const NormalizationTransform& t2) {
  // Closed-form inverse of a similarity.
  const double k = t2.scale();
  Eigen::Matrix3d t2_inv;
  t2_inv << 1.0 / k, 0.0, -t2.matrix(0, 2) / k, 0.0, 1.0 / k,
      -t2.matrix(1, 2) / k, 0.0, 0.0, 1.0;
  return Homography(t2_inv * normalized.matrix() * t1.matrix);
}

}  // namespace fivepoint
