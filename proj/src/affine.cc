#include "fivepoint/affine.h"

#include <cmath>

namespace fivepoint {
namespace {

constexpr double kDepthTolerance = 1e-12;
constexpr double kColumnTolerance = 1e-12;

}  // namespace

Result<LocalAffine> AffineFromHomography(const Homography& H,
                                         const Eigen::Vector2d& p1) {
  const Eigen::Matrix3d& h = H.matrix();
  const double s = h(2, 0) * p1.x() + h(2, 1) * p1.y() + h(2, 2);
  if (!(std::abs(s) > kDepthTolerance * h.norm())) {
    return ErrorCode::kDepthSingular;
  }
  const double u2 = (h(0, 0) * p1.x() + h(0, 1) * p1.y() + h(0, 2)) / s;
  const double v2 = (h(1, 0) * p1.x() + h(1, 1) * p1.y() + h(1, 2)) / s;

  LocalAffine affine;
  affine.matrix << (h(0, 0) - h(2, 0) * u2) / s, (h(0, 1) - h(2, 1) * u2) / s,
      (h(1, 0) - h(2, 0) * v2) / s, (h(1, 1) - h(2, 1) * v2) / s;
  return affine;
}

Result<AffineDecomposition> DecomposeAffine(const LocalAffine& A) {
  const Eigen::Matrix2d& a = A.matrix;
  const double scale_u = std::hypot(a(0, 0), a(1, 0));
  if (!(scale_u >= kColumnTolerance)) {
    return ErrorCode::kDegenerateAffine;
  }
  AffineDecomposition d;
  d.alpha = std::atan2(a(1, 0), a(0, 0));
  d.scale_u = scale_u;
  const double c = a(0, 0) / scale_u;
  const double s = a(1, 0) / scale_u;
  // Second column of R(alpha)^T A.
  d.shear = c * a(0, 1) + s * a(1, 1);
  d.scale_v = -s * a(0, 1) + c * a(1, 1);
  return d;
}

LocalAffine ComposeAffine(const AffineDecomposition& d) {
  const double c = std::cos(d.alpha);
  const double s = std::sin(d.alpha);
  LocalAffine affine;
  affine.matrix << d.scale_u * c, d.shear * c - d.scale_v * s, d.scale_u * s,
      d.shear * s + d.scale_v * c;
  return affine;
}

}  // namespace fivepoint
