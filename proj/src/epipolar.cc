#include "fivepoint/epipolar.h"

#include <cmath>

#include <Eigen/Geometry>

namespace fivepoint {
namespace {

constexpr double kLineNormTolerance = 1e-14;

// Null vector of a rank-2 3x3 matrix given by its columns: the largest cross
// product of two columns.
Eigen::Vector3d NullOfColumns(const Eigen::Matrix3d& m) {
  const Eigen::Vector3d c01 = m.col(0).cross(m.col(1));
  const Eigen::Vector3d c02 = m.col(0).cross(m.col(2));
  const Eigen::Vector3d c12 = m.col(1).cross(m.col(2));
  const double n01 = c01.squaredNorm();
  const double n02 = c02.squaredNorm();
  const double n12 = c12.squaredNorm();
  if (n01 >= n02 && n01 >= n12) {
    return c01.normalized();
  }
  if (n02 >= n12) {
    return c02.normalized();
  }
  return c12.normalized();
}

}  // namespace

EpipolarDistance SymmetricEpipolarDistance(const FundamentalMatrix& F,
                                           const Correspondence& c) {
  const Eigen::Matrix3d& f = F.matrix();
  const Eigen::Vector3d p1 = c.Homogeneous1();
  const Eigen::Vector3d p2 = c.Homogeneous2();
  const Eigen::Vector3d line2 = f * p1;
  const Eigen::Vector3d line1 = f.transpose() * p2;
  const double residual = std::abs(p2.dot(line2));
  const double norm2 = line2.head<2>().norm();
  const double norm1 = line1.head<2>().norm();
  // Scale-free comparison: relative to the magnitude of F.
  const double tolerance = kLineNormTolerance * f.norm();
  if (!(norm1 > tolerance) || !(norm2 > tolerance)) {
    return {0.0, true};
  }
  return {0.5 * (residual / norm2 + residual / norm1), false};
}

double SymmetricEpipolarError(const FundamentalMatrix& F,
                              const Correspondence& c) {
  return SymmetricEpipolarDistance(F, c).pixels;
}

Eigen::Vector3d LeftEpipole(const FundamentalMatrix& F) {
  return NullOfColumns(F.matrix());
}

Eigen::Vector3d RightEpipole(const FundamentalMatrix& F) {
  return NullOfColumns(F.matrix().transpose());
}

bool OrientedEpipolarCheck(const FundamentalMatrix& F,
                           std::span<const Correspondence> correspondences) {
  const Eigen::Vector3d e2 = LeftEpipole(F);
  int reference_sign = 0;
  for (const auto& c : correspondences) {
    const Eigen::Vector3d line_from_epipole = e2.cross(c.Homogeneous2());
    const Eigen::Vector3d line = F.matrix() * c.Homogeneous1();
    const double dot = line_from_epipole.dot(line);
    const double scale = line_from_epipole.norm() * line.norm();
    if (!(std::abs(dot) > 1e-12 * scale)) {
      continue;
    }
    const int sign = dot > 0.0 ? 1 : -1;
    if (reference_sign == 0) {
      reference_sign = sign;
    } else if (sign != reference_sign) {
      return false;
    }
  }
  return true;
}

}  // namespace fivepoint
