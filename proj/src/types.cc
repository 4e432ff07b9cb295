#include "fivepoint/types.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

namespace fivepoint {

double CanonicalAngle(double radians) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::remainder(radians, kTwoPi);
  if (wrapped <= -std::numbers::pi) {
    wrapped += kTwoPi;
  }
  return wrapped;
}

bool Correspondence::IsFinite() const {
  return std::isfinite(u1) && std::isfinite(v1) && std::isfinite(u2) &&
         std::isfinite(v2) && std::isfinite(alpha);
}

Eigen::Matrix3d CanonicalScale(const Eigen::Matrix3d& m) {
  const double norm = m.norm();
  if (norm == 0.0) {
    return m;
  }
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  m.cwiseAbs().maxCoeff(&row, &col);
  const double sign = m(row, col) < 0.0 ? -1.0 : 1.0;
  return (sign / norm) * m;
}

double CanonicalDistance(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
  // Near-ties between the largest entries of a and b can pick opposite signs,
  // so compare against both signs of the unit-norm matrices.
  const Eigen::Matrix3d an = a / a.norm();
  const Eigen::Matrix3d bn = b / b.norm();
  return std::min((an - bn).norm(), (an + bn).norm());
}

namespace {

Eigen::Matrix3d RowMajor(const Vector9d& v) {
  Eigen::Matrix3d m;
  m << v(0), v(1), v(2), v(3), v(4), v(5), v(6), v(7), v(8);
  return m;
}

Vector9d Flatten(const Eigen::Matrix3d& m) {
  Vector9d v;
  v << m(0, 0), m(0, 1), m(0, 2), m(1, 0), m(1, 1), m(1, 2), m(2, 0), m(2, 1),
      m(2, 2);
  return v;
}

}  // namespace

Homography Homography::FromVector(const Vector9d& h) {
  return Homography(RowMajor(h));
}

Vector9d Homography::AsVector() const { return Flatten(matrix_); }

Eigen::Vector2d Homography::Transfer(const Eigen::Vector2d& p1) const {
  const Eigen::Vector3d q = matrix_ * p1.homogeneous();
  return q.hnormalized();
}

FundamentalMatrix FundamentalMatrix::FromVector(const Vector9d& f) {
  return FundamentalMatrix(RowMajor(f));
}

Vector9d FundamentalMatrix::AsVector() const { return Flatten(matrix_); }

double FundamentalMatrix::RelativeDeterminant() const {
  const double norm = matrix_.norm();
  if (norm == 0.0) {
    return 0.0;
  }
  return std::abs(matrix_.determinant()) / (norm * norm * norm);
}

}  // namespace fivepoint
