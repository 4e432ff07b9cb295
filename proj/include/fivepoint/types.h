#pragma once

#include <Eigen/Core>

namespace fivepoint {

using Vector9d = Eigen::Matrix<double, 9, 1>;

// Wraps an angle into (-pi, pi].
double CanonicalAngle(double radians);

// A point pair together with the rotation of the detected feature between
// the two views.
struct Correspondence {
  double u1 = 0.0;
  double v1 = 0.0;
  double u2 = 0.0;
  double v2 = 0.0;
  // Orientation in image 2 minus orientation in image 1, in (-pi, pi].
  double alpha = 0.0;

  Eigen::Vector2d Point1() const { return {u1, v1}; }
  Eigen::Vector2d Point2() const { return {u2, v2}; }
  Eigen::Vector3d Homogeneous1() const { return {u1, v1, 1.0}; }
  Eigen::Vector3d Homogeneous2() const { return {u2, v2, 1.0}; }

  bool IsFinite() const;
};

// 2x2 Jacobian of the image-1 -> image-2 map at a point:
//   [a1 a2]
//   [a3 a4]
struct LocalAffine {
  Eigen::Matrix2d matrix = Eigen::Matrix2d::Identity();
};

// A = R(alpha) * [scale_u shear; 0 scale_v].
struct AffineDecomposition {
  double alpha = 0.0;
  double scale_u = 1.0;
  double scale_v = 1.0;
  double shear = 0.0;
};

// Scales a matrix to unit Frobenius norm and flips its sign so that the
// largest-magnitude entry is positive. Two matrices equal up to scale have
// equal canonical forms.
Eigen::Matrix3d CanonicalScale(const Eigen::Matrix3d& m);

// Frobenius distance between the unit-norm matrices, minimized over the sign.
double CanonicalDistance(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b);

class Homography {
 public:
  Homography() = default;
  explicit Homography(const Eigen::Matrix3d& matrix) : matrix_(matrix) {}

  // h1..h9 in row-major order.
  static Homography FromVector(const Vector9d& h);

  const Eigen::Matrix3d& matrix() const { return matrix_; }
  Vector9d AsVector() const;

  // Inhomogeneous image-2 point H*p1. Does not guard against zero depth.
  Eigen::Vector2d Transfer(const Eigen::Vector2d& p1) const;

 private:
  Eigen::Matrix3d matrix_ = Eigen::Matrix3d::Identity();
};

class FundamentalMatrix {
 public:
  FundamentalMatrix() = default;
  explicit FundamentalMatrix(const Eigen::Matrix3d& matrix) : matrix_(matrix) {}

  // f1..f9 in row-major order.
  static FundamentalMatrix FromVector(const Vector9d& f);

  const Eigen::Matrix3d& matrix() const { return matrix_; }
  Vector9d AsVector() const;

  // |det F| / ||F||^3, zero for an exactly rank-2 matrix.
  double RelativeDeterminant() const;

  // p2^T F p1.
  double AlgebraicResidual(const Correspondence& c) const {
    return c.Homogeneous2().dot(matrix_ * c.Homogeneous1());
  }

 private:
  Eigen::Matrix3d matrix_ = Eigen::Matrix3d::Zero();
};

// Similarity (translation + isotropic scale) applied to the points of one
// image before building a linear system.
struct NormalizationTransform {
  Eigen::Matrix3d matrix = Eigen::Matrix3d::Identity();

  double scale() const { return matrix(0, 0); }
  Eigen::Vector2d Apply(const Eigen::Vector2d& p) const {
    return {matrix(0, 0) * p.x() + matrix(0, 2),
            matrix(1, 1) * p.y() + matrix(1, 2)};
  }
};

}  // namespace fivepoint
