#include "support/oracles.h"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "fivepoint/affine.h"

namespace fivepoint {
namespace testing {

Eigen::Matrix2d NumericJacobian(const Homography& H, const Eigen::Vector2d& p1,
                                double step) {
  Eigen::Matrix2d J;
  for (int k = 0; k < 2; ++k) {
    Eigen::Vector2d delta = Eigen::Vector2d::Zero();
    delta(k) = step;
    J.col(k) = (H.Transfer(p1 + delta) - H.Transfer(p1 - delta)) / (2 * step);
  }
  return J;
}

LinearBetaGamma SolveBetaGammaLinear(const Vector9d& b, const Vector9d& c,
                                     const Vector9d& d,
                                     const Correspondence& first,
                                     const Correspondence& second) {
  Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
  Eigen::Vector4d rhs;
  const std::array<const Correspondence*, 2> pair = {&first, &second};
  for (int i = 0; i < 2; ++i) {
    const Correspondence& x = *pair[i];
    const double ca = std::cos(x.alpha);
    const double sa = std::sin(x.alpha);
    A(2 * i, 0) = b(0) - x.u2 * b(6);
    A(2 * i, 1) = c(0) - x.u2 * c(6);
    A(2 * i, 2 + i) = -ca;
    rhs(2 * i) = -(d(0) - x.u2 * d(6));
    A(2 * i + 1, 0) = b(3) - x.v2 * b(6);
    A(2 * i + 1, 1) = c(3) - x.v2 * c(6);
    A(2 * i + 1, 2 + i) = -sa;
    rhs(2 * i + 1) = -(d(3) - x.v2 * d(6));
  }
  const Eigen::FullPivLU<Eigen::Matrix4d> lu(A);
  const Eigen::Vector4d x = lu.solve(rhs);
  LinearBetaGamma result;
  result.beta = x(0);
  result.gamma = x(1);
  result.t = {x(2), x(3)};
  result.condition = A.norm() * A.inverse().norm();
  return result;
}

std::vector<double> CompanionCubicRoots(double c3, double c2, double c1,
                                        double c0, double imag_tol) {
  Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
  companion(0, 0) = -c2 / c3;
  companion(0, 1) = -c1 / c3;
  companion(0, 2) = -c0 / c3;
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  const Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, false);
  std::vector<double> roots;
  for (int i = 0; i < 3; ++i) {
    const auto value = solver.eigenvalues()(i);
    if (std::abs(value.imag()) <= imag_tol * std::max(1.0, std::abs(value))) {
      roots.push_back(value.real());
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Homography RandomHomography(Rng& rng) {
  Eigen::Matrix3d H;
  H << 1.0 + 0.3 * rng.Normal(), 0.3 * rng.Normal(), 50.0 * rng.Normal(),
      0.3 * rng.Normal(), 1.0 + 0.3 * rng.Normal(), 50.0 * rng.Normal(),
      1e-3 * rng.Normal(), 1e-3 * rng.Normal(), 1.0;
  return Homography(H);
}

std::optional<Correspondence> CorrespondenceThrough(const Homography& H,
                                                    const Eigen::Vector2d& p1) {
  const auto affine = AffineFromHomography(H, p1);
  if (!affine) {
    return std::nullopt;
  }
  const auto decomposition = DecomposeAffine(*affine);
  if (!decomposition) {
    return std::nullopt;
  }
  const Eigen::Vector2d p2 = H.Transfer(p1);
  return Correspondence{p1.x(), p1.y(), p2.x(), p2.y(), decomposition->alpha};
}

SyntheticScene SceneOrDie(Motion motion, uint64_t seed,
                          const SceneOptions& options) {
  for (uint64_t k = 0; k < 10; ++k) {
    auto scene = GenerateScene(motion, Rng::DeriveSeed(seed, k), options);
    if (scene) {
      return std::move(*scene);
    }
  }
  std::cerr << "scene generation failed for seed " << seed << "\n";
  std::abort();
}

double BestCanonicalDistance(const std::vector<FundamentalMatrix>& candidates,
                             const FundamentalMatrix& truth) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& F : candidates) {
    best = std::min(best, CanonicalDistance(F.matrix(), truth.matrix()));
  }
  return best;
}

Sample5 FivePointSample(const SyntheticScene& scene, int plane,
                        const std::array<int, 3>& on_plane,
                        const std::array<int, 2>& off_plane) {
  const int per_plane = scene.options.points_per_plane;
  Sample5 sample;
  for (int k = 0; k < 3; ++k) {
    sample[k] = scene.correspondences[plane * per_plane + on_plane[k]];
  }
  for (int k = 0; k < 2; ++k) {
    sample[3 + k] = scene.correspondences[off_plane[k]];
  }
  return sample;
}

}  // namespace testing
}  // namespace fivepoint
