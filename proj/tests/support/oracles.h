#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "fivepoint/fundamental_solver.h"
#include "fivepoint/random.h"
#include "fivepoint/synthetic.h"
#include "fivepoint/types.h"

namespace fivepoint {
namespace testing {

// Central-difference Jacobian of p1 -> H p1 (inhomogeneous).
Eigen::Matrix2d NumericJacobian(const Homography& H, const Eigen::Vector2d& p1,
                                double step = 1e-6);

// Solves the rotation equations of two correspondences as a 4x4 linear system
// in (beta, gamma, t1, t2), t_i being the product of scale and depth:
//   (b1 - u2 b7) beta + (c1 - u2 c7) gamma - cos(alpha) t = -(d1 - u2 d7)
//   (b4 - v2 b7) beta + (c4 - v2 c7) gamma - sin(alpha) t = -(d4 - v2 d7)
struct LinearBetaGamma {
  double beta = 0.0;
  double gamma = 0.0;
  std::array<double, 2> t{0.0, 0.0};
  double condition = 0.0;
};
LinearBetaGamma SolveBetaGammaLinear(const Vector9d& b, const Vector9d& c,
                                     const Vector9d& d,
                                     const Correspondence& first,
                                     const Correspondence& second);

// Real eigenvalues of the companion matrix of c3 x^3 + c2 x^2 + c1 x + c0.
std::vector<double> CompanionCubicRoots(double c3, double c2, double c1,
                                        double c0, double imag_tol = 1e-9);

// Random homography close to a plausible image-to-image map.
Homography RandomHomography(Rng& rng);

// Correspondence (p1, H p1) with alpha taken from H's local frame at p1.
std::optional<Correspondence> CorrespondenceThrough(const Homography& H,
                                                    const Eigen::Vector2d& p1);

// GenerateScene, retrying derived seeds; aborts if all of them fail.
SyntheticScene SceneOrDie(Motion motion, uint64_t seed,
                          const SceneOptions& options = {});

// Smallest canonical distance between a candidate and `truth`; infinity
// for an empty list.
double BestCanonicalDistance(const std::vector<FundamentalMatrix>& candidates,
                             const FundamentalMatrix& truth);

// Five-point sample: points `on_plane` (local indices) of plane `plane`
// followed by the scene points `off_plane` (global indices).
Sample5 FivePointSample(const SyntheticScene& scene, int plane,
                        const std::array<int, 3>& on_plane,
                        const std::array<int, 2>& off_plane);

}  // namespace testing
}  // namespace fivepoint
