#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "fivepoint/random.h"
#include "fivepoint/robust.h"
#include "fivepoint/status.h"
#include "fivepoint/types.h"

namespace fivepoint {

enum class Motion { kRandom, kSideways, kForward };

std::string_view MotionName(Motion motion);
std::optional<Motion> ParseMotion(std::string_view name);

using ProjectionMatrix = Eigen::Matrix<double, 3, 4>;

struct CameraPair {
  ProjectionMatrix P1;
  ProjectionMatrix P2;

  Eigen::Vector3d Center1() const;
  Eigen::Vector3d Center2() const;
  // [e2]_x P2 P1^+ with e2 = P2 C1.
  FundamentalMatrix FundamentalFromProjections() const;
  // Depth of X in the given camera (1 or 2), with P normalized so that the
  // third row of its left block has unit norm and positive determinant.
  double Depth(int camera, const Eigen::Vector3d& X) const;
};

struct ScenePlane {
  // (n, d) with n^T X + d = 0 and |n| = 1.
  Eigen::Vector4d parameters;
  // Homography induced between the two images.
  Homography homography;
};

// Every length is in scene units; the cameras sit `camera_distance` from the
// origin and the planes live inside a ball of radius `scene_radius`.
struct SceneOptions {
  int image_width = 640;
  int image_height = 480;
  double focal_length = 800.0;
  int num_planes = 5;
  int points_per_plane = 4;
  double camera_distance = 10.0;
  // Camera displacement for the sideways and forward regimes.
  double baseline = 2.0;
  // Standard deviation of the Gaussian perturbation of camera centres for
  // the sideways and forward regimes.
  double camera_jitter = 0.1;
  double scene_radius = 2.0;
  // Points are sampled in a disc of this radius around each plane's anchor.
  double patch_radius = 1.0;
  // Minimum cosine between a plane normal and the viewing rays of both
  // cameras.
  double min_facing_cosine = 0.3;
  // Minimum distance between image projections of points of one plane.
  double min_point_separation = 8.0;
  int max_retries = 100;
};

struct SyntheticScene {
  SceneOptions options;
  CameraPair cameras;
  std::vector<ScenePlane> planes;
  // Plane k owns points [k * points_per_plane, (k + 1) * points_per_plane).
  std::vector<Eigen::Vector3d> points3d;
  // Noise-free, with alpha from the plane homography's local affine frame.
  std::vector<Correspondence> correspondences;
  FundamentalMatrix gt_F;

  int PlaneOf(size_t index) const {
    return static_cast<int>(index) / options.points_per_plane;
  }
};

// Two cameras per motion regime and `num_planes` random planes sampled at
// `points_per_plane` locations each, all visible in front of both cameras.
//   random:   centres uniform on the sphere of radius camera_distance, both
//             looking at the origin;
//   sideways: centres at (-/+ baseline/2, 0, -camera_distance), identity
//             rotation;
//   forward:  centres at (0, 0, -camera_distance) and
//             (0, 0, -camera_distance + baseline), identity rotation;
// with camera_jitter noise on the sideways/forward centres.
// Fails with kRetryExhausted if no valid layout is found.
Result<SyntheticScene> GenerateScene(Motion motion, uint64_t seed,
                                     const SceneOptions& options = {});

// Gaussian noise of `sigma` pixels on all four coordinates. The rotations are
// contaminated through the plane's least-squares affine fit: the change of
// its linear part between clean and noisy points is added to each point's
// ground-truth local affine frame before alpha is read off.
std::vector<Correspondence> AddNoise(const SyntheticScene& scene, double sigma,
                                     uint64_t seed);

// Least-squares normalized DLT homography from four or more correspondences.
Result<Homography> FitHomography(std::span<const Correspondence> data);

struct OutlierDatasetOptions {
  SceneOptions scene;
  size_t num_outliers = 100;
  double sigma = 0.5;
};

struct OutlierDataset {
  SyntheticScene scene;
  std::vector<Correspondence> data;  // shuffled inliers and outliers
  std::vector<bool> is_inlier;
};

// A scene plus uniformly random outliers (both points uniform in the image,
// alpha uniform) with noise on the inliers.
Result<OutlierDataset> GenerateOutlierDataset(
    Motion motion, uint64_t seed, const OutlierDatasetOptions& options);

struct TrialOutcome {
  bool ok = false;
  double error = 0.0;
};

// Draw a minimal sample for `solver` (five-point: three points of one plane
// plus two from other planes), solve on `noisy`, and report the mean
// symmetric epipolar distance of the best candidate on the correspondences
// not in the sample.
TrialOutcome RunMinimalTrial(const SyntheticScene& scene,
                             std::span<const Correspondence> noisy,
                             SolverKind solver, Rng& sample_rng);

struct SweepRow {
  Motion motion = Motion::kRandom;
  double sigma = 0.0;
  SolverKind solver = SolverKind::kFivePoint;
  size_t trials_ok = 0;
  size_t trials_dropped = 0;
  double mean_error_px = 0.0;
  double median_error_px = 0.0;
};

// For every (sigma, solver) pair: `trials` scenes (trial i uses the same
// scene and sample indices for every sigma), one minimal solve per trial.
Result<std::vector<SweepRow>> RunNoiseSweep(Motion motion,
                                            std::span<const double> sigmas,
                                            size_t trials,
                                            std::span<const SolverKind> solvers,
                                            uint64_t seed,
                                            const SceneOptions& options = {});

// Header `motion,sigma,solver,trials_ok,mean_error_px,median_error_px`.
void WriteSweepCsv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace fivepoint
