#include "fivepoint/synthetic.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <Eigen/Geometry>
#include <Eigen/LU>
#include <Eigen/QR>

#include "fivepoint/affine.h"
#include "fivepoint/epipolar.h"
#include "fivepoint/fundamental_solver.h"
#include "fivepoint/normalization.h"
#include "fivepoint/nullspace.h"

namespace fivepoint {
namespace {

Eigen::Vector3d RandomUnitVector(Rng& rng) {
  Eigen::Vector3d v;
  do {
    v << rng.Normal(), rng.Normal(), rng.Normal();
  } while (v.norm() < 1e-6);
  return v.normalized();
}

Eigen::Vector3d RandomInBall(Rng& rng, double radius) {
  Eigen::Vector3d v;
  do {
    v << rng.Uniform(-1, 1), rng.Uniform(-1, 1), rng.Uniform(-1, 1);
  } while (v.squaredNorm() > 1.0);
  return radius * v;
}

Eigen::Matrix3d Intrinsics(const SceneOptions& options) {
  Eigen::Matrix3d K;
  K << options.focal_length, 0.0, 0.5 * options.image_width, 0.0,
      options.focal_length, 0.5 * options.image_height, 0.0, 0.0, 1.0;
  return K;
}

// Camera axes: x right, y down, z along the optical axis.
ProjectionMatrix MakeCamera(const Eigen::Matrix3d& K, const Eigen::Matrix3d& R,
                            const Eigen::Vector3d& center) {
  ProjectionMatrix Rt;
  Rt.leftCols<3>() = R;
  Rt.col(3) = -R * center;
  return K * Rt;
}

Eigen::Matrix3d LookAtOrigin(const Eigen::Vector3d& center,
                             const Eigen::Vector3d& up) {
  const Eigen::Vector3d z = (-center).normalized();
  const Eigen::Vector3d x = z.cross(up).normalized();
  const Eigen::Vector3d y = z.cross(x);
  Eigen::Matrix3d R;
  R.row(0) = x.transpose();
  R.row(1) = y.transpose();
  R.row(2) = z.transpose();
  return R;
}

CameraPair MakeCameras(Motion motion, Rng& rng, const SceneOptions& options) {
  const Eigen::Matrix3d K = Intrinsics(options);
  CameraPair cameras;
  if (motion == Motion::kRandom) {
    std::array<Eigen::Matrix3d, 2> rotations;
    std::array<Eigen::Vector3d, 2> centers;
    for (int i = 0; i < 2; ++i) {
      centers[i] = options.camera_distance * RandomUnitVector(rng);
      Eigen::Vector3d up;
      do {
        up = RandomUnitVector(rng);
      } while (std::abs(up.dot(centers[i].normalized())) > 0.9);
      rotations[i] = LookAtOrigin(centers[i], up);
    }
    cameras.P1 = MakeCamera(K, rotations[0], centers[0]);
    cameras.P2 = MakeCamera(K, rotations[1], centers[1]);
    return cameras;
  }

  const double d = options.camera_distance;
  const double b = options.baseline;
  Eigen::Vector3d c1(0.0, 0.0, -d);
  Eigen::Vector3d c2(0.0, 0.0, -d);
  if (motion == Motion::kSideways) {
    c1.x() = -0.5 * b;
    c2.x() = 0.5 * b;
  } else {
    c2.z() += b;
  }
  if (options.camera_jitter > 0.0) {
    for (int k = 0; k < 3; ++k) {
      c1(k) += options.camera_jitter * rng.Normal();
      c2(k) += options.camera_jitter * rng.Normal();
    }
  }
  cameras.P1 = MakeCamera(K, Eigen::Matrix3d::Identity(), c1);
  cameras.P2 = MakeCamera(K, Eigen::Matrix3d::Identity(), c2);
  return cameras;
}

Eigen::Vector3d CenterOf(const ProjectionMatrix& P) {
  return -P.leftCols<3>().inverse() * P.col(3);
}

// H = e2 n^T M1^-1 - (n^T C1 + d) M2 M1^-1 for the plane n^T X + d = 0.
Homography PlaneHomography(const CameraPair& cameras,
                           const Eigen::Vector4d& plane) {
  const Eigen::Matrix3d M1_inv = cameras.P1.leftCols<3>().inverse();
  const Eigen::Matrix3d M2 = cameras.P2.leftCols<3>();
  const Eigen::Vector3d C1 = cameras.Center1();
  const Eigen::Vector3d n = plane.head<3>();
  const Eigen::Vector3d e2 = M2 * C1 + cameras.P2.col(3);
  const Eigen::Matrix3d H =
      e2 * n.transpose() * M1_inv - (n.dot(C1) + plane(3)) * M2 * M1_inv;
  return Homography(H / H.norm());
}

bool InsideImage(const Eigen::Vector2d& p, const SceneOptions& options) {
  return p.x() >= 0.0 && p.y() >= 0.0 && p.x() < options.image_width &&
         p.y() < options.image_height;
}

struct PlanePatch {
  Eigen::Vector4d parameters;
  std::vector<Eigen::Vector3d> points;
};

std::optional<PlanePatch> SamplePlane(const CameraPair& cameras, Rng& rng,
                                      const SceneOptions& options) {
  const Eigen::Vector3d C1 = cameras.Center1();
  const Eigen::Vector3d C2 = cameras.Center2();
  for (int attempt = 0; attempt < options.max_retries; ++attempt) {
    const Eigen::Vector3d anchor = RandomInBall(rng, options.scene_radius);
    Eigen::Vector3d normal = RandomUnitVector(rng);
    if (normal.dot(C1 - anchor) < 0.0) {
      normal = -normal;
    }
    if (normal.dot((C1 - anchor).normalized()) < options.min_facing_cosine ||
        normal.dot((C2 - anchor).normalized()) < options.min_facing_cosine) {
      continue;
    }
    const Eigen::Vector3d e1 = normal.unitOrthogonal();
    const Eigen::Vector3d e2 = normal.cross(e1);

    PlanePatch patch;
    patch.parameters << normal, -normal.dot(anchor);
    std::vector<Eigen::Vector2d> projections1;
    std::vector<Eigen::Vector2d> projections2;
    bool valid = true;
    for (int i = 0; i < options.points_per_plane && valid; ++i) {
      bool placed = false;
      for (int tries = 0; tries < options.max_retries && !placed; ++tries) {
        const double radius =
            options.patch_radius * std::sqrt(rng.Uniform01());
        const double angle = rng.Uniform(0.0, 2.0 * std::numbers::pi);
        const Eigen::Vector3d X =
            anchor + radius * (std::cos(angle) * e1 + std::sin(angle) * e2);
        if (cameras.Depth(1, X) <= 0.5 || cameras.Depth(2, X) <= 0.5) {
          continue;
        }
        const Eigen::Vector2d q1 = (cameras.P1 * X.homogeneous()).hnormalized();
        const Eigen::Vector2d q2 = (cameras.P2 * X.homogeneous()).hnormalized();
        if (!InsideImage(q1, options) || !InsideImage(q2, options)) {
          continue;
        }
        bool separated = true;
        for (size_t j = 0; j < projections1.size() && separated; ++j) {
          separated =
              (projections1[j] - q1).norm() >= options.min_point_separation &&
              (projections2[j] - q2).norm() >= options.min_point_separation;
        }
        if (!separated) {
          continue;
        }
        projections1.push_back(q1);
        projections2.push_back(q2);
        patch.points.push_back(X);
        placed = true;
      }
      valid = placed;
    }
    if (valid) {
      return patch;
    }
  }
  return std::nullopt;
}

// Linear part of the least-squares affine map p1 -> p2 over `data`.
Eigen::Matrix2d FitAffineLinearPart(std::span<const Correspondence> data) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * data.size(), 6);
  Eigen::VectorXd b(2 * data.size());
  for (size_t i = 0; i < data.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(2 * i);
    A.row(r) << data[i].u1, data[i].v1, 1.0, 0.0, 0.0, 0.0;
    A.row(r + 1) << 0.0, 0.0, 0.0, data[i].u1, data[i].v1, 1.0;
    b(r) = data[i].u2;
    b(r + 1) = data[i].v2;
  }
  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  Eigen::Matrix2d linear;
  linear << x(0), x(1), x(3), x(4);
  return linear;
}

}  // namespace

std::string_view MotionName(Motion motion) {
  switch (motion) {
    case Motion::kRandom:
      return "random";
    case Motion::kSideways:
      return "sideways";
    case Motion::kForward:
      return "forward";
  }
  return "unknown";
}

std::optional<Motion> ParseMotion(std::string_view name) {
  if (name == "random") return Motion::kRandom;
  if (name == "sideways") return Motion::kSideways;
  if (name == "forward") return Motion::kForward;
  return std::nullopt;
}

Eigen::Vector3d CameraPair::Center1() const { return CenterOf(P1); }
Eigen::Vector3d CameraPair::Center2() const { return CenterOf(P2); }

FundamentalMatrix CameraPair::FundamentalFromProjections() const {
  const Eigen::Vector3d e2 = P2 * Center1().homogeneous();
  Eigen::Matrix3d skew;
  skew << 0.0, -e2.z(), e2.y(), e2.z(), 0.0, -e2.x(), -e2.y(), e2.x(), 0.0;
  const Eigen::Matrix<double, 4, 3> pseudo_inverse =
      P1.transpose() * (P1 * P1.transpose()).inverse();
  const Eigen::Matrix3d F = skew * P2 * pseudo_inverse;
  return FundamentalMatrix(F / F.norm());
}

double CameraPair::Depth(int camera, const Eigen::Vector3d& X) const {
  const ProjectionMatrix& P = camera == 1 ? P1 : P2;
  const double w = P.row(2).dot(X.homogeneous());
  const double sign = P.leftCols<3>().determinant() < 0.0 ? -1.0 : 1.0;
  return sign * w / P.block<1, 3>(2, 0).norm();
}

Result<SyntheticScene> GenerateScene(Motion motion, uint64_t seed,
                                     const SceneOptions& options) {
  Rng rng(seed);
  for (int attempt = 0; attempt < options.max_retries; ++attempt) {
    SyntheticScene scene;
    scene.options = options;
    scene.cameras = MakeCameras(motion, rng, options);
    bool complete = true;
    for (int k = 0; k < options.num_planes && complete; ++k) {
      const auto patch = SamplePlane(scene.cameras, rng, options);
      if (!patch) {
        complete = false;
        break;
      }
      ScenePlane plane;
      plane.parameters = patch->parameters;
      plane.homography = PlaneHomography(scene.cameras, patch->parameters);
      for (const auto& X : patch->points) {
        const Eigen::Vector2d q1 =
            (scene.cameras.P1 * X.homogeneous()).hnormalized();
        const Eigen::Vector2d q2 =
            (scene.cameras.P2 * X.homogeneous()).hnormalized();
        const auto affine = AffineFromHomography(plane.homography, q1);
        const auto decomposition =
            affine ? DecomposeAffine(*affine)
                   : Result<AffineDecomposition>(affine.error());
        if (!decomposition) {
          complete = false;
          break;
        }
        scene.points3d.push_back(X);
        scene.correspondences.push_back(Correspondence{
            q1.x(), q1.y(), q2.x(), q2.y(), decomposition->alpha});
      }
      scene.planes.push_back(plane);
    }
    if (!complete) {
      continue;
    }
    scene.gt_F = scene.cameras.FundamentalFromProjections();
    return scene;
  }
  return Error{ErrorCode::kRetryExhausted, "no valid scene layout"};
}

Result<Homography> FitHomography(std::span<const Correspondence> data) {
  if (data.size() < 4) {
    return Error{ErrorCode::kInvalidArgument, "four correspondences needed"};
  }
  std::vector<Eigen::Vector2d> points1;
  std::vector<Eigen::Vector2d> points2;
  for (const auto& c : data) {
    points1.push_back(c.Point1());
    points2.push_back(c.Point2());
  }
  const auto t1 = HartleyTransform(points1);
  const auto t2 = HartleyTransform(points2);
  if (!t1 || !t2) {
    return ErrorCode::kDegeneratePointSet;
  }
  CoefficientMatrix rows(2 * static_cast<Eigen::Index>(data.size()), 9);
  Eigen::Index r = 0;
  for (size_t i = 0; i < data.size(); ++i) {
    const Eigen::Vector2d q1 = t1->Apply(points1[i]);
    const Eigen::Vector2d q2 = t2->Apply(points2[i]);
    const auto dlt = DltRows(Correspondence{q1.x(), q1.y(), q2.x(), q2.y()});
    rows.row(r++) = dlt[0].transpose();
    rows.row(r++) = dlt[1].transpose();
  }
  const auto basis = NullSpace(rows, 1);
  if (!basis) {
    return basis.error();
  }
  const Homography H = DenormalizeHomography(
      Homography::FromVector((*basis)[0]), *t1, *t2);
  return Homography(H.matrix() / H.matrix().norm());
}

std::vector<Correspondence> AddNoise(const SyntheticScene& scene, double sigma,
                                     uint64_t seed) {
  std::vector<Correspondence> noisy = scene.correspondences;
  if (sigma == 0.0) {
    return noisy;
  }
  Rng rng(seed);
  for (auto& c : noisy) {
    c.u1 += sigma * rng.Normal();
    c.v1 += sigma * rng.Normal();
    c.u2 += sigma * rng.Normal();
    c.v2 += sigma * rng.Normal();
  }
  const size_t per_plane = static_cast<size_t>(scene.options.points_per_plane);
  for (size_t k = 0; k < scene.planes.size(); ++k) {
    const std::span<const Correspondence> clean(
        scene.correspondences.data() + k * per_plane, per_plane);
    const std::span<Correspondence> members(noisy.data() + k * per_plane,
                                            per_plane);
    const Eigen::Matrix2d shift =
        FitAffineLinearPart(members) - FitAffineLinearPart(clean);
    for (size_t i = 0; i < per_plane; ++i) {
      const auto affine = AffineFromHomography(scene.planes[k].homography,
                                               clean[i].Point1());
      if (!affine) {
        continue;
      }
      const auto decomposition =
          DecomposeAffine(LocalAffine{affine->matrix + shift});
      if (decomposition) {
        members[i].alpha = decomposition->alpha;
      }
    }
  }
  return noisy;
}

Result<OutlierDataset> GenerateOutlierDataset(
    Motion motion, uint64_t seed, const OutlierDatasetOptions& options) {
  auto scene = GenerateScene(motion, Rng::DeriveSeed(seed, 0), options.scene);
  if (!scene) {
    return scene.error();
  }
  OutlierDataset dataset;
  dataset.scene = std::move(*scene);
  const auto inliers =
      AddNoise(dataset.scene, options.sigma, Rng::DeriveSeed(seed, 1));

  Rng rng(Rng::DeriveSeed(seed, 2));
  const double width = options.scene.image_width;
  const double height = options.scene.image_height;
  std::vector<std::pair<Correspondence, bool>> pool;
  for (const auto& c : inliers) {
    pool.emplace_back(c, true);
  }
  for (size_t i = 0; i < options.num_outliers; ++i) {
    Correspondence c;
    c.u1 = rng.Uniform(0.0, width);
    c.v1 = rng.Uniform(0.0, height);
    c.u2 = rng.Uniform(0.0, width);
    c.v2 = rng.Uniform(0.0, height);
    c.alpha = CanonicalAngle(rng.Uniform(-std::numbers::pi, std::numbers::pi));
    pool.emplace_back(c, false);
  }
  for (size_t i = options.num_outliers > 0 ? pool.size() : 0; i > 1; --i) {
    std::swap(pool[i - 1], pool[rng.UniformIndex(i)]);
  }
  for (const auto& [c, inlier] : pool) {
    dataset.data.push_back(c);
    dataset.is_inlier.push_back(inlier);
  }
  return dataset;
}

namespace {

std::vector<size_t> DrawDistinct(Rng& rng, std::span<const size_t> pool,
                                 size_t k) {
  std::vector<size_t> chosen;
  while (chosen.size() < k) {
    const size_t candidate = pool[rng.UniformIndex(pool.size())];
    if (std::find(chosen.begin(), chosen.end(), candidate) == chosen.end()) {
      chosen.push_back(candidate);
    }
  }
  return chosen;
}

std::vector<size_t> MinimalSample(const SyntheticScene& scene,
                                  SolverKind solver, Rng& rng) {
  const size_t n = scene.correspondences.size();
  std::vector<size_t> all(n);
  for (size_t i = 0; i < n; ++i) {
    all[i] = i;
  }
  if (solver != SolverKind::kFivePoint) {
    return DrawDistinct(rng, all, MinimalSampleSize(solver));
  }
  const size_t per_plane = static_cast<size_t>(scene.options.points_per_plane);
  const size_t plane = rng.UniformIndex(scene.planes.size());
  std::vector<size_t> on_plane;
  std::vector<size_t> off_plane;
  for (size_t i = 0; i < n; ++i) {
    (i / per_plane == plane ? on_plane : off_plane).push_back(i);
  }
  std::vector<size_t> sample = DrawDistinct(rng, on_plane, 3);
  const auto generals = DrawDistinct(rng, off_plane, 2);
  sample.insert(sample.end(), generals.begin(), generals.end());
  return sample;
}

std::vector<FundamentalMatrix> SolveOn(std::span<const Correspondence> noisy,
                                       const std::vector<size_t>& sample,
                                       SolverKind solver) {
  std::vector<Correspondence> chosen;
  for (const size_t i : sample) {
    chosen.push_back(noisy[i]);
  }
  switch (solver) {
    case SolverKind::kFivePoint: {
      Sample5 five;
      std::copy(chosen.begin(), chosen.end(), five.begin());
      return FivePointFundamental(five, {0, 1, 2});
    }
    case SolverKind::kSevenPoint: {
      auto result = SevenPoint(chosen);
      return result ? std::move(*result) : std::vector<FundamentalMatrix>{};
    }
    case SolverKind::kEightPoint: {
      auto result = EightPoint(chosen);
      if (!result) {
        return {};
      }
      return {*result};
    }
  }
  return {};
}

}  // namespace

TrialOutcome RunMinimalTrial(const SyntheticScene& scene,
                             std::span<const Correspondence> noisy,
                             SolverKind solver, Rng& sample_rng) {
  const auto sample = MinimalSample(scene, solver, sample_rng);
  const auto candidates = SolveOn(noisy, sample, solver);
  TrialOutcome outcome;
  for (const auto& F : candidates) {
    double total = 0.0;
    size_t count = 0;
    for (size_t i = 0; i < noisy.size(); ++i) {
      if (std::find(sample.begin(), sample.end(), i) != sample.end()) {
        continue;
      }
      total += SymmetricEpipolarError(F, noisy[i]);
      ++count;
    }
    const double error = total / static_cast<double>(count);
    if (std::isfinite(error) && (!outcome.ok || error < outcome.error)) {
      outcome.ok = true;
      outcome.error = error;
    }
  }
  return outcome;
}

Result<std::vector<SweepRow>> RunNoiseSweep(Motion motion,
                                            std::span<const double> sigmas,
                                            size_t trials,
                                            std::span<const SolverKind> solvers,
                                            uint64_t seed,
                                            const SceneOptions& options) {
  if (trials == 0) {
    return Error{ErrorCode::kInvalidArgument, "trials must be positive"};
  }
  for (const double sigma : sigmas) {
    if (!(sigma >= 0.0)) {
      return Error{ErrorCode::kInvalidArgument, "sigma must be non-negative"};
    }
  }
  const size_t num_solvers = solvers.size();
  // errors[sigma][solver] -> per-trial errors
  std::vector<std::vector<std::vector<double>>> errors(
      sigmas.size(), std::vector<std::vector<double>>(num_solvers));

  for (size_t trial = 0; trial < trials; ++trial) {
    const uint64_t trial_seed = Rng::DeriveSeed(seed, trial);
    const auto scene =
        GenerateScene(motion, Rng::DeriveSeed(trial_seed, 0), options);
    if (!scene) {
      continue;
    }
    for (size_t s = 0; s < sigmas.size(); ++s) {
      const auto noisy =
          AddNoise(*scene, sigmas[s], Rng::DeriveSeed(trial_seed, 1 + s));
      for (size_t k = 0; k < num_solvers; ++k) {
        const uint64_t solver_stream =
            1000 + static_cast<uint64_t>(solvers[k]);
        Rng sample_rng(Rng::DeriveSeed(trial_seed, solver_stream));
        const auto outcome =
            RunMinimalTrial(*scene, noisy, solvers[k], sample_rng);
        if (outcome.ok) {
          errors[s][k].push_back(outcome.error);
        }
      }
    }
  }

  std::vector<SweepRow> rows;
  for (size_t s = 0; s < sigmas.size(); ++s) {
    for (size_t k = 0; k < num_solvers; ++k) {
      SweepRow row;
      row.motion = motion;
      row.sigma = sigmas[s];
      row.solver = solvers[k];
      auto& values = errors[s][k];
      row.trials_ok = values.size();
      row.trials_dropped = trials - values.size();
      if (!values.empty()) {
        double total = 0.0;
        for (const double v : values) {
          total += v;
        }
        row.mean_error_px = total / static_cast<double>(values.size());
        std::sort(values.begin(), values.end());
        const size_t mid = values.size() / 2;
        row.median_error_px = values.size() % 2 == 1
                                  ? values[mid]
                                  : 0.5 * (values[mid - 1] + values[mid]);
      } else {
        row.mean_error_px = std::numeric_limits<double>::quiet_NaN();
        row.median_error_px = std::numeric_limits<double>::quiet_NaN();
      }
      rows.push_back(row);
    }
  }
  return rows;
}

void WriteSweepCsv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "motion,sigma,solver,trials_ok,mean_error_px,median_error_px\n";
  const auto precision = out.precision(10);
  for (const auto& row : rows) {
    out << MotionName(row.motion) << ',' << row.sigma << ','
        << SolverName(row.solver) << ',' << row.trials_ok << ','
        << row.mean_error_px << ',' << row.median_error_px << '\n';
  }
  out.precision(precision);
}

}  // namespace fivepoint
