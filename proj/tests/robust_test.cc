#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "fivepoint/epipolar.h"
#include "fivepoint/robust.h"
#include "fivepoint/synthetic.h"
#include "support/oracles.h"

namespace fivepoint {
namespace {

OutlierDataset Dataset(uint64_t seed, double sigma = 0.5,
                       size_t outliers = 100) {
  OutlierDatasetOptions options;
  options.scene.num_planes = 2;
  options.scene.points_per_plane = 50;
  options.num_outliers = outliers;
  options.sigma = sigma;
  auto dataset = GenerateOutlierDataset(Motion::kRandom, seed, options);
  EXPECT_TRUE(dataset.ok());
  return std::move(*dataset);
}

TEST(RansacIterations, TableValues) {
  EXPECT_EQ(RansacIterations(0.95, 0.5, 5), 94u);
  EXPECT_EQ(RansacIterations(0.95, 0.5, 7), 382u);
  EXPECT_EQ(RansacIterations(0.95, 0.5, 8), 765u);
  EXPECT_EQ(RansacIterations(0.95, 0.0, 8), 1u);
  const uint64_t n = RansacIterations(0.95, 0.8, 5);
  EXPECT_GE(n, 9000u);
  EXPECT_LE(n, 11000u);
}

TEST(RansacIterations, Saturates) {
  EXPECT_EQ(RansacIterations(0.99, 0.999999, 8),
            std::numeric_limits<uint64_t>::max());
}

TEST(RansacIterations, DecreasesWithSampleSize) {
  for (const double ratio : {0.1, 0.5, 0.8}) {
    EXPECT_LT(RansacIterations(0.99, ratio, 5), RansacIterations(0.99, ratio, 7));
    EXPECT_LT(RansacIterations(0.99, ratio, 7), RansacIterations(0.99, ratio, 8));
  }
}

TEST(ValidateConfig, Ranges) {
  RobustConfig config;
  EXPECT_FALSE(ValidateConfig(config).has_value());
  config.confidence = 1.0;
  EXPECT_TRUE(ValidateConfig(config).has_value());
  config.confidence = 0.5;
  config.inlier_threshold = 0.0;
  EXPECT_TRUE(ValidateConfig(config).has_value());
}

TEST(SolverKind, Names) {
  EXPECT_EQ(SolverName(SolverKind::kSevenPoint), "seven_point");
  EXPECT_EQ(ParseSolverKind("5"), SolverKind::kFivePoint);
  EXPECT_EQ(ParseSolverKind("eight"), SolverKind::kEightPoint);
  EXPECT_FALSE(ParseSolverKind("six").has_value());
  EXPECT_EQ(MinimalSampleSize(SolverKind::kSevenPoint), 7u);
}

TEST(ClassifyInliers, Thresholds) {
  const auto scene = testing::SceneOrDie(Motion::kRandom, 1);
  EXPECT_EQ(ClassifyInliers(scene.gt_F, scene.correspondences, 1e-6).size(),
            20u);
  const auto noisy = AddNoise(scene, 1.0, 2);
  EXPECT_LE(ClassifyInliers(scene.gt_F, noisy, 0.0).size(), 1u);
}

// Single runs occasionally lock onto a model that explains one plane only, so
// recovery is checked on the median over seeds.
TEST(Estimate, RecoversModelAllSolvers) {
  for (const SolverKind solver :
       {SolverKind::kFivePoint, SolverKind::kSevenPoint,
        SolverKind::kEightPoint}) {
    std::vector<double> errors;
    for (uint64_t seed = 0; seed < 21; ++seed) {
      const auto dataset = Dataset(100 + seed);
      RobustConfig config;
      config.solver = solver;
      config.inlier_threshold = 2.0;
      config.seed = seed;
      const auto result = Estimate(dataset.data, config);
      ASSERT_TRUE(result.ok()) << SolverName(solver);
      double error = 0.0;
      size_t count = 0;
      for (size_t i = 0; i < dataset.data.size(); ++i) {
        if (dataset.is_inlier[i]) {
          error += SymmetricEpipolarError(result->F, dataset.data[i]);
          ++count;
        }
      }
      errors.push_back(error / count);
      for (const size_t i : result->inliers) {
        EXPECT_LE(SymmetricEpipolarError(result->F, dataset.data[i]), 2.0);
      }
      EXPECT_EQ(result->terminated_by, Termination::kConfidence);
      EXPECT_EQ(result->best_inlier_history.back(), result->inliers.size());
      for (size_t k = 1; k < result->best_inlier_history.size(); ++k) {
        EXPECT_GE(result->best_inlier_history[k],
                  result->best_inlier_history[k - 1]);
      }
    }
    std::nth_element(errors.begin(), errors.begin() + 10, errors.end());
    EXPECT_LT(errors[10], 1.0) << SolverName(solver);
  }
}

TEST(Estimate, ExactDataStopsEarly) {
  const auto dataset = Dataset(12, 0.0, 0);
  for (const SolverKind solver :
       {SolverKind::kSevenPoint, SolverKind::kEightPoint}) {
    RobustConfig config;
    config.solver = solver;
    const auto result = Estimate(dataset.data, config);
    ASSERT_TRUE(result.ok());
    EXPECT_LE(result->samples_drawn, 3u);
    EXPECT_EQ(result->inliers.size(), 100u);
  }
}

TEST(Estimate, Deterministic) {
  const auto dataset = Dataset(13);
  RobustConfig config;
  config.seed = 99;
  config.inlier_threshold = 2.0;
  const auto a = Estimate(dataset.data, config);
  const auto b = Estimate(dataset.data, config);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(a->F.matrix(), b->F.matrix());
  EXPECT_EQ(a->inliers, b->inliers);
  EXPECT_EQ(a->samples_drawn, b->samples_drawn);
  EXPECT_EQ(a->lo_iterations, b->lo_iterations);
}

TEST(Estimate, NotEnoughPoints) {
  const auto scene = testing::SceneOrDie(Motion::kRandom, 1);
  const std::vector<Correspondence> few(scene.correspondences.begin(),
                                        scene.correspondences.begin() + 6);
  RobustConfig config;
  config.solver = SolverKind::kSevenPoint;
  EXPECT_EQ(Estimate(few, config).code(), ErrorCode::kNotEnoughPoints);
}

TEST(Estimate, InvalidConfig) {
  const auto dataset = Dataset(14);
  RobustConfig config;
  config.confidence = 0.0;
  EXPECT_EQ(Estimate(dataset.data, config).code(), ErrorCode::kInvalidArgument);
}

TEST(Estimate, NoModelFound) {
  // Collinear points in both images admit no valid five-point hypothesis.
  std::vector<Correspondence> data;
  for (int i = 0; i < 30; ++i) {
    data.push_back({1.0 * i, 2.0 * i, 3.0 * i, 1.0 * i, 0.1});
  }
  RobustConfig config;
  config.max_iterations = 200;
  EXPECT_EQ(Estimate(data, config).code(), ErrorCode::kNoModelFound);
}

TEST(Estimate, MaxIterations) {
  const auto dataset = Dataset(15, 0.5, 400);
  RobustConfig config;
  config.solver = SolverKind::kEightPoint;
  config.max_iterations = 50;
  const auto result = Estimate(dataset.data, config);
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result->terminated_by, Termination::kMaxIterations);
  EXPECT_EQ(result->samples_drawn, 50u);
}

TEST(Estimate, TimeBudget) {
  const auto dataset = Dataset(16, 0.5, 900);
  RobustConfig config;
  config.solver = SolverKind::kEightPoint;
  config.time_budget = 1.0 / 30.0;
  config.max_iterations = std::numeric_limits<size_t>::max();
  const auto result = Estimate(dataset.data, config);
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result->terminated_by, Termination::kBudget);
  EXPECT_LE(result->elapsed_seconds, 0.05);
}

TEST(Estimate, TerminationBound) {
  const auto dataset = Dataset(17);
  for (const SolverKind solver :
       {SolverKind::kFivePoint, SolverKind::kSevenPoint,
        SolverKind::kEightPoint}) {
    RobustConfig config;
    config.solver = solver;
    config.inlier_threshold = 2.0;
    const auto result = Estimate(dataset.data, config);
    ASSERT_TRUE(result.ok());
    ASSERT_EQ(result->terminated_by, Termination::kConfidence);
    const double outlier_ratio =
        1.0 - static_cast<double>(result->inliers.size()) / dataset.data.size();
    EXPECT_LE(result->samples_drawn,
              std::max<uint64_t>(RansacIterations(config.confidence,
                                                  outlier_ratio,
                                                  MinimalSampleSize(solver)),
                                 1) +
                  result->lo_iterations);
  }
}

}  // namespace
}  // namespace fivepoint
