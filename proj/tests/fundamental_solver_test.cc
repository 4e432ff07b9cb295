#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "fivepoint/epipolar.h"
#include "fivepoint/fundamental_solver.h"
#include "fivepoint/random.h"
#include "support/oracles.h"

namespace fivepoint {
namespace {

using testing::BestCanonicalDistance;
using testing::FivePointSample;
using testing::SceneOrDie;

Sample3 Anchors(const Sample5& sample) {
  return {sample[0], sample[1], sample[2]};
}

Sample2 Generals(const Sample5& sample) { return {sample[3], sample[4]}; }

void ExpectValidFundamental(const FundamentalMatrix& F) {
  EXPECT_LE(F.RelativeDeterminant(), 1e-8);
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(F.matrix());
  const auto& sv = svd.singularValues();
  EXPECT_GT(sv(1), 1e-10 * sv(0));
  EXPECT_LE(sv(2), 1e-8 * sv(0));
}

TEST(HallucinateCorrespondences, Identity) {
  const Sample3 anchors = {Correspondence{0, 0, 0, 0, 0.3},
                           Correspondence{2, 0, 2, 0, 0.3},
                           Correspondence{0, 2, 0, 2, 0.3}};
  const auto points = HallucinateCorrespondences(Homography(), anchors);
  ASSERT_TRUE(points.ok());
  const std::array<Eigen::Vector2d, 5> expected = {
      Eigen::Vector2d(0, 0), Eigen::Vector2d(2, 0), Eigen::Vector2d(0, 2),
      Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 1)};
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ((*points)[i].Point1(), expected[i]);
    EXPECT_EQ((*points)[i].Point2(), expected[i]);
    EXPECT_EQ((*points)[i].alpha, 0.0);
  }
}

TEST(HallucinateCorrespondences, ObeyGroundTruthEpipolarGeometry) {
  const auto scene = SceneOrDie(Motion::kRandom, 3);
  const Sample5 sample = FivePointSample(scene, 0, {0, 1, 2}, {4, 8});
  const auto points =
      HallucinateCorrespondences(scene.planes[0].homography, Anchors(sample));
  ASSERT_TRUE(points.ok());
  for (const auto& c : *points) {
    EXPECT_LT(SymmetricEpipolarError(scene.gt_F, c), 1e-9);
  }
}

TEST(HallucinateCorrespondences, NeverCollinear) {
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const Homography H = testing::RandomHomography(rng);
    Sample3 anchors;
    for (auto& a : anchors) {
      const Eigen::Vector2d p1(rng.Uniform(0, 640), rng.Uniform(0, 480));
      const Eigen::Vector2d p2 = H.Transfer(p1);
      a = {p1.x(), p1.y(), p2.x(), p2.y()};
    }
    const Eigen::Vector2d e1 = anchors[1].Point1() - anchors[0].Point1();
    const Eigen::Vector2d e2 = anchors[2].Point1() - anchors[0].Point1();
    if (std::abs(e1.x() * e2.y() - e1.y() * e2.x()) < 1.0) {
      continue;
    }
    const auto points = HallucinateCorrespondences(H, anchors);
    ASSERT_TRUE(points.ok());
    // Not all five on one line: some triple has non-zero area.
    double area = 0.0;
    for (int a = 0; a < 5; ++a) {
      for (int b = a + 1; b < 5; ++b) {
        for (int c = b + 1; c < 5; ++c) {
          const Eigen::Vector2d u = (*points)[b].Point1() - (*points)[a].Point1();
          const Eigen::Vector2d v = (*points)[c].Point1() - (*points)[a].Point1();
          area = std::max(area, std::abs(u.x() * v.y() - u.y() * v.x()));
        }
      }
    }
    EXPECT_GT(area, 0.5);
    for (const auto& c : *points) {
      EXPECT_LT((H.Transfer(c.Point1()) - c.Point2()).norm(), 1e-9);
    }
  }
}

TEST(IsSampleDegenerate, OnPlaneGenerals) {
  const auto scene = SceneOrDie(Motion::kRandom, 4);
  const Homography& H = scene.planes[0].homography;
  const Sample2 on_plane = {scene.correspondences[3], scene.correspondences[3]};
  EXPECT_TRUE(IsSampleDegenerate(H, on_plane, 1.0));
  EXPECT_FALSE(IsSampleDegenerate(H, on_plane, 0.0));
}

TEST(IsSampleDegenerate, OffPlaneGenerals) {
  const auto scene = SceneOrDie(Motion::kSideways, 4);
  const Homography& H = scene.planes[0].homography;
  const Eigen::Matrix3d inverse = H.matrix().inverse();
  const Sample2 generals = {scene.correspondences[4], scene.correspondences[8]};
  if (SymmetricTransferError(H, inverse, generals[0]) > 1.0) {
    EXPECT_FALSE(IsSampleDegenerate(H, generals, 1.0));
  }
  const Sample2 mixed = {scene.correspondences[1], scene.correspondences[12]};
  if (SymmetricTransferError(H, inverse, mixed[1]) > 1.0) {
    EXPECT_FALSE(IsSampleDegenerate(H, mixed, 1.0));
  }
}

// A few samples have an ill-conditioned 10 x 9 system (smallest non-null
// singular value ~1e-4 of the largest); they stay within 1e-5 px.
TEST(FundamentalFromHomographyAndPoints, ExactScene) {
  int within_1e6 = 0;
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const auto scene = SceneOrDie(Motion::kRandom, seed);
    const Sample5 sample = FivePointSample(scene, 1, {0, 1, 3}, {0, 17});
    const auto candidates = FundamentalFromHomographyAndPoints(
        scene.planes[1].homography, Anchors(sample), Generals(sample));
    ASSERT_TRUE(candidates.ok());
    ASSERT_FALSE(candidates->empty());
    size_t best = 0;
    double best_distance = 1e300;
    for (size_t k = 0; k < candidates->size(); ++k) {
      ExpectValidFundamental((*candidates)[k]);
      const double d = CanonicalDistance((*candidates)[k].matrix(),
                                         scene.gt_F.matrix());
      if (d < best_distance) {
        best_distance = d;
        best = k;
      }
    }
    const FundamentalMatrix& F = (*candidates)[best];
    double worst = 0.0;
    for (const auto& c : scene.correspondences) {
      worst = std::max(worst, SymmetricEpipolarError(F, c));
    }
    EXPECT_LT(worst, 1e-5) << "seed " << seed;
    within_1e6 += worst < 1e-6;
    const Eigen::Matrix3d H = scene.planes[1].homography.matrix();
    const Eigen::Matrix3d compat =
        H.transpose() * F.matrix() + F.matrix().transpose() * H;
    EXPECT_LT(compat.norm() / (H.norm() * F.matrix().norm()), 1e-6);
  }
  EXPECT_GE(within_1e6, 29);
}

TEST(FivePointFundamental, ExactSample) {
  for (const Motion motion :
       {Motion::kRandom, Motion::kSideways, Motion::kForward}) {
    for (uint64_t seed = 0; seed < 20; ++seed) {
      const auto scene = SceneOrDie(motion, seed);
      const Sample5 sample = FivePointSample(scene, 2, {3, 1, 2}, {5, 19});
      const auto candidates = FivePointFundamental(sample, {0, 1, 2});
      EXPECT_LT(BestCanonicalDistance(candidates, scene.gt_F), 1e-6)
          << MotionName(motion) << " " << seed;
      for (const auto& F : candidates) {
        ExpectValidFundamental(F);
        for (const auto& c : sample) {
          EXPECT_LT(SymmetricEpipolarError(F, c), 1e-8);
        }
      }
    }
  }
}

TEST(FivePointFundamental, PlaneIndicesAnywhere) {
  const auto scene = SceneOrDie(Motion::kRandom, 5);
  const Sample5 ordered = FivePointSample(scene, 0, {0, 1, 2}, {6, 11});
  const Sample5 shuffled = {ordered[3], ordered[0], ordered[4], ordered[1],
                            ordered[2]};
  const auto candidates = FivePointFundamental(shuffled, {1, 3, 4});
  EXPECT_LT(BestCanonicalDistance(candidates, scene.gt_F), 1e-6);
}

TEST(FivePointFundamental, CollinearTripleIsEmpty) {
  Sample5 sample;
  for (int i = 0; i < 3; ++i) {
    sample[i] = {10.0 * i, 10.0 * i, 5.0 * i, 3.0 * i, 0.1};
  }
  sample[3] = {100, 7, 90, 30};
  sample[4] = {30, 200, 50, 170};
  EXPECT_TRUE(FivePointFundamental(sample, {0, 1, 2}).empty());
  EXPECT_EQ(SolveFivePoint(sample, {0, 1, 2}).code(),
            ErrorCode::kCollinearSample);
}

TEST(FivePointFundamental, OnPlaneGeneralsRejected) {
  const auto scene = SceneOrDie(Motion::kRandom, 6);
  const Sample5 sample = FivePointSample(scene, 0, {0, 1, 2}, {3, 3});
  FivePointOptions options;
  options.degeneracy_threshold = 1.0;
  EXPECT_EQ(SolveFivePoint(sample, {0, 1, 2}, options).code(),
            ErrorCode::kDegenerateSample);
}

TEST(FivePointFundamental, AllRotationPairsContainsTruth) {
  const auto scene = SceneOrDie(Motion::kForward, 7);
  const Sample5 sample = FivePointSample(scene, 4, {0, 1, 2}, {0, 5});
  FivePointOptions options;
  options.use_all_rotation_pairs = true;
  const auto candidates = FivePointFundamental(sample, {0, 1, 2}, options);
  EXPECT_GE(candidates.size(), 1u);
  EXPECT_LT(BestCanonicalDistance(candidates, scene.gt_F), 1e-6);
}

TEST(FivePointFundamental, NormalizationInvariance) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const auto scene = SceneOrDie(Motion::kSideways, seed);
    const Sample5 sample = FivePointSample(scene, 3, {0, 2, 3}, {1, 9});
    FivePointOptions raw;
    raw.fundamental.hartley_normalization = false;
    const auto normalized = FivePointFundamental(sample, {0, 1, 2});
    const auto plain = FivePointFundamental(sample, {0, 1, 2}, raw);
    ASSERT_FALSE(normalized.empty());
    EXPECT_LT(BestCanonicalDistance(plain, scene.gt_F), 1e-6);
    EXPECT_LT(BestCanonicalDistance(normalized, scene.gt_F), 1e-6);
  }
}

TEST(RankTwoPencilMembers, SwapInvariance) {
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    Vector9d e, g;
    for (int k = 0; k < 9; ++k) {
      e(k) = rng.Normal();
      g(k) = rng.Normal();
    }
    const auto forward = RankTwoPencilMembers(e, g);
    const auto backward = RankTwoPencilMembers(g, e);
    ASSERT_TRUE(forward.ok());
    ASSERT_TRUE(backward.ok());
    ASSERT_EQ(forward->size(), backward->size());
    for (const auto& m : *forward) {
      EXPECT_LE(std::abs(m.determinant()), 1e-10 * std::pow(m.norm(), 3));
      double best = 1e300;
      for (const auto& n : *backward) {
        best = std::min(best, CanonicalDistance(m, n));
      }
      EXPECT_LT(best, 1e-6);
    }
  }
}

TEST(PencilDeterminantCubic, MatchesDeterminant) {
  Rng rng(10);
  const Eigen::Matrix3d G = Eigen::Matrix3d::Random();
  const Eigen::Matrix3d M = Eigen::Matrix3d::Random();
  const auto c = PencilDeterminantCubic(G, M);
  for (double t : {-2.0, -0.5, 0.0, 0.3, 1.0, 4.0}) {
    const double value = ((c[0] * t + c[1]) * t + c[2]) * t + c[3];
    EXPECT_NEAR(value, (G + t * M).determinant(), 1e-12 * (1 + std::pow(std::abs(t), 3)));
  }
}

TEST(SevenPoint, ExactScene) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const auto scene = SceneOrDie(Motion::kRandom, seed);
    const std::vector<Correspondence> sample = {
        scene.correspondences[0], scene.correspondences[3],
        scene.correspondences[5], scene.correspondences[9],
        scene.correspondences[10], scene.correspondences[14],
        scene.correspondences[19]};
    const auto candidates = SevenPoint(sample);
    ASSERT_TRUE(candidates.ok());
    EXPECT_GE(candidates->size(), 1u);
    EXPECT_LE(candidates->size(), 3u);
    EXPECT_LT(BestCanonicalDistance(*candidates, scene.gt_F), 1e-8);
    for (const auto& F : *candidates) {
      ExpectValidFundamental(F);
      for (const auto& c : sample) {
        EXPECT_LT(SymmetricEpipolarError(F, c), 1e-8);
      }
    }
  }
}

TEST(SevenPoint, DuplicatedPoint) {
  const auto scene = SceneOrDie(Motion::kRandom, 1);
  std::vector<Correspondence> sample(scene.correspondences.begin(),
                                     scene.correspondences.begin() + 7);
  sample[6] = sample[5];
  EXPECT_EQ(SevenPoint(sample).code(), ErrorCode::kRankDefect);
  sample.pop_back();
  EXPECT_EQ(SevenPoint(sample).code(), ErrorCode::kInvalidArgument);
}

TEST(EightPoint, ExactScene) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const auto scene = SceneOrDie(Motion::kSideways, seed);
    const std::vector<Correspondence> sample = {
        scene.correspondences[0], scene.correspondences[3],
        scene.correspondences[5], scene.correspondences[9],
        scene.correspondences[10], scene.correspondences[14],
        scene.correspondences[16], scene.correspondences[19]};
    const auto F = EightPoint(sample);
    ASSERT_TRUE(F.ok());
    EXPECT_LT(CanonicalDistance(F->matrix(), scene.gt_F.matrix()), 1e-8);
    ExpectValidFundamental(*F);
    const Eigen::JacobiSVD<Eigen::Matrix3d> svd(F->matrix());
    EXPECT_LE(svd.singularValues()(2), 1e-10 * svd.singularValues()(0));
  }
}

TEST(EightPoint, Overdetermined) {
  SceneOptions options;
  options.points_per_plane = 20;
  const auto scene = SceneOrDie(Motion::kRandom, 2, options);
  ASSERT_EQ(scene.correspondences.size(), 100u);
  const auto F = EightPoint(scene.correspondences);
  ASSERT_TRUE(F.ok());
  EXPECT_LT(CanonicalDistance(F->matrix(), scene.gt_F.matrix()), 1e-8);
}

TEST(EightPoint, Failures) {
  const auto scene = SceneOrDie(Motion::kRandom, 1);
  std::vector<Correspondence> sample(scene.correspondences.begin(),
                                     scene.correspondences.begin() + 7);
  EXPECT_EQ(EightPoint(sample).code(), ErrorCode::kInvalidArgument);
  sample.push_back(sample[0]);
  EXPECT_EQ(EightPoint(sample).code(), ErrorCode::kRankDefect);
}

TEST(Solvers, FiveAndSevenAgree) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const auto scene = SceneOrDie(Motion::kForward, seed);
    const Sample5 five = FivePointSample(scene, 0, {0, 1, 2}, {4, 8});
    const std::vector<Correspondence> seven(scene.correspondences.begin() + 4,
                                            scene.correspondences.begin() + 11);
    const auto a = FivePointFundamental(five, {0, 1, 2});
    const auto b = SevenPoint(seven);
    ASSERT_TRUE(b.ok());
    EXPECT_LT(BestCanonicalDistance(a, scene.gt_F), 1e-6);
    EXPECT_LT(BestCanonicalDistance(*b, scene.gt_F), 1e-6);
  }
}

}  // namespace
}  // namespace fivepoint
