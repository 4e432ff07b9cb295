#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fivepoint/status.h"
#include "fivepoint/types.h"

namespace fivepoint {

enum class SolverKind { kFivePoint, kSevenPoint, kEightPoint };

// "five_point", "seven_point", "eight_point".
std::string_view SolverName(SolverKind solver);

// Accepts the canonical names as well as "five"/"5", "seven"/"7",
// "eight"/"8".
std::optional<SolverKind> ParseSolverKind(std::string_view name);

size_t MinimalSampleSize(SolverKind solver);

enum class Termination { kConfidence, kBudget, kMaxIterations };

std::string_view TerminationName(Termination termination);

struct RobustConfig {
  // Symmetric epipolar distance, pixels.
  double inlier_threshold = 1.0;
  double confidence = 0.99;
  size_t max_iterations = 100000;
  // Wall-clock budget in seconds; unset means unlimited.
  std::optional<double> time_budget;
  uint64_t seed = 0;
  SolverKind solver = SolverKind::kFivePoint;
  // Plane check for five-point samples (symmetric transfer error, pixels).
  double degeneracy_threshold = 1.0;
  bool lo_enabled = true;
  int lo_max_rounds = 10;
};

// Rejects configurations with confidence outside (0, 1) or a non-positive
// threshold.
std::optional<Error> ValidateConfig(const RobustConfig& config);

struct RobustResult {
  FundamentalMatrix F;
  std::vector<size_t> inliers;
  // Every draw counts, including samples the solver rejected.
  size_t samples_drawn = 0;
  size_t rejected_samples = 0;
  // Least-squares re-fits performed by local optimization.
  size_t lo_iterations = 0;
  double elapsed_seconds = 0.0;
  Termination terminated_by = Termination::kMaxIterations;
  // Inlier count of the best model after each improvement.
  std::vector<size_t> best_inlier_history;
};

// Number of uniform samples needed to draw at least one outlier-free sample
// of `sample_size` with probability `confidence`:
//   round(log(1 - confidence) / log(1 - (1 - outlier_ratio)^sample_size)),
// at least 1, saturating at UINT64_MAX when the denominator underflows.
uint64_t RansacIterations(double confidence, double outlier_ratio,
                          size_t sample_size);

// Indices whose symmetric epipolar distance is <= threshold.
std::vector<size_t> ClassifyInliers(const FundamentalMatrix& F,
                                    std::span<const Correspondence> data,
                                    double threshold);

// Locally optimized RANSAC over fundamental-matrix hypotheses. For the
// five-point solver the first three members of each uniformly drawn sample
// play the co-planar role. A new best model is refined by repeated
// eight-point fits on its inliers while the inlier count grows.
// Deterministic given (data, config) when no time budget is set.
// Errors: kInvalidArgument, kNotEnoughPoints, kNoModelFound.
Result<RobustResult> Estimate(std::span<const Correspondence> data,
                              const RobustConfig& config);

}  // namespace fivepoint
