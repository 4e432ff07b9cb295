#include "fivepoint/robust.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "fivepoint/epipolar.h"
#include "fivepoint/fundamental_solver.h"
#include "fivepoint/random.h"

namespace fivepoint {
namespace {

using Clock = std::chrono::steady_clock;

struct Hypothesis {
  FundamentalMatrix F;
  std::vector<size_t> inliers;
};

class Deadline {
 public:
  explicit Deadline(std::optional<double> budget)
      : start_(Clock::now()), budget_(budget) {}

  double Elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }
  bool Expired() const { return budget_ && Elapsed() >= *budget_; }

 private:
  Clock::time_point start_;
  std::optional<double> budget_;
};

// Distinct uniform indices; the draw order is preserved because it assigns
// the co-planar role for the five-point solver.
void DrawSample(Rng& rng, size_t n, size_t k, std::vector<size_t>* sample) {
  sample->clear();
  while (sample->size() < k) {
    const size_t index = rng.UniformIndex(n);
    if (std::find(sample->begin(), sample->end(), index) == sample->end()) {
      sample->push_back(index);
    }
  }
}

std::vector<FundamentalMatrix> Hypothesize(
    std::span<const Correspondence> data, const std::vector<size_t>& sample,
    const RobustConfig& config) {
  switch (config.solver) {
    case SolverKind::kFivePoint: {
      Sample5 five;
      for (int i = 0; i < 5; ++i) {
        five[i] = data[sample[i]];
      }
      FivePointOptions options;
      options.degeneracy_threshold = config.degeneracy_threshold;
      return FivePointFundamental(five, {0, 1, 2}, options);
    }
    case SolverKind::kSevenPoint: {
      std::array<Correspondence, 7> seven;
      for (int i = 0; i < 7; ++i) {
        seven[i] = data[sample[i]];
      }
      auto result = SevenPoint(seven);
      return result ? std::move(*result) : std::vector<FundamentalMatrix>{};
    }
    case SolverKind::kEightPoint: {
      std::array<Correspondence, 8> eight;
      for (int i = 0; i < 8; ++i) {
        eight[i] = data[sample[i]];
      }
      auto result = EightPoint(eight);
      if (!result) {
        return {};
      }
      return {*result};
    }
  }
  return {};
}

}  // namespace

std::string_view SolverName(SolverKind solver) {
  switch (solver) {
    case SolverKind::kFivePoint:
      return "five_point";
    case SolverKind::kSevenPoint:
      return "seven_point";
    case SolverKind::kEightPoint:
      return "eight_point";
  }
  return "unknown";
}

std::optional<SolverKind> ParseSolverKind(std::string_view name) {
  if (name == "five_point" || name == "five" || name == "5") {
    return SolverKind::kFivePoint;
  }
  if (name == "seven_point" || name == "seven" || name == "7") {
    return SolverKind::kSevenPoint;
  }
  if (name == "eight_point" || name == "eight" || name == "8") {
    return SolverKind::kEightPoint;
  }
  return std::nullopt;
}

size_t MinimalSampleSize(SolverKind solver) {
  switch (solver) {
    case SolverKind::kFivePoint:
      return 5;
    case SolverKind::kSevenPoint:
      return 7;
    case SolverKind::kEightPoint:
      return 8;
  }
  return 0;
}

std::string_view TerminationName(Termination termination) {
  switch (termination) {
    case Termination::kConfidence:
      return "confidence";
    case Termination::kBudget:
      return "budget";
    case Termination::kMaxIterations:
      return "max_iter";
  }
  return "unknown";
}

std::optional<Error> ValidateConfig(const RobustConfig& config) {
  if (!(config.confidence > 0.0 && config.confidence < 1.0)) {
    return Error{ErrorCode::kInvalidArgument, "confidence must be in (0, 1)"};
  }
  if (!(config.inlier_threshold > 0.0)) {
    return Error{ErrorCode::kInvalidArgument, "threshold must be positive"};
  }
  if (config.time_budget && !(*config.time_budget >= 0.0)) {
    return Error{ErrorCode::kInvalidArgument,
                 "time budget must be non-negative"};
  }
  return std::nullopt;
}

uint64_t RansacIterations(double confidence, double outlier_ratio,
                          size_t sample_size) {
  constexpr uint64_t kSaturated = std::numeric_limits<uint64_t>::max();
  const double all_inlier =
      std::pow(1.0 - outlier_ratio, static_cast<double>(sample_size));
  if (all_inlier >= 1.0) {
    return 1;
  }
  const double denominator = std::log1p(-all_inlier);
  if (denominator == 0.0) {
    return kSaturated;
  }
  const double iterations =
      std::round(std::log1p(-confidence) / denominator);
  if (!(iterations < static_cast<double>(kSaturated))) {
    return kSaturated;
  }
  return std::max<uint64_t>(1, static_cast<uint64_t>(iterations));
}

std::vector<size_t> ClassifyInliers(const FundamentalMatrix& F,
                                    std::span<const Correspondence> data,
                                    double threshold) {
  std::vector<size_t> inliers;
  for (size_t i = 0; i < data.size(); ++i) {
    if (SymmetricEpipolarError(F, data[i]) <= threshold) {
      inliers.push_back(i);
    }
  }
  return inliers;
}

Result<RobustResult> Estimate(std::span<const Correspondence> data,
                              const RobustConfig& config) {
  if (auto invalid = ValidateConfig(config)) {
    return *invalid;
  }
  const size_t sample_size = MinimalSampleSize(config.solver);
  if (data.size() < sample_size) {
    return ErrorCode::kNotEnoughPoints;
  }

  const Deadline deadline(config.time_budget);
  Rng rng(config.seed);
  RobustResult result;
  std::optional<Hypothesis> best;
  uint64_t required = config.max_iterations;
  bool budget_hit = false;
  std::vector<size_t> sample;
  std::vector<Correspondence> inlier_data;

  const auto local_optimize = [&](Hypothesis* current) {
    for (int round = 0; round < config.lo_max_rounds; ++round) {
      if (current->inliers.size() < 8 || deadline.Expired()) {
        return;
      }
      inlier_data.clear();
      for (const size_t i : current->inliers) {
        inlier_data.push_back(data[i]);
      }
      const auto refit = EightPoint(inlier_data);
      ++result.lo_iterations;
      if (!refit) {
        return;
      }
      auto inliers = ClassifyInliers(*refit, data, config.inlier_threshold);
      if (inliers.size() <= current->inliers.size()) {
        return;
      }
      current->F = *refit;
      current->inliers = std::move(inliers);
    }
  };

  while (result.samples_drawn < std::min<uint64_t>(required,
                                                   config.max_iterations)) {
    if (deadline.Expired()) {
      budget_hit = true;
      break;
    }
    DrawSample(rng, data.size(), sample_size, &sample);
    ++result.samples_drawn;
    const auto candidates = Hypothesize(data, sample, config);
    if (candidates.empty()) {
      ++result.rejected_samples;
      continue;
    }
    for (const auto& F : candidates) {
      auto inliers = ClassifyInliers(F, data, config.inlier_threshold);
      if (best && inliers.size() <= best->inliers.size()) {
        continue;
      }
      Hypothesis hypothesis{F, std::move(inliers)};
      if (config.lo_enabled) {
        local_optimize(&hypothesis);
      }
      best = std::move(hypothesis);
      result.best_inlier_history.push_back(best->inliers.size());
      const double outlier_ratio =
          1.0 - static_cast<double>(best->inliers.size()) /
                    static_cast<double>(data.size());
      required =
          RansacIterations(config.confidence, outlier_ratio, sample_size);
    }
  }

  result.elapsed_seconds = deadline.Elapsed();
  if (budget_hit) {
    result.terminated_by = Termination::kBudget;
  } else if (required <= config.max_iterations) {
    result.terminated_by = Termination::kConfidence;
  } else {
    result.terminated_by = Termination::kMaxIterations;
  }
  if (!best) {
    return Error{ErrorCode::kNoModelFound, "every sample was rejected"};
  }
  result.F = best->F;
  result.inliers = std::move(best->inliers);
  return result;
}

}  // namespace fivepoint
