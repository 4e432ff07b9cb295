#include "fivepoint/cli.h"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fivepoint/epipolar.h"
#include "fivepoint/fundamental_solver.h"
#include "fivepoint/io.h"
#include "fivepoint/robust.h"
#include "fivepoint/synthetic.h"

namespace fivepoint {
namespace {

using json = nlohmann::ordered_json;

struct Failure {
  int exit_code;
  Error error;
};

json ErrorDocument(const Error& error) {
  json doc;
  doc["error"]["code"] = std::string(ErrorCodeName(error.code));
  doc["error"]["message"] = error.message;
  return doc;
}

int Fail(std::ostream& err, int exit_code, const Error& error) {
  err << ErrorDocument(error).dump() << "\n";
  return exit_code;
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
    case ErrorCode::kIoError:
      return kExitFailure;
    case ErrorCode::kInvalidArgument:
      return kExitUsage;
    default:
      return kExitSolverFailure;
  }
}

json MatrixJson(const Eigen::Matrix3d& m) {
  json values = json::array();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      values.push_back(m(r, c));
    }
  }
  return values;
}

Result<SolverKind> SolverFromFlag(const std::string& name) {
  const auto solver = ParseSolverKind(name);
  if (!solver) {
    return Error{ErrorCode::kInvalidArgument, "unknown solver '" + name + "'"};
  }
  return *solver;
}

Result<std::vector<double>> ParseSigmas(const std::string& text) {
  std::vector<double> sigmas;
  auto parse = [](const std::string& token, double* value) {
    try {
      size_t used = 0;
      *value = std::stod(token, &used);
      return used == token.size() && std::isfinite(*value);
    } catch (const std::exception&) {
      return false;
    }
  };
  const Error bad{ErrorCode::kInvalidArgument,
                  "invalid --sigmas '" + text +
                      "', expected start:step:stop or a comma list"};
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream stream(text);
    std::string part;
    while (std::getline(stream, part, ':')) {
      parts.push_back(part);
    }
    double start = 0.0, step = 0.0, stop = 0.0;
    if (parts.size() != 3 || !parse(parts[0], &start) ||
        !parse(parts[1], &step) || !parse(parts[2], &stop) || step <= 0.0 ||
        stop < start) {
      return bad;
    }
    const auto count =
        static_cast<size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 10000) {
      return bad;
    }
    for (size_t i = 0; i < count; ++i) {
      sigmas.push_back(start + static_cast<double>(i) * step);
    }
  } else {
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
      double value = 0.0;
      if (!parse(token, &value)) {
        return bad;
      }
      sigmas.push_back(value);
    }
  }
  if (sigmas.empty()) {
    return bad;
  }
  for (const double sigma : sigmas) {
    if (sigma < 0.0) {
      return Error{ErrorCode::kInvalidArgument, "sigma must be non-negative"};
    }
  }
  return sigmas;
}

Result<std::vector<SolverKind>> ParseSolverList(
    const std::vector<std::string>& names) {
  std::vector<SolverKind> solvers;
  for (const auto& name : names) {
    auto solver = SolverFromFlag(name);
    if (!solver) {
      return solver.error();
    }
    solvers.push_back(*solver);
  }
  return solvers;
}

Result<CorrespondenceFile> LoadForSolver(const std::string& path,
                                         SolverKind solver) {
  auto file = ReadCorrespondenceFile(path);
  if (!file) {
    return file.error();
  }
  if (solver == SolverKind::kFivePoint && !file->has_alpha) {
    return Error{ErrorCode::kInvalidArgument,
                 "five_point needs an alpha column in " + path};
  }
  return file;
}

json ResidualsJson(const FundamentalMatrix& F,
                   std::span<const Correspondence> data,
                   std::span<const size_t> indices) {
  json residuals = json::array();
  for (const size_t i : indices) {
    residuals.push_back(SymmetricEpipolarError(F, data[i]));
  }
  return residuals;
}

struct SolveArgs {
  std::string file;
  std::string solver = "five_point";
  std::vector<size_t> indices;
};

int RunSolve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  const auto solver = SolverFromFlag(args.solver);
  if (!solver) {
    return Fail(err, kExitUsage, solver.error());
  }
  const auto file = LoadForSolver(args.file, *solver);
  if (!file) {
    return Fail(err, ExitCodeFor(file.code()), file.error());
  }
  const auto& data = file->correspondences;
  const size_t needed = MinimalSampleSize(*solver);
  const bool size_ok = *solver == SolverKind::kEightPoint
                           ? args.indices.size() >= needed
                           : args.indices.size() == needed;
  if (!size_ok) {
    return Fail(err, kExitUsage,
                {ErrorCode::kInvalidArgument,
                 std::string(SolverName(*solver)) + " needs " +
                     std::to_string(needed) + " indices"});
  }
  std::vector<Correspondence> sample;
  for (const size_t i : args.indices) {
    if (i >= data.size()) {
      return Fail(err, kExitUsage,
                  {ErrorCode::kInvalidArgument,
                   "index " + std::to_string(i) + " out of range"});
    }
    sample.push_back(data[i]);
  }

  Result<std::vector<FundamentalMatrix>> candidates =
      std::vector<FundamentalMatrix>{};
  switch (*solver) {
    case SolverKind::kFivePoint: {
      Sample5 five;
      std::copy(sample.begin(), sample.end(), five.begin());
      candidates = SolveFivePoint(five, {0, 1, 2});
      break;
    }
    case SolverKind::kSevenPoint:
      candidates = SevenPoint(sample);
      break;
    case SolverKind::kEightPoint: {
      const auto F = EightPoint(sample);
      if (F) {
        candidates = std::vector<FundamentalMatrix>{*F};
      } else {
        candidates = F.error();
      }
      break;
    }
  }
  if (!candidates) {
    return Fail(err, kExitSolverFailure, candidates.error());
  }

  json doc;
  doc["solver"] = std::string(SolverName(*solver));
  doc["indices"] = args.indices;
  json list = json::array();
  for (const auto& F : *candidates) {
    json entry;
    entry["F"] = MatrixJson(CanonicalScale(F.matrix()));
    entry["det_residual"] = F.RelativeDeterminant();
    entry["sample_residuals"] = ResidualsJson(F, data, args.indices);
    list.push_back(entry);
  }
  doc["candidates"] = list;
  out << doc.dump(2) << "\n";
  return kExitOk;
}

struct RansacArgs {
  std::string file;
  std::string solver = "five_point";
  double threshold = 1.0;
  double confidence = 0.99;
  std::optional<double> time_budget;
  uint64_t seed = 0;
  size_t max_iterations = 100000;
  bool no_lo = false;
  double degeneracy_threshold = 1.0;
  bool residuals = false;
};

int RunRansac(const RansacArgs& args, std::ostream& out, std::ostream& err) {
  const auto solver = SolverFromFlag(args.solver);
  if (!solver) {
    return Fail(err, kExitUsage, solver.error());
  }
  const auto file = LoadForSolver(args.file, *solver);
  if (!file) {
    return Fail(err, ExitCodeFor(file.code()), file.error());
  }
  RobustConfig config;
  config.solver = *solver;
  config.inlier_threshold = args.threshold;
  config.confidence = args.confidence;
  config.time_budget = args.time_budget;
  config.seed = args.seed;
  config.max_iterations = args.max_iterations;
  config.lo_enabled = !args.no_lo;
  config.degeneracy_threshold = args.degeneracy_threshold;
  if (const auto invalid = ValidateConfig(config)) {
    return Fail(err, kExitUsage, *invalid);
  }
  const auto& data = file->correspondences;
  const auto result = Estimate(data, config);
  if (!result) {
    return Fail(err, ExitCodeFor(result.code()), result.error());
  }

  json doc;
  doc["solver"] = std::string(SolverName(*solver));
  doc["F"] = MatrixJson(CanonicalScale(result->F.matrix()));
  doc["num_correspondences"] = data.size();
  doc["num_inliers"] = result->inliers.size();
  doc["inliers"] = result->inliers;
  doc["samples_drawn"] = result->samples_drawn;
  doc["rejected_samples"] = result->rejected_samples;
  doc["lo_iterations"] = result->lo_iterations;
  doc["terminated_by"] = std::string(TerminationName(result->terminated_by));
  doc["elapsed_seconds"] = result->elapsed_seconds;
  if (args.residuals) {
    std::vector<size_t> all(data.size());
    for (size_t i = 0; i < all.size(); ++i) {
      all[i] = i;
    }
    doc["residuals"] = ResidualsJson(result->F, data, all);
  }
  json& echo = doc["config"];
  echo["file"] = args.file;
  echo["solver"] = std::string(SolverName(*solver));
  echo["threshold"] = config.inlier_threshold;
  echo["confidence"] = config.confidence;
  echo["time_budget"] =
      config.time_budget ? json(*config.time_budget) : json(nullptr);
  echo["seed"] = config.seed;
  echo["max_iter"] = config.max_iterations;
  echo["lo"] = config.lo_enabled;
  echo["degeneracy_threshold"] = config.degeneracy_threshold;
  out << doc.dump(2) << "\n";
  return kExitOk;
}

struct IterTableArgs {
  double confidence = 0.95;
  std::vector<double> outlier_ratios = {0.5, 0.8, 0.95, 0.99};
  std::vector<size_t> sample_sizes = {5, 7, 8};
  std::string format = "text";
};

int RunIterTable(const IterTableArgs& args, std::ostream& out,
                 std::ostream& err) {
  if (!(args.confidence > 0.0 && args.confidence < 1.0)) {
    return Fail(err, kExitUsage,
                {ErrorCode::kInvalidArgument, "confidence must be in (0, 1)"});
  }
  for (const double ratio : args.outlier_ratios) {
    if (!(ratio >= 0.0 && ratio < 1.0)) {
      return Fail(err, kExitUsage,
                  {ErrorCode::kInvalidArgument,
                   "outlier ratios must be in [0, 1)"});
    }
  }
  const bool csv = args.format == "csv";
  if (csv) {
    out << "outlier_ratio";
    for (const size_t m : args.sample_sizes) {
      out << ",m" << m;
    }
    out << "\n";
  } else {
    out << "outlier";
    for (const size_t m : args.sample_sizes) {
      out << "\t" << "m=" << m;
    }
    out << "\n";
  }
  for (const double ratio : args.outlier_ratios) {
    out << ratio;
    for (const size_t m : args.sample_sizes) {
      out << (csv ? "," : "\t") << RansacIterations(args.confidence, ratio, m);
    }
    out << "\n";
  }
  return kExitOk;
}

struct BenchArgs {
  std::string motion = "sideways";
  std::string sigmas = "0:0.25:2";
  size_t trials = 200;
  uint64_t seed = 0;
  std::string out_path;
  std::vector<std::string> solvers = {"five_point", "seven_point",
                                      "eight_point"};
};

int RunBench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  const auto motion = ParseMotion(args.motion);
  if (!motion) {
    return Fail(err, kExitUsage,
                {ErrorCode::kInvalidArgument,
                 "unknown motion '" + args.motion + "'"});
  }
  if (args.trials == 0) {
    return Fail(err, kExitUsage,
                {ErrorCode::kInvalidArgument, "--trials must be positive"});
  }
  const auto sigmas = ParseSigmas(args.sigmas);
  if (!sigmas) {
    return Fail(err, kExitUsage, sigmas.error());
  }
  const auto solvers = ParseSolverList(args.solvers);
  if (!solvers) {
    return Fail(err, kExitUsage, solvers.error());
  }
  const auto rows =
      RunNoiseSweep(*motion, *sigmas, args.trials, *solvers, args.seed);
  if (!rows) {
    return Fail(err, ExitCodeFor(rows.code()), rows.error());
  }
  if (args.out_path.empty()) {
    WriteSweepCsv(out, *rows);
    return kExitOk;
  }
  std::ofstream file(args.out_path);
  if (!file) {
    return Fail(err, kExitFailure,
                {ErrorCode::kIoError, "cannot write " + args.out_path});
  }
  WriteSweepCsv(file, *rows);
  return kExitOk;
}

struct SynthArgs {
  std::string motion = "random";
  uint64_t seed = 0;
  double sigma = 0.0;
  size_t outliers = 0;
  int planes = 5;
  int points_per_plane = 4;
  bool no_alpha = false;
  std::string out_path;
};

int RunSynth(const SynthArgs& args, std::ostream& out, std::ostream& err) {
  const auto motion = ParseMotion(args.motion);
  if (!motion) {
    return Fail(err, kExitUsage,
                {ErrorCode::kInvalidArgument,
                 "unknown motion '" + args.motion + "'"});
  }
  if (args.planes < 1 || args.points_per_plane < 1 || args.sigma < 0.0) {
    return Fail(err, kExitUsage,
                {ErrorCode::kInvalidArgument, "invalid scene parameters"});
  }
  OutlierDatasetOptions options;
  options.scene.num_planes = args.planes;
  options.scene.points_per_plane = args.points_per_plane;
  options.num_outliers = args.outliers;
  options.sigma = args.sigma;
  const auto dataset = GenerateOutlierDataset(*motion, args.seed, options);
  if (!dataset) {
    return Fail(err, kExitSolverFailure, dataset.error());
  }

  std::ostringstream text;
  const Eigen::Matrix3d F = CanonicalScale(dataset->scene.gt_F.matrix());
  text << "# motion " << args.motion << " seed " << args.seed << " sigma "
       << args.sigma << "\n";
  text.precision(17);
  text << "# gt_F";
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      text << " " << F(r, c);
    }
  }
  text << "\n# inliers";
  for (size_t i = 0; i < dataset->is_inlier.size(); ++i) {
    if (dataset->is_inlier[i]) {
      text << " " << i;
    }
  }
  text << "\n";
  CorrespondenceFile file;
  file.correspondences = dataset->data;
  file.has_alpha = !args.no_alpha;
  WriteCorrespondences(text, file);

  if (args.out_path.empty()) {
    out << text.str();
    return kExitOk;
  }
  std::ofstream stream(args.out_path, std::ios::binary);
  if (!stream || !(stream << text.str())) {
    return Fail(err, kExitFailure,
                {ErrorCode::kIoError, "cannot write " + args.out_path});
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Fundamental matrix estimation from point and rotation "
               "correspondences",
               "fivepoint"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run one minimal solver");
  solve_cmd->add_option("file", solve.file, "Correspondence file")->required();
  solve_cmd->add_option("--solver", solve.solver,
                        "five_point, seven_point or eight_point");
  solve_cmd->add_option("--indices", solve.indices,
                        "Sample indices; for five_point the first three are "
                        "co-planar")
      ->required()
      ->delimiter(',');

  RansacArgs ransac;
  auto* ransac_cmd = app.add_subcommand("ransac", "Robust estimation");
  ransac_cmd->add_option("file", ransac.file, "Correspondence file")
      ->required();
  ransac_cmd->add_option("--solver", ransac.solver);
  ransac_cmd->add_option("--threshold", ransac.threshold,
                         "Inlier threshold in pixels");
  ransac_cmd->add_option("--confidence", ransac.confidence);
  ransac_cmd->add_option("--time-budget", ransac.time_budget, "Seconds");
  ransac_cmd->add_option("--seed", ransac.seed);
  ransac_cmd->add_option("--max-iter", ransac.max_iterations);
  ransac_cmd->add_flag("--no-lo", ransac.no_lo,
                       "Disable local optimization");
  ransac_cmd->add_option("--degeneracy-threshold",
                         ransac.degeneracy_threshold,
                         "Plane check threshold in pixels, 0 disables");
  ransac_cmd->add_flag("--residuals", ransac.residuals,
                       "Emit per-point residuals");

  IterTableArgs table;
  auto* table_cmd =
      app.add_subcommand("iter-table", "RANSAC iteration numbers");
  table_cmd->add_option("--confidence", table.confidence);
  table_cmd->add_option("--outliers", table.outlier_ratios)->delimiter(',');
  table_cmd->add_option("--sample-sizes", table.sample_sizes)
      ->delimiter(',');
  table_cmd->add_option("--format", table.format)
      ->check(CLI::IsMember({"text", "csv"}));

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Noise sweep, CSV output");
  bench_cmd->add_option("--motion", bench.motion,
                        "random, sideways or forward");
  bench_cmd->add_option("--sigmas", bench.sigmas,
                        "start:step:stop or a comma list");
  bench_cmd->add_option("--trials", bench.trials);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--out", bench.out_path);
  bench_cmd->add_option("--solvers", bench.solvers)->delimiter(',');

  SynthArgs synth;
  auto* synth_cmd =
      app.add_subcommand("synth", "Write a synthetic correspondence file");
  synth_cmd->add_option("--motion", synth.motion);
  synth_cmd->add_option("--seed", synth.seed);
  synth_cmd->add_option("--sigma", synth.sigma);
  synth_cmd->add_option("--outliers", synth.outliers);
  synth_cmd->add_option("--planes", synth.planes);
  synth_cmd->add_option("--points-per-plane", synth.points_per_plane);
  synth_cmd->add_flag("--no-alpha", synth.no_alpha);
  synth_cmd->add_option("--out", synth.out_path);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      out << app.help();
      return kExitOk;
    }
    return Fail(err, kExitUsage, {ErrorCode::kInvalidArgument, e.what()});
  }

  if (*solve_cmd) return RunSolve(solve, out, err);
  if (*ransac_cmd) return RunRansac(ransac, out, err);
  if (*table_cmd) return RunIterTable(table, out, err);
  if (*bench_cmd) return RunBench(bench, out, err);
  if (*synth_cmd) return RunSynth(synth, out, err);
  return Fail(err, kExitUsage, {ErrorCode::kInvalidArgument, "no command"});
}

}  // namespace fivepoint
