//
// Copyright 2026 The mvgdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef MVGDP_HARNESS_HPP_
#define MVGDP_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "core_math.hpp"
#include "mechanisms.hpp"
#include "metrics.hpp"

namespace mvgdp {

// Allocation grammar:
//   uniform
//   binary:TAU:I,J,...   tau split equally over the listed directions
//   0.4,0.4,0.1,0.1      explicit weights (normalized)
struct ThetaSpec {
  PrecisionAllocation allocation;
  // Directions a binary spec favors; empty for uniform and explicit specs.
  std::vector<std::size_t> favored;
};
ThetaSpec ParseThetaSpec(std::string_view spec, std::size_t m);

// Noise direction source: "standard" (identity basis), "dp:FRACTION" (derived
// privately from the data with FRACTION of epsilon and delta; plain "dp"
// spends 0.2), or a path to an M x M orthonormal matrix stored as headerless
// CSV.
inline constexpr double kDefaultDirectionFraction = 0.2;
struct DirectionsSpec {
  enum class Kind { kStandard, kFile, kDpDerived };
  Kind kind = Kind::kStandard;
  std::string path;
  double fraction = 0.0;
};
DirectionsSpec ParseDirectionsSpec(std::string_view spec);

enum class Experiment {
  kRegression,
  kFirstPc,
  kCovarianceEstimation,
  kDirectionAblation,
};

enum class Mechanism {
  kMvgUnimodal,
  kMvgEquiModal,
  kGaussianIid,
  kLaplaceIid,
  kNonPrivate,  // no noise; the utility reference point
};

struct ExperimentConfig {
  Experiment experiment = Experiment::kFirstPc;
  std::string dataset_path;
  bool has_header = true;
  double lo = 0.0;
  double hi = 1.0;
  double epsilon = 1.0;
  std::optional<double> delta;  // defaults to 1 / (records seen by the query)
  Mechanism mechanism = Mechanism::kMvgUnimodal;
  std::string theta_spec = "uniform";
  std::string directions = "standard";
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double ridge = 1e-2;
  // Leading share of records used as the private training set.
  double train_fraction = 0.72;
  // Direction ablation: experiment to repeat and the allocations to sweep.
  Experiment ablation_base = Experiment::kFirstPc;
  std::vector<std::string> ablation_thetas;
};

// Runs `trials` independent releases with seeds seed, seed+1, ... on a
// features x records dataset. Configuration errors surface before any noise
// is drawn.
//   regression: identity query on the leading train_fraction of records with
//     the last feature row as the target; ridge RMSE on the held-out rest.
//   first PC: covariance query X X^T / N; delta_rho of the top singular
//     vector.
//   covariance estimation: identity query, S~ = X~ X~^T / N, RSS.
EvalReport RunExperiment(const ExperimentConfig& config,
                         const Eigen::MatrixXd& data);
EvalReport RunExperiment(const ExperimentConfig& config);

// One report per entry of config.ablation_thetas, each running the
// ablation_base experiment with identical seeds.
std::vector<EvalReport> RunAblation(const ExperimentConfig& config,
                                    const Eigen::MatrixXd& data);

// Dispatches on config.experiment and loads config.dataset_path.
std::vector<EvalReport> RunBench(const ExperimentConfig& config);

// Single private release for the perturb command.
struct PerturbOutcome {
  Eigen::MatrixXd output;  // X~ (features x records) or the noisy M x M
  BudgetReport budget;
  std::vector<std::string> warnings;
};
PerturbOutcome PerturbDataset(const Eigen::MatrixXd& data, QueryKind kind,
                              std::optional<BudgetMode> mode, double lo,
                              double hi, double epsilon,
                              std::optional<double> delta,
                              std::string_view theta_spec,
                              std::string_view directions, std::uint64_t seed);

enum class ReportFormat { kText, kCsv };

// Text: "metric=<name> mean=<mean> ci95=±<hw> trials=<k>" per line.
// Csv: "metric,mean,ci95,trials" header then one row per report.
// Numbers use six significant digits with trailing zeros kept.
std::string EmitReport(const EvalReport& report, ReportFormat format);
std::string EmitReports(std::span<const EvalReport> reports,
                        ReportFormat format);

// printf("%#.6g") without the locale dependence.
std::string FormatSignificant(double value);

}  // namespace mvgdp

#endif  // MVGDP_HARNESS_HPP_
