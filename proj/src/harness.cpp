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

#include "harness.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <system_error>
#include <utility>

#include "csv.hpp"
#include "error.hpp"
#include "noise_design.hpp"
#include "sampler.hpp"
#include "sensitivity.hpp"

namespace mvgdp {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = s.find(sep, start);
    if (at == std::string_view::npos) {
      parts.push_back(Trim(s.substr(start)));
      return parts;
    }
    parts.push_back(Trim(s.substr(start, at - start)));
    start = at + 1;
  }
}

double ParseDouble(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    std::ostringstream msg;
    msg << "malformed " << what << " '" << text << "'";
    Fail(ErrorCode::kFormat, msg.str());
  }
  return value;
}

std::size_t ParseIndex(std::string_view text) {
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    std::ostringstream msg;
    msg << "malformed direction index '" << text << "'";
    Fail(ErrorCode::kFormat, msg.str());
  }
  return value;
}

const char* MetricName(Experiment experiment) {
  switch (experiment) {
    case Experiment::kRegression:
      return "RMSE";
    case Experiment::kFirstPc:
      return "delta_rho";
    case Experiment::kCovarianceEstimation:
      return "RSS";
    case Experiment::kDirectionAblation:
      break;
  }
  return "metric";
}

bool IsMvg(Mechanism mechanism) {
  return mechanism == Mechanism::kMvgUnimodal ||
         mechanism == Mechanism::kMvgEquiModal;
}

// Everything a trial needs, validated before any noise is drawn.
struct Prepared {
  Experiment experiment;
  Mechanism mechanism;
  Eigen::MatrixXd query_data;  // records the query sees
  DataBounds bounds;
  QuerySpec query;
  Eigen::MatrixXd query_value;
  PrivacyParams privacy;
  double l1_sensitivity;
  std::optional<ThetaSpec> theta;
  DirectionsSpec directions;
  Eigen::MatrixXd fixed_directions;
  Eigen::MatrixXd s_bar;
  Eigen::MatrixXd test_x;
  Eigen::VectorXd test_y;
  double ridge;
};

Prepared Prepare(const ExperimentConfig& config, Experiment experiment,
                 const std::string& theta_spec, const Eigen::MatrixXd& data) {
  if (config.trials == 0) Fail(ErrorCode::kConfig, "trials must be at least 1");
  if (experiment == Experiment::kDirectionAblation) {
    Fail(ErrorCode::kConfig, "ablation cannot be nested in itself");
  }
  const auto num_features = static_cast<std::size_t>(data.rows());
  const auto num_records = static_cast<std::size_t>(data.cols());
  if (num_features == 0 || num_records == 0) {
    Fail(ErrorCode::kConfig, "dataset is empty");
  }
  // Bounds audit over every loaded value, test records included.
  DataBounds(num_features, num_records, config.lo, config.hi).Audit(data);

  Eigen::MatrixXd query_data = data;
  Eigen::MatrixXd test_x;
  Eigen::VectorXd test_y;
  if (experiment == Experiment::kRegression) {
    if (num_features < 2) {
      Fail(ErrorCode::kConfig,
           "regression needs at least one feature column plus the target");
    }
    if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0)) {
      Fail(ErrorCode::kConfig, "train fraction must lie in (0, 1)");
    }
    const auto n_train = static_cast<Eigen::Index>(
        std::floor(config.train_fraction * static_cast<double>(num_records)));
    if (n_train < 1 || n_train >= data.cols()) {
      Fail(ErrorCode::kConfig, "dataset too small for a train/test split");
    }
    query_data = data.leftCols(n_train);
    const Eigen::Index last = data.rows() - 1;
    test_x = data.rightCols(data.cols() - n_train).topRows(last);
    test_y = data.rightCols(data.cols() - n_train).row(last).transpose();
  }
  const DataBounds bounds(static_cast<std::size_t>(query_data.rows()),
                          static_cast<std::size_t>(query_data.cols()),
                          config.lo, config.hi);

  const bool covariance_query = experiment == Experiment::kFirstPc;
  const std::size_t m = bounds.num_features();
  const std::size_t n = covariance_query ? m : bounds.num_samples();
  const QuerySpec query =
      covariance_query
          ? QuerySpec(m, n, CovarianceSensitivity(bounds),
                      GammaCovariance(bounds), QueryKind::kCovariance)
          : QuerySpec(m, n, IdentitySensitivity(bounds), GammaIdentity(bounds),
                      QueryKind::kIdentity);
  const double l1 = covariance_query ? CovarianceL1Sensitivity(bounds)
                                     : IdentityL1Sensitivity(bounds);

  if (config.mechanism == Mechanism::kMvgEquiModal && m != n) {
    std::ostringstream msg;
    msg << "equi-modal MVG needs a square query; this experiment's query is "
        << m << "x" << n;
    Fail(ErrorCode::kConfig, msg.str());
  }

  const double delta = config.delta.value_or(
      1.0 / static_cast<double>(bounds.num_samples()));
  std::optional<PrivacyParams> privacy;
  try {
    privacy.emplace(config.epsilon, delta);
  } catch (const Error& e) {
    Fail(ErrorCode::kConfig, e.what());
  }

  std::optional<ThetaSpec> theta;
  DirectionsSpec directions = ParseDirectionsSpec(config.directions);
  Eigen::MatrixXd fixed_directions;
  if (IsMvg(config.mechanism)) {
    try {
      theta.emplace(ParseThetaSpec(theta_spec, m));
    } catch (const Error& e) {
      Fail(ErrorCode::kConfig, e.what());
    }
    if (directions.kind == DirectionsSpec::Kind::kFile) {
      fixed_directions = ReadCsvFile(directions.path, false).records;
      if (static_cast<std::size_t>(fixed_directions.rows()) != m ||
          !IsOrthonormal(fixed_directions)) {
        std::ostringstream msg;
        msg << "directions file '" << directions.path << "' must hold an "
            << m << "x" << m << " orthonormal matrix";
        Fail(ErrorCode::kConfig, msg.str());
      }
    } else {
      fixed_directions = Eigen::MatrixXd::Identity(
          static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    }
  } else if (directions.kind != DirectionsSpec::Kind::kStandard) {
    Fail(ErrorCode::kConfig,
         "noise directions only apply to the MVG mechanisms");
  }

  Eigen::MatrixXd query_value =
      covariance_query ? Eigen::MatrixXd(query_data * query_data.transpose() /
                                         static_cast<double>(query_data.cols()))
                       : query_data;
  Eigen::MatrixXd s_bar;
  if (experiment != Experiment::kRegression) {
    s_bar = data * data.transpose() / static_cast<double>(data.cols());
  }

  return Prepared{experiment,
                  config.mechanism,
                  std::move(query_data),
                  bounds,
                  query,
                  std::move(query_value),
                  *privacy,
                  l1,
                  std::move(theta),
                  std::move(directions),
                  std::move(fixed_directions),
                  std::move(s_bar),
                  std::move(test_x),
                  std::move(test_y),
                  config.ridge};
}

Eigen::MatrixXd Release(const Prepared& prep, RandomStream& stream) {
  if (!IsMvg(prep.mechanism)) {
    switch (prep.mechanism) {
      case Mechanism::kGaussianIid:
        return GaussianIidBaseline(prep.query_value, prep.query, prep.privacy,
                                   stream);
      case Mechanism::kLaplaceIid:
        return LaplaceIidBaseline(prep.query_value, prep.query,
                                  prep.privacy.epsilon(), prep.l1_sensitivity,
                                  stream);
      default:
        return prep.query_value;
    }
  }

  PrivacyParams privacy = prep.privacy;
  Eigen::MatrixXd directions = prep.fixed_directions;
  if (prep.directions.kind == DirectionsSpec::Kind::kDpDerived) {
    const std::size_t k =
        prep.theta->favored.empty() ? prep.query.m() : prep.theta->favored.size();
    directions = DeriveDirectionsDp(prep.query_data, prep.bounds,
                                    prep.privacy.Scaled(prep.directions.fraction),
                                    k, stream);
    // Basic composition: the two stages' budgets add up to the total.
    privacy = prep.privacy.Scaled(1.0 - prep.directions.fraction);
  }
  PerturbResult result =
      prep.mechanism == Mechanism::kMvgUnimodal
          ? MvgUnimodal(prep.query_value, prep.query, privacy,
                        prep.theta->allocation, directions, stream)
          : MvgEquiModal(prep.query_value, prep.query, privacy,
                         prep.theta->allocation, directions, stream);
  // Budget audit on every trial.
  const ConditionCheck check = CheckCondition(result.design, prep.query, privacy);
  if (!check.holds) {
    std::ostringstream msg;
    msg << "trial with seed " << stream.seed()
        << " produced a design violating the privacy condition (lhs "
        << check.lhs << ", rhs " << check.rhs << ")";
    Fail(ErrorCode::kInternal, msg.str());
  }
  return std::move(result.output);
}

double Evaluate(const Prepared& prep, const Eigen::MatrixXd& released) {
  switch (prep.experiment) {
    case Experiment::kRegression: {
      const Eigen::Index last = released.rows() - 1;
      return RidgeRegressionRmse(released.topRows(last),
                                 released.row(last).transpose(), prep.test_x,
                                 prep.test_y, prep.ridge);
    }
    case Experiment::kFirstPc:
      return DeltaRho(FirstPrincipalComponent(released), prep.s_bar);
    case Experiment::kCovarianceEstimation: {
      const Eigen::MatrixXd s_tilde = released * released.transpose() /
                                      static_cast<double>(released.cols());
      return Rss(s_tilde, prep.s_bar);
    }
    case Experiment::kDirectionAblation:
      break;
  }
  Fail(ErrorCode::kInternal, "unreachable experiment kind");
}

std::vector<double> RunTrials(const Prepared& prep, std::size_t trials,
                              std::uint64_t seed) {
  std::vector<double> values(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    RandomStream stream(seed + t);
    values[t] = Evaluate(prep, Release(prep, stream));
  }
  return values;
}

}  // namespace

ThetaSpec ParseThetaSpec(std::string_view spec, std::size_t m) {
  spec = Trim(spec);
  if (spec == "uniform") return ThetaSpec{PrecisionAllocation::Uniform(m), {}};
  constexpr std::string_view kBinary = "binary:";
  if (spec.starts_with(kBinary)) {
    const std::string_view rest = spec.substr(kBinary.size());
    const std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos) {
      Fail(ErrorCode::kFormat,
           "binary allocation must read binary:TAU:I,J,... got '" +
               std::string(spec) + "'");
    }
    const double tau = ParseDouble(Trim(rest.substr(0, colon)), "tau");
    std::vector<std::size_t> favored;
    for (std::string_view part : Split(rest.substr(colon + 1), ',')) {
      favored.push_back(ParseIndex(part));
    }
    PrecisionAllocation allocation =
        PrecisionAllocation::Binary(m, tau, favored);
    return ThetaSpec{std::move(allocation), std::move(favored)};
  }
  std::vector<double> weights;
  for (std::string_view part : Split(spec, ',')) {
    weights.push_back(ParseDouble(part, "allocation weight"));
  }
  if (weights.size() != m) {
    std::ostringstream msg;
    msg << "allocation lists " << weights.size() << " weights for " << m
        << " directions";
    Fail(ErrorCode::kAllocation, msg.str());
  }
  return ThetaSpec{PrecisionAllocation(std::move(weights)), {}};
}

DirectionsSpec ParseDirectionsSpec(std::string_view spec) {
  spec = Trim(spec);
  DirectionsSpec out;
  if (spec.empty() || spec == "standard") return out;
  if (spec == "dp") {
    out.kind = DirectionsSpec::Kind::kDpDerived;
    out.fraction = kDefaultDirectionFraction;
    return out;
  }
  constexpr std::string_view kDp = "dp:";
  if (spec.starts_with(kDp)) {
    out.kind = DirectionsSpec::Kind::kDpDerived;
    out.fraction = ParseDouble(Trim(spec.substr(kDp.size())), "budget fraction");
    if (!(out.fraction > 0.0 && out.fraction < 1.0)) {
      std::ostringstream msg;
      msg << "direction budget fraction must lie in (0, 1), got "
          << out.fraction;
      Fail(ErrorCode::kFormat, msg.str());
    }
    return out;
  }
  out.kind = DirectionsSpec::Kind::kFile;
  out.path = std::string(spec);
  return out;
}

EvalReport RunExperiment(const ExperimentConfig& config,
                         const Eigen::MatrixXd& data) {
  if (config.experiment == Experiment::kDirectionAblation) {
    Fail(ErrorCode::kConfig, "use RunAblation for the direction ablation");
  }
  const Prepared prep =
      Prepare(config, config.experiment, config.theta_spec, data);
  const std::vector<double> values =
      RunTrials(prep, config.trials, config.seed);
  return Summarize(MetricName(config.experiment), values);
}

EvalReport RunExperiment(const ExperimentConfig& config) {
  return RunExperiment(config,
                       LoadCsvMatrix(config.dataset_path, config.has_header).data);
}

std::vector<EvalReport> RunAblation(const ExperimentConfig& config,
                                    const Eigen::MatrixXd& data) {
  if (config.ablation_base != Experiment::kRegression &&
      config.ablation_base != Experiment::kFirstPc) {
    Fail(ErrorCode::kConfig,
         "direction ablation runs on the regression or first-PC experiment");
  }
  if (config.ablation_thetas.empty()) {
    Fail(ErrorCode::kConfig, "direction ablation needs at least one allocation");
  }
  if (!IsMvg(config.mechanism)) {
    Fail(ErrorCode::kConfig, "direction ablation needs an MVG mechanism");
  }
  std::vector<Prepared> prepared;
  prepared.reserve(config.ablation_thetas.size());
  for (const std::string& spec : config.ablation_thetas) {
    prepared.push_back(Prepare(config, config.ablation_base, spec, data));
  }
  std::vector<EvalReport> reports;
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    const std::vector<double> values =
        RunTrials(prepared[i], config.trials, config.seed);
    reports.push_back(Summarize(std::string(MetricName(config.ablation_base)) +
                                    "[" + config.ablation_thetas[i] + "]",
                                values));
  }
  return reports;
}

std::vector<EvalReport> RunBench(const ExperimentConfig& config) {
  const Eigen::MatrixXd data =
      LoadCsvMatrix(config.dataset_path, config.has_header).data;
  if (config.experiment == Experiment::kDirectionAblation) {
    return RunAblation(config, data);
  }
  return {RunExperiment(config, data)};
}

PerturbOutcome PerturbDataset(const Eigen::MatrixXd& data, QueryKind kind,
                              std::optional<BudgetMode> mode, double lo,
                              double hi, double epsilon,
                              std::optional<double> delta,
                              std::string_view theta_spec,
                              std::string_view directions, std::uint64_t seed) {
  if (kind == QueryKind::kCustom) {
    Fail(ErrorCode::kConfig, "perturb supports the identity and covariance queries");
  }
  const DataBounds bounds(static_cast<std::size_t>(data.rows()),
                          static_cast<std::size_t>(data.cols()), lo, hi);
  bounds.Audit(data);
  const bool covariance = kind == QueryKind::kCovariance;
  const std::size_t m = bounds.num_features();
  const QuerySpec query =
      covariance ? QuerySpec(m, m, CovarianceSensitivity(bounds),
                             GammaCovariance(bounds), kind)
                 : QuerySpec(m, bounds.num_samples(), IdentitySensitivity(bounds),
                             GammaIdentity(bounds), kind);
  const BudgetMode budget_mode =
      mode.value_or(covariance ? BudgetMode::kEquiModal : BudgetMode::kUnimodal);
  if (budget_mode == BudgetMode::kEquiModal && query.m() != query.n()) {
    Fail(ErrorCode::kConfig, "equi-modal noise needs a square query");
  }
  PrivacyParams privacy(
      epsilon, delta.value_or(1.0 / static_cast<double>(bounds.num_samples())));
  const ThetaSpec theta = ParseThetaSpec(theta_spec, m);
  const DirectionsSpec source = ParseDirectionsSpec(directions);

  RandomStream stream(seed);
  Eigen::MatrixXd w = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m),
                                                static_cast<Eigen::Index>(m));
  if (source.kind == DirectionsSpec::Kind::kFile) {
    w = ReadCsvFile(source.path, false).records;
  } else if (source.kind == DirectionsSpec::Kind::kDpDerived) {
    const std::size_t k = theta.favored.empty() ? m : theta.favored.size();
    w = DeriveDirectionsDp(data, bounds, privacy.Scaled(source.fraction), k,
                           stream);
    privacy = privacy.Scaled(1.0 - source.fraction);
  }
  const Eigen::MatrixXd value =
      covariance ? Eigen::MatrixXd(data * data.transpose() /
                                   static_cast<double>(data.cols()))
                 : data;
  PerturbResult result =
      budget_mode == BudgetMode::kUnimodal
          ? MvgUnimodal(value, query, privacy, theta.allocation, w, stream)
          : MvgEquiModal(value, query, privacy, theta.allocation, w, stream);
  return PerturbOutcome{std::move(result.output), result.budget,
                        std::move(result.warnings)};
}

std::string FormatSignificant(double value) {
  if (!std::isfinite(value)) {
    return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  }
  constexpr int kDigits = 6;
  char buf[64];
  auto sci = std::to_chars(buf, buf + sizeof(buf), value,
                           std::chars_format::scientific, kDigits - 1);
  const std::string_view text(buf, static_cast<std::size_t>(sci.ptr - buf));
  const std::size_t e = text.find('e');
  std::size_t digits = e + 1;
  if (text[digits] == '+') ++digits;
  int exponent = 0;
  std::from_chars(text.data() + digits, text.data() + text.size(), exponent);
  if (exponent < -4 || exponent >= kDigits) return std::string(text);
  const int decimals = kDigits - 1 - exponent;
  auto fixed = std::to_chars(buf, buf + sizeof(buf), value,
                             std::chars_format::fixed, decimals);
  std::string out(buf, fixed.ptr);
  if (decimals == 0) out += '.';
  return out;
}

std::string EmitReport(const EvalReport& report, ReportFormat format) {
  const EvalReport one[] = {report};
  return EmitReports(one, format);
}

std::string EmitReports(std::span<const EvalReport> reports,
                        ReportFormat format) {
  std::string out;
  if (format == ReportFormat::kCsv) out += "metric,mean,ci95,trials\n";
  for (const EvalReport& r : reports) {
    const std::string mean = FormatSignificant(r.mean);
    const std::string ci = FormatSignificant(r.ci95_half_width);
    const std::string trials = std::to_string(r.trials);
    if (format == ReportFormat::kCsv) {
      out += r.metric_name + "," + mean + "," + ci + "," + trials + "\n";
    } else {
      out += "metric=" + r.metric_name + " mean=" + mean + " ci95=±" + ci +
             " trials=" + trials + "\n";
    }
  }
  return out;
}

}  // namespace mvgdp
