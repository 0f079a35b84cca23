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

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <unistd.h>

#include "csv.hpp"
#include "error.hpp"
#include "harness.hpp"
#include "sampler.hpp"

namespace mvgdp {
namespace {

template <typename Fn>
void ExpectCode(ErrorCode code, Fn fn) {
  try {
    fn();
    FAIL() << "expected " << ErrorCodeName(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

std::filesystem::path TempPath(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("mvgdp_test_" + std::to_string(::getpid()) + "_" + name);
}

TEST(CsvTest, HeaderAndTranspose) {
  const std::filesystem::path path = TempPath("two.csv");
  std::ofstream(path) << "a,b\n1,2\n3,4\n";
  const CsvMatrix m = LoadCsvMatrix(path.string(), true);
  Eigen::Matrix2d expected;
  expected << 1, 3, 2, 4;
  EXPECT_EQ(m.data, expected);
  EXPECT_EQ(m.names, (std::vector<std::string>{"a", "b"}));
  std::filesystem::remove(path);
}

TEST(CsvTest, SingleRowWithoutHeader) {
  const CsvTable t = ParseCsv("1.5,-2,+3e2\n", false);
  EXPECT_EQ(t.records.rows(), 1);
  EXPECT_EQ(t.records(0, 2), 300.0);
  EXPECT_TRUE(t.names.empty());
}

TEST(CsvTest, Errors) {
  ExpectCode(ErrorCode::kFormat, [] { ParseCsv("", false); });
  ExpectCode(ErrorCode::kFormat, [] { ParseCsv("a,b\n", true); });
  try {
    ParseCsv("1,2\n3\n", false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormat);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  try {
    ParseCsv("1,2\n3,x\n", false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormat);
    EXPECT_NE(std::string(e.what()).find("column 2"), std::string::npos) << e.what();
  }
  ExpectCode(ErrorCode::kIo,
             [] { ReadCsvFile("/nonexistent/mvgdp/file.csv", false); });
}

TEST(CsvTest, FormatRoundTripsExactly) {
  RandomStream s(3);
  Eigen::MatrixXd m(4, 3);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = s.StandardNormal() * 1e3;
  m(0, 0) = 0.1;
  m(1, 1) = -1e-300;
  EXPECT_EQ(ParseCsv(FormatCsv(m), false).records, m);
}

TEST(ThetaSpecTest, Grammar) {
  const ThetaSpec uniform = ParseThetaSpec("uniform", 4);
  EXPECT_DOUBLE_EQ(uniform.allocation.theta()(2), 0.25);
  EXPECT_TRUE(uniform.favored.empty());
  const ThetaSpec binary = ParseThetaSpec("binary:0.9:0,1", 4);
  EXPECT_NEAR(binary.allocation.theta()(0), 0.45, 1e-15);
  EXPECT_NEAR(binary.allocation.theta()(3), 0.05, 1e-15);
  EXPECT_EQ(binary.favored, (std::vector<std::size_t>{0, 1}));
  const ThetaSpec list = ParseThetaSpec("0.4,0.4,0.1,0.1", 4);
  EXPECT_NEAR(list.allocation.theta()(1), 0.4, 1e-15);
}

TEST(ThetaSpecTest, Errors) {
  ExpectCode(ErrorCode::kAllocation, [] { ParseThetaSpec("0.5,0.5", 3); });
  ExpectCode(ErrorCode::kFormat, [] { ParseThetaSpec("binary:0.9", 3); });
  ExpectCode(ErrorCode::kFormat, [] { ParseThetaSpec("binary:x:0", 3); });
  ExpectCode(ErrorCode::kFormat, [] { ParseThetaSpec("binary:0.9:a", 3); });
  ExpectCode(ErrorCode::kAllocation, [] { ParseThetaSpec("binary:0.9:5", 3); });
  ExpectCode(ErrorCode::kAllocation, [] { ParseThetaSpec("binary:1.5:0", 3); });
  ExpectCode(ErrorCode::kFormat, [] { ParseThetaSpec("uniformly", 3); });
}

TEST(DirectionsSpecTest, Grammar) {
  EXPECT_EQ(ParseDirectionsSpec("standard").kind,
            DirectionsSpec::Kind::kStandard);
  const DirectionsSpec dp = ParseDirectionsSpec("dp:0.25");
  EXPECT_EQ(dp.kind, DirectionsSpec::Kind::kDpDerived);
  EXPECT_EQ(dp.fraction, 0.25);
  EXPECT_EQ(ParseDirectionsSpec("dp").fraction, 0.2);
  const DirectionsSpec file = ParseDirectionsSpec("w.csv");
  EXPECT_EQ(file.kind, DirectionsSpec::Kind::kFile);
  EXPECT_EQ(file.path, "w.csv");
  ExpectCode(ErrorCode::kFormat, [] { ParseDirectionsSpec("dp:1.0"); });
}

TEST(ReportTest, SixSignificantDigits) {
  for (double v : {0.01624, 0.00026, 0.0, 100.0, 1234567.0, 1e-5, 0.0001,
                   -2.5, 123456.0, 9.999995e-5, -3.3e-12, 5e300}) {
    char expected[64];
    std::snprintf(expected, sizeof(expected), "%#.6g", v);
    EXPECT_EQ(FormatSignificant(v), expected) << v;
  }
  // Rounding into the next decade keeps six digits.
  EXPECT_EQ(FormatSignificant(999999.5), "1.00000e+06");
  EXPECT_EQ(FormatSignificant(0.0), "0.00000");
}

TEST(ReportTest, TextAndCsvLayout) {
  const EvalReport r{"RMSE", 0.01624, 0.00026, 100};
  EXPECT_EQ(EmitReport(r, ReportFormat::kText),
            "metric=RMSE mean=0.0162400 ci95=±0.000260000 trials=100\n");
  EXPECT_EQ(EmitReport(r, ReportFormat::kCsv),
            "metric,mean,ci95,trials\nRMSE,0.0162400,0.000260000,100\n");
}

TEST(ReportTest, CsvValuesRoundTripAtSixDigits) {
  const EvalReport r{"delta_rho", 0.123456789, 3.14159265e-7, 7};
  const std::string csv = EmitReport(r, ReportFormat::kCsv);
  const std::string row = csv.substr(csv.find('\n') + 1);
  const std::size_t a = row.find(',');
  const std::size_t b = row.find(',', a + 1);
  const double mean = std::strtod(row.substr(a + 1, b - a - 1).c_str(), nullptr);
  EXPECT_EQ(FormatSignificant(mean), FormatSignificant(r.mean));
  EXPECT_NEAR(mean, r.mean, 5e-6 * r.mean);
}

// Four features with variances roughly (4, 1, 1, 1) in the box [-4, 4].
Eigen::MatrixXd SyntheticData(std::size_t records, std::uint64_t seed) {
  RandomStream s(seed);
  const double scales[] = {2.0, 1.0, 1.0, 1.0};
  Eigen::MatrixXd data(4, static_cast<Eigen::Index>(records));
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    for (Eigen::Index i = 0; i < 4; ++i) {
      data(i, j) = scales[i] * std::sqrt(3.0) * (2.0 * s.Uniform() - 1.0);
    }
  }
  return data;
}

ExperimentConfig BaseConfig(Experiment e, Mechanism m) {
  ExperimentConfig c;
  c.experiment = e;
  c.mechanism = m;
  c.lo = -4.0;
  c.hi = 4.0;
  c.trials = 5;
  c.seed = 10;
  return c;
}

TEST(RunExperimentTest, NoiselessPathsAreExact) {
  const Eigen::MatrixXd data = SyntheticData(400, 1);
  const EvalReport pc = RunExperiment(
      BaseConfig(Experiment::kFirstPc, Mechanism::kNonPrivate), data);
  EXPECT_EQ(pc.metric_name, "delta_rho");
  EXPECT_NEAR(pc.mean, 0.0, 1e-10);
  const EvalReport cov = RunExperiment(
      BaseConfig(Experiment::kCovarianceEstimation, Mechanism::kNonPrivate),
      data);
  EXPECT_EQ(cov.metric_name, "RSS");
  EXPECT_LT(cov.mean, 1e-10);
}

TEST(RunExperimentTest, VanishingNoiseApproachesNonPrivate) {
  const Eigen::MatrixXd data = SyntheticData(400, 2);
  ExperimentConfig c = BaseConfig(Experiment::kRegression, Mechanism::kGaussianIid);
  c.trials = 1;
  c.epsilon = 1e6;
  const EvalReport noisy = RunExperiment(c, data);
  c.mechanism = Mechanism::kNonPrivate;
  const EvalReport clean = RunExperiment(c, data);
  EXPECT_EQ(noisy.metric_name, "RMSE");
  EXPECT_NEAR(noisy.mean, clean.mean, 1e-3);
  EXPECT_EQ(noisy.ci95_half_width, 0.0);
}

TEST(RunExperimentTest, DeterministicAndTrialIndependent) {
  const Eigen::MatrixXd data = SyntheticData(300, 3);
  ExperimentConfig c = BaseConfig(Experiment::kFirstPc, Mechanism::kMvgUnimodal);
  c.theta_spec = "binary:0.8:0";
  c.trials = 3;
  const EvalReport a = RunExperiment(c, data);
  const EvalReport b = RunExperiment(c, data);
  EXPECT_EQ(EmitReport(a, ReportFormat::kText), EmitReport(b, ReportFormat::kText));
  double sum = 0.0;
  for (std::uint64_t t = 0; t < 3; ++t) {
    ExperimentConfig one = c;
    one.trials = 1;
    one.seed = c.seed + t;
    sum += RunExperiment(one, data).mean;
  }
  EXPECT_NEAR(a.mean, sum / 3.0, 1e-12);
}

TEST(RunExperimentTest, EveryMechanismRuns) {
  const Eigen::MatrixXd data = SyntheticData(200, 4);
  for (Experiment e : {Experiment::kRegression, Experiment::kFirstPc,
                       Experiment::kCovarianceEstimation}) {
    for (Mechanism m : {Mechanism::kMvgUnimodal, Mechanism::kGaussianIid,
                        Mechanism::kLaplaceIid}) {
      ExperimentConfig c = BaseConfig(e, m);
      c.trials = 2;
      const EvalReport r = RunExperiment(c, data);
      EXPECT_TRUE(std::isfinite(r.mean));
      EXPECT_EQ(r.trials, 2u);
    }
  }
  ExperimentConfig equi =
      BaseConfig(Experiment::kFirstPc, Mechanism::kMvgEquiModal);
  equi.directions = "dp:0.3";
  equi.theta_spec = "binary:0.9:0";
  EXPECT_TRUE(std::isfinite(RunExperiment(equi, data).mean));
}

TEST(RunExperimentTest, ConfigurationErrors) {
  const Eigen::MatrixXd data = SyntheticData(100, 5);
  ExpectCode(ErrorCode::kConfig, [&] {
    RunExperiment(BaseConfig(Experiment::kRegression, Mechanism::kMvgEquiModal),
                  data);
  });
  ExpectCode(ErrorCode::kConfig, [&] {
    ExperimentConfig c = BaseConfig(Experiment::kFirstPc, Mechanism::kMvgUnimodal);
    c.trials = 0;
    RunExperiment(c, data);
  });
  ExpectCode(ErrorCode::kConfig, [&] {
    ExperimentConfig c = BaseConfig(Experiment::kFirstPc, Mechanism::kMvgUnimodal);
    c.theta_spec = "0.5,0.5";
    RunExperiment(c, data);
  });
  ExpectCode(ErrorCode::kConfig, [&] {
    ExperimentConfig c = BaseConfig(Experiment::kFirstPc, Mechanism::kGaussianIid);
    c.directions = "dp";
    RunExperiment(c, data);
  });
  ExpectCode(ErrorCode::kContract, [&] {
    ExperimentConfig c = BaseConfig(Experiment::kFirstPc, Mechanism::kMvgUnimodal);
    c.hi = 1.0;
    RunExperiment(c, data);
  });
}

TEST(RunAblationTest, OneReportPerAllocation) {
  const Eigen::MatrixXd data = SyntheticData(200, 6);
  ExperimentConfig c =
      BaseConfig(Experiment::kDirectionAblation, Mechanism::kMvgUnimodal);
  c.ablation_thetas = {"uniform", "binary:0.9:0,1"};
  c.trials = 2;
  const std::vector<EvalReport> reports = RunAblation(c, data);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].metric_name, "delta_rho[uniform]");
  EXPECT_EQ(reports[1].metric_name, "delta_rho[binary:0.9:0,1]");
  c.ablation_thetas.clear();
  ExpectCode(ErrorCode::kConfig, [&] { RunAblation(c, data); });
}

TEST(PerturbDatasetTest, ShapesAndModes) {
  const Eigen::MatrixXd data = SyntheticData(50, 7);
  const PerturbOutcome id = PerturbDataset(data, QueryKind::kIdentity,
                                           std::nullopt, -4, 4, 1.0,
                                           std::nullopt, "uniform", "standard", 1);
  EXPECT_EQ(id.output.rows(), 4);
  EXPECT_EQ(id.output.cols(), 50);
  EXPECT_EQ(id.budget.mode, BudgetMode::kUnimodal);
  const PerturbOutcome cov = PerturbDataset(
      data, QueryKind::kCovariance, std::nullopt, -4, 4, 1.0, 1e-3,
      "binary:0.9:0", "dp", 1);
  EXPECT_EQ(cov.output.rows(), 4);
  EXPECT_EQ(cov.output.cols(), 4);
  EXPECT_EQ(cov.budget.mode, BudgetMode::kEquiModal);
  ExpectCode(ErrorCode::kConfig, [&] {
    PerturbDataset(data, QueryKind::kIdentity, BudgetMode::kEquiModal, -4, 4,
                   1.0, std::nullopt, "uniform", "standard", 1);
  });
}

}  // namespace
}  // namespace mvgdp
