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

#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "error.hpp"
#include "noise_design.hpp"

namespace mvgdp {
namespace {

constexpr double kNegativeDust = 1e-10;

void RequireSymmetric(const Eigen::MatrixXd& s, const char* name) {
  if (s.rows() == 0 || s.rows() != s.cols()) {
    std::ostringstream msg;
    msg << name << " must be a non-empty square matrix, got " << s.rows()
        << "x" << s.cols();
    Fail(ErrorCode::kShape, msg.str());
  }
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    Fail(ErrorCode::kDomain, std::string(name) + " is not symmetric");
  }
}

double ClampDust(double x) { return (x < 0.0 && x >= -kNegativeDust) ? 0.0 : x; }

}  // namespace

double CapturedVariance(const Eigen::VectorXd& v, const Eigen::MatrixXd& s_bar) {
  RequireSymmetric(s_bar, "S_bar");
  if (v.size() != s_bar.rows()) {
    std::ostringstream msg;
    msg << "vector has " << v.size() << " entries, matrix is " << s_bar.rows()
        << "x" << s_bar.cols();
    Fail(ErrorCode::kShape, msg.str());
  }
  if (std::fabs(v.norm() - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "direction must be a unit vector, norm is " << v.norm();
    Fail(ErrorCode::kContract, msg.str());
  }
  return v.dot(s_bar * v);
}

double DeltaRho(const Eigen::VectorXd& v, const Eigen::MatrixXd& s_bar) {
  const double rho = CapturedVariance(v, s_bar);
  const double lambda1 = DescendingEigen(0.5 * (s_bar + s_bar.transpose())).values[0];
  return ClampDust(lambda1 - rho);
}

double Rss(const Eigen::MatrixXd& s_tilde, const Eigen::MatrixXd& s_bar) {
  RequireSymmetric(s_bar, "S_bar");
  RequireSymmetric(s_tilde, "S_tilde");
  if (s_tilde.rows() != s_bar.rows()) {
    std::ostringstream msg;
    msg << "S_tilde is " << s_tilde.rows() << "x" << s_tilde.cols()
        << " but S_bar is " << s_bar.rows() << "x" << s_bar.cols();
    Fail(ErrorCode::kShape, msg.str());
  }
  const SymmetricEigen truth = DescendingEigen(0.5 * (s_bar + s_bar.transpose()));
  const SymmetricEigen estimate =
      DescendingEigen(0.5 * (s_tilde + s_tilde.transpose()));
  double total = 0.0;
  for (Eigen::Index i = 0; i < truth.values.size(); ++i) {
    const Eigen::VectorXd v = estimate.vectors.col(i);
    const double residual = ClampDust(truth.values[i]) - v.dot(s_bar * v);
    total += residual * residual;
  }
  return total;
}

Eigen::VectorXd FirstPrincipalComponent(const Eigen::MatrixXd& estimate) {
  if (estimate.size() == 0) Fail(ErrorCode::kShape, "empty matrix");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(estimate, Eigen::ComputeFullU);
  return svd.matrixU().col(0).normalized();
}

double RidgeRegressionRmse(const Eigen::MatrixXd& train_x,
                           const Eigen::VectorXd& train_y,
                           const Eigen::MatrixXd& test_x,
                           const Eigen::VectorXd& test_y, double reg) {
  if (!(reg > 0.0) || !std::isfinite(reg)) {
    Fail(ErrorCode::kDomain, "ridge regularization must be positive");
  }
  if (train_x.cols() != train_y.size() || test_x.cols() != test_y.size() ||
      train_x.rows() != test_x.rows() || train_x.cols() == 0 ||
      test_x.cols() == 0) {
    Fail(ErrorCode::kShape, "inconsistent regression dimensions");
  }
  const Eigen::Index m = train_x.rows();
  const Eigen::MatrixXd gram =
      train_x * train_x.transpose() + reg * Eigen::MatrixXd::Identity(m, m);
  const Eigen::VectorXd weights = gram.ldlt().solve(train_x * train_y);
  const Eigen::VectorXd residual = test_x.transpose() * weights - test_y;
  return std::sqrt(residual.squaredNorm() / static_cast<double>(residual.size()));
}

EvalReport Summarize(std::string metric_name, std::span<const double> values) {
  if (values.empty()) Fail(ErrorCode::kDomain, "no trial values to summarize");
  const auto k = static_cast<double>(values.size());
  double sum = 0.0;
  for (double x : values) sum += x;
  const double mean = sum / k;
  double half_width = 0.0;
  if (values.size() > 1) {
    double sq = 0.0;
    for (double x : values) sq += (x - mean) * (x - mean);
    half_width = 1.96 * std::sqrt(sq / (k - 1.0)) / std::sqrt(k);
  }
  return EvalReport{std::move(metric_name), mean, half_width, values.size()};
}

}  // namespace mvgdp
