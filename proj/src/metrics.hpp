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

#ifndef MVGDP_METRICS_HPP_
#define MVGDP_METRICS_HPP_

#include <cstddef>
#include <span>
#include <string>

#include <Eigen/Dense>

namespace mvgdp {

// rho = v^T S v for a unit vector v and symmetric S.
double CapturedVariance(const Eigen::VectorXd& v, const Eigen::MatrixXd& s_bar);

// lambda_1(S) - rho(v). Negative values within 1e-10 of zero clamp to 0.
double DeltaRho(const Eigen::VectorXd& v, const Eigen::MatrixXd& s_bar);

// sum_i (lambda_i(S_bar) - rho(v_i(S_tilde)))^2 with both spectra sorted in
// descending order and paired by rank. rho is evaluated against S_bar.
double Rss(const Eigen::MatrixXd& s_tilde, const Eigen::MatrixXd& s_bar);

// Unit left singular vector for the largest singular value. Works on
// perturbed matrices that are no longer symmetric.
Eigen::VectorXd FirstPrincipalComponent(const Eigen::MatrixXd& estimate);

// Closed-form ridge fit w = (X X^T + reg I)^-1 X y on columns-as-samples
// training data (no intercept), then sqrt(mean squared residual) on the test
// set.
double RidgeRegressionRmse(const Eigen::MatrixXd& train_x,
                           const Eigen::VectorXd& train_y,
                           const Eigen::MatrixXd& test_x,
                           const Eigen::VectorXd& test_y, double reg);

// Mean and normal-approximation 95% half-width of a metric over trials.
struct EvalReport {
  std::string metric_name;
  double mean = 0.0;
  double ci95_half_width = 0.0;
  std::size_t trials = 0;
};

// Half-width is 1.96 * sample_std / sqrt(k) with the n-1 sample standard
// deviation; a single trial reports 0.
EvalReport Summarize(std::string metric_name, std::span<const double> values);

}  // namespace mvgdp

#endif  // MVGDP_METRICS_HPP_
