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

#ifndef MVGDP_MECHANISMS_HPP_
#define MVGDP_MECHANISMS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core_math.hpp"
#include "noise_design.hpp"
#include "sampler.hpp"
#include "sensitivity.hpp"

namespace mvgdp {

// Share of the precision budget given to each noise direction. Entries must
// be positive; values under 1e-6 are raised to 1e-6 and the vector is then
// normalized to sum to one.
class PrecisionAllocation {
 public:
  static constexpr double kFloor = 1e-6;

  explicit PrecisionAllocation(std::vector<double> weights);

  static PrecisionAllocation Uniform(std::size_t m);

  // tau split equally over `favored`, 1 - tau equally over the rest.
  static PrecisionAllocation Binary(std::size_t m, double tau,
                                    std::span<const std::size_t> favored);

  std::size_t size() const { return static_cast<std::size_t>(theta_.size()); }
  const Eigen::VectorXd& theta() const { return theta_; }

 private:
  Eigen::VectorXd theta_;
};

struct PerturbResult {
  Eigen::MatrixXd output;
  NoiseDesign design;
  BudgetReport budget;
  std::uint64_t seed = 0;
  // Non-fatal notes, e.g. an asymmetric input to the equi-modal mechanism.
  std::vector<std::string> warnings;
};

// Unimodal directional noise (Psi = I_n). Direction i receives precision
// theta_i * P and variance 1 / sqrt(theta_i * P).
PerturbResult MvgUnimodal(const Eigen::MatrixXd& query_value,
                          const QuerySpec& query, const PrivacyParams& privacy,
                          const PrecisionAllocation& theta,
                          const Eigen::MatrixXd& w_sigma, RandomStream& stream);

// Equi-modal directional noise (Psi = Sigma) for square queries.
PerturbResult MvgEquiModal(const Eigen::MatrixXd& query_value,
                           const QuerySpec& query, const PrivacyParams& privacy,
                           const PrecisionAllocation& theta,
                           const Eigen::MatrixXd& w_sigma,
                           RandomStream& stream);

// Variance design used by both algorithms: lambda_i = 1 / sqrt(theta_i P).
Eigen::VectorXd DirectionalVariances(const PrecisionAllocation& theta,
                                     double precision_budget);

// Classic analytic Gaussian scale s2 sqrt(2 ln(1.25/delta)) / epsilon. The
// classic bound is only proven for epsilon <= 1.
double GaussianBaselineSigma(double l2_sensitivity,
                             const PrivacyParams& privacy);

// f(X) + sigma N with N from SampleStandardMatrix.
Eigen::MatrixXd GaussianIidBaseline(const Eigen::MatrixXd& query_value,
                                    const QuerySpec& query,
                                    const PrivacyParams& privacy,
                                    RandomStream& stream);

// f(X) + Laplace(l1_sensitivity / epsilon) per entry, column-major order.
Eigen::MatrixXd LaplaceIidBaseline(const Eigen::MatrixXd& query_value,
                                   const QuerySpec& query, double epsilon,
                                   double l1_sensitivity, RandomStream& stream);

// Orthonormal M x M basis from the Gaussian-perturbed covariance X X^T / N,
// columns sorted by descending eigenvalue. The first k columns are the
// private principal directions. Spends `privacy` under the Gaussian
// baseline's guarantee, with the covariance sensitivity of `bounds`.
Eigen::MatrixXd DeriveDirectionsDp(const Eigen::MatrixXd& data,
                                   const DataBounds& bounds,
                                   const PrivacyParams& privacy, std::size_t k,
                                   RandomStream& stream);

struct CharacteristicStats {
  double conditional_pass_rate = 0.0;
  double r1_rate = 0.0;
  std::size_t trials = 0;
  std::size_t r1_count = 0;
  std::size_t pass_count = 0;
};

// Monte Carlo check of the privacy-loss trace inequality
//   tr[Psi^-1 Y^T Sigma^-1 D + Psi^-1 D^T Sigma^-1 Y
//      + Psi^-1 f2^T Sigma^-1 f2 - Psi^-1 f1^T Sigma^-1 f1] <= 2 epsilon
// on the event ||N||_F^2 <= zeta^2. The neighboring pair is synthesized as a
// rank-one worst case: f1 = gamma u v^T and D = f1 - f2 = s2 u v^T, with u, v
// the most precise directions of Sigma and Psi. Y = f1 + Z.
CharacteristicStats VerifyCharacteristic(const QuerySpec& query,
                                         const PrivacyParams& privacy,
                                         const NoiseDesign& design,
                                         std::size_t trials,
                                         RandomStream& stream);

}  // namespace mvgdp

#endif  // MVGDP_MECHANISMS_HPP_
