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

#include "mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "error.hpp"

namespace mvgdp {
namespace {

void RequireShape(const Eigen::MatrixXd& value, const QuerySpec& query) {
  if (static_cast<std::size_t>(value.rows()) != query.m() ||
      static_cast<std::size_t>(value.cols()) != query.n()) {
    std::ostringstream msg;
    msg << "query value is " << value.rows() << "x" << value.cols()
        << " but the query spec declares " << query.m() << "x" << query.n();
    Fail(ErrorCode::kShape, msg.str());
  }
}

void RequireWithinGamma(const Eigen::MatrixXd& value, const QuerySpec& query) {
  const double norm = value.norm();
  if (!(norm <= query.gamma() * (1.0 + 1e-9))) {
    std::ostringstream msg;
    msg << "||f(X)||_F = " << norm << " exceeds the declared gamma = "
        << query.gamma();
    Fail(ErrorCode::kContract, msg.str());
  }
}

void RequireAllocationSize(const PrecisionAllocation& theta, std::size_t m) {
  if (theta.size() != m) {
    std::ostringstream msg;
    msg << "precision allocation has " << theta.size()
        << " entries but there are " << m << " directions";
    Fail(ErrorCode::kAllocation, msg.str());
  }
}

PerturbResult Perturb(const Eigen::MatrixXd& query_value,
                      const QuerySpec& query, const PrivacyParams& privacy,
                      const PrecisionAllocation& theta,
                      const Eigen::MatrixXd& w_sigma, RandomStream& stream,
                      BudgetMode mode) {
  RequireShape(query_value, query);
  RequireWithinGamma(query_value, query);
  RequireAllocationSize(theta, query.m());

  BudgetReport budget = PrecisionBudget(query, privacy, mode);
  Eigen::VectorXd variances =
      DirectionalVariances(theta, budget.precision_budget);
  const auto n = static_cast<Eigen::Index>(query.n());
  NoiseDesign design =
      mode == BudgetMode::kUnimodal
          ? NoiseDesign::Factored(w_sigma, variances,
                                  Eigen::MatrixXd::Identity(n, n),
                                  Eigen::VectorXd::Ones(n))
          : NoiseDesign::Factored(w_sigma, variances, w_sigma, variances);

  const ConditionCheck check = CheckCondition(design, query, privacy);
  if (!check.holds) {
    std::ostringstream msg;
    msg << "designed noise violates the privacy condition: lhs " << check.lhs
        << " > rhs " << check.rhs;
    Fail(ErrorCode::kInternal, msg.str());
  }

  PerturbResult result{query_value + SampleMvg(stream, design),
                       std::move(design), budget, stream.seed(), {}};
  return result;
}

}  // namespace

PrecisionAllocation::PrecisionAllocation(std::vector<double> weights) {
  if (weights.empty()) {
    Fail(ErrorCode::kAllocation, "precision allocation is empty");
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i]) || weights[i] <= 0.0) {
      std::ostringstream msg;
      msg << "precision allocation entry " << i << " = " << weights[i]
          << " must be positive; every direction needs some noise";
      Fail(ErrorCode::kAllocation, msg.str());
    }
    weights[i] = std::max(weights[i], kFloor);
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  theta_.resize(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    theta_[static_cast<Eigen::Index>(i)] = weights[i] / total;
  }
}

PrecisionAllocation PrecisionAllocation::Uniform(std::size_t m) {
  return PrecisionAllocation(std::vector<double>(m, 1.0));
}

PrecisionAllocation PrecisionAllocation::Binary(
    std::size_t m, double tau, std::span<const std::size_t> favored) {
  if (!(tau > 0.0 && tau < 1.0)) {
    std::ostringstream msg;
    msg << "tau must lie strictly inside (0, 1), got " << tau;
    Fail(ErrorCode::kAllocation, msg.str());
  }
  if (favored.empty()) {
    Fail(ErrorCode::kAllocation, "binary allocation needs a favored direction");
  }
  std::vector<bool> is_favored(m, false);
  for (std::size_t index : favored) {
    if (index >= m) {
      std::ostringstream msg;
      msg << "favored index " << index << " is out of range for " << m
          << " directions";
      Fail(ErrorCode::kAllocation, msg.str());
    }
    if (is_favored[index]) {
      std::ostringstream msg;
      msg << "favored index " << index << " is listed twice";
      Fail(ErrorCode::kAllocation, msg.str());
    }
    is_favored[index] = true;
  }
  const std::size_t k = favored.size();
  std::vector<double> weights(m);
  for (std::size_t i = 0; i < m; ++i) {
    weights[i] = is_favored[i] ? tau / static_cast<double>(k)
                               : (1.0 - tau) / static_cast<double>(m - k);
  }
  return PrecisionAllocation(std::move(weights));
}

Eigen::VectorXd DirectionalVariances(const PrecisionAllocation& theta,
                                     double precision_budget) {
  if (!(precision_budget > 0.0) || !std::isfinite(precision_budget)) {
    Fail(ErrorCode::kDomain, "precision budget must be finite and positive");
  }
  Eigen::VectorXd out(theta.theta().size());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out[i] = 1.0 / std::sqrt(theta.theta()[i] * precision_budget);
  }
  return out;
}

PerturbResult MvgUnimodal(const Eigen::MatrixXd& query_value,
                          const QuerySpec& query, const PrivacyParams& privacy,
                          const PrecisionAllocation& theta,
                          const Eigen::MatrixXd& w_sigma,
                          RandomStream& stream) {
  return Perturb(query_value, query, privacy, theta, w_sigma, stream,
                 BudgetMode::kUnimodal);
}

PerturbResult MvgEquiModal(const Eigen::MatrixXd& query_value,
                           const QuerySpec& query, const PrivacyParams& privacy,
                           const PrecisionAllocation& theta,
                           const Eigen::MatrixXd& w_sigma,
                           RandomStream& stream) {
  if (query.m() != query.n()) {
    std::ostringstream msg;
    msg << "equi-modal noise needs a square query, got " << query.m() << "x"
        << query.n();
    Fail(ErrorCode::kShape, msg.str());
  }
  std::vector<std::string> warnings;
  if (query_value.rows() == query_value.cols() && query_value.size() > 0) {
    const double scale = std::max(1.0, query_value.cwiseAbs().maxCoeff());
    if ((query_value - query_value.transpose()).cwiseAbs().maxCoeff() >
        1e-8 * scale) {
      warnings.emplace_back(
          "equi-modal noise is intended for symmetric queries; the input is "
          "not symmetric");
    }
  }
  PerturbResult result = Perturb(query_value, query, privacy, theta, w_sigma,
                                 stream, BudgetMode::kEquiModal);
  result.warnings = std::move(warnings);
  return result;
}

double GaussianBaselineSigma(double l2_sensitivity,
                             const PrivacyParams& privacy) {
  if (!(l2_sensitivity > 0.0) || !std::isfinite(l2_sensitivity)) {
    Fail(ErrorCode::kDomain, "L2 sensitivity must be finite and positive");
  }
  return l2_sensitivity * std::sqrt(2.0 * std::log(1.25 / privacy.delta())) /
         privacy.epsilon();
}

Eigen::MatrixXd GaussianIidBaseline(const Eigen::MatrixXd& query_value,
                                    const QuerySpec& query,
                                    const PrivacyParams& privacy,
                                    RandomStream& stream) {
  RequireShape(query_value, query);
  const double sigma = GaussianBaselineSigma(query.sensitivity(), privacy);
  return query_value +
         sigma * SampleStandardMatrix(stream, query.m(), query.n());
}

Eigen::MatrixXd LaplaceIidBaseline(const Eigen::MatrixXd& query_value,
                                   const QuerySpec& query, double epsilon,
                                   double l1_sensitivity,
                                   RandomStream& stream) {
  RequireShape(query_value, query);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    Fail(ErrorCode::kDomain, "epsilon must be finite and positive");
  }
  if (!(l1_sensitivity > 0.0) || !std::isfinite(l1_sensitivity)) {
    Fail(ErrorCode::kDomain, "L1 sensitivity must be finite and positive");
  }
  const double scale = l1_sensitivity / epsilon;
  Eigen::MatrixXd out = query_value;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      out(i, j) += stream.Laplace(scale);
    }
  }
  return out;
}

Eigen::MatrixXd DeriveDirectionsDp(const Eigen::MatrixXd& data,
                                   const DataBounds& bounds,
                                   const PrivacyParams& privacy, std::size_t k,
                                   RandomStream& stream) {
  const auto m = static_cast<std::size_t>(data.rows());
  if (k == 0 || k > m) {
    std::ostringstream msg;
    msg << "cannot derive " << k << " principal directions from " << m
        << " features";
    Fail(ErrorCode::kShape, msg.str());
  }
  bounds.Audit(data);
  const Eigen::MatrixXd covariance =
      data * data.transpose() / static_cast<double>(data.cols());
  const QuerySpec query(m, m, CovarianceSensitivity(bounds),
                        GammaCovariance(bounds), QueryKind::kCovariance);
  const Eigen::MatrixXd noisy =
      GaussianIidBaseline(covariance, query, privacy, stream);
  // Symmetrizing is post-processing and costs no privacy.
  return DescendingEigen(0.5 * (noisy + noisy.transpose())).vectors;
}

CharacteristicStats VerifyCharacteristic(const QuerySpec& query,
                                         const PrivacyParams& privacy,
                                         const NoiseDesign& design,
                                         std::size_t trials,
                                         RandomStream& stream) {
  if (design.rows() != query.m() || design.cols() != query.n()) {
    Fail(ErrorCode::kShape, "design dimensions do not match the query");
  }
  if (trials == 0) Fail(ErrorCode::kDomain, "need at least one trial");

  Eigen::Index top_row = 0;
  Eigen::Index top_col = 0;
  design.lambda_sigma().minCoeff(&top_row);
  design.lambda_psi().minCoeff(&top_col);
  const Eigen::VectorXd u = design.w_sigma().col(top_row);
  const Eigen::VectorXd v = design.w_psi().col(top_col);
  const Eigen::MatrixXd f1 = query.gamma() * u * v.transpose();
  const Eigen::MatrixXd delta = query.sensitivity() * u * v.transpose();
  const Eigen::MatrixXd f2 = f1 - delta;

  const Eigen::MatrixXd sigma_inv = design.SigmaInverse();
  const Eigen::MatrixXd psi_inv = design.PsiInverse();
  const double fixed_terms =
      (psi_inv * f2.transpose() * sigma_inv * f2).trace() -
      (psi_inv * f1.transpose() * sigma_inv * f1).trace();
  const Eigen::MatrixXd sigma_inv_delta = sigma_inv * delta;

  const double zeta = Zeta(privacy.delta(), query.m(), query.n());
  const double zeta_sq = zeta * zeta;
  const double bound = 2.0 * privacy.epsilon();
  const DesignFactors factors = FactorDesign(design);

  CharacteristicStats stats;
  stats.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const Eigen::MatrixXd standard =
        SampleStandardMatrix(stream, query.m(), query.n());
    if (standard.squaredNorm() > zeta_sq) continue;
    ++stats.r1_count;
    const Eigen::MatrixXd y =
        f1 + factors.b_sigma * standard * factors.b_psi.transpose();
    // tr(A) = tr(A^T) makes the two cross terms equal.
    const double cross = (psi_inv * y.transpose() * sigma_inv_delta).trace();
    if (2.0 * cross + fixed_terms <= bound) ++stats.pass_count;
  }
  stats.r1_rate =
      static_cast<double>(stats.r1_count) / static_cast<double>(trials);
  stats.conditional_pass_rate =
      stats.r1_count == 0 ? 0.0
                          : static_cast<double>(stats.pass_count) /
                                static_cast<double>(stats.r1_count);
  return stats;
}

}  // namespace mvgdp
