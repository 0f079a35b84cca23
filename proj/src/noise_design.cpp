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

#include "noise_design.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>
#include <vector>

#include "error.hpp"

namespace mvgdp {
namespace {

constexpr double kOrthonormalTolerance = 1e-8;
constexpr double kEigenvalueFloor = 1e-12;

void ValidateFactor(const Eigen::MatrixXd& w, const Eigen::VectorXd& lambda,
                    const char* name) {
  if (w.rows() == 0 || w.rows() != w.cols()) {
    std::ostringstream msg;
    msg << "W_" << name << " must be a non-empty square matrix, got "
        << w.rows() << "x" << w.cols();
    Fail(ErrorCode::kShape, msg.str());
  }
  if (lambda.size() != w.rows()) {
    std::ostringstream msg;
    msg << "Lambda_" << name << " has " << lambda.size()
        << " entries but W_" << name << " is " << w.rows() << "x" << w.cols();
    Fail(ErrorCode::kShape, msg.str());
  }
  if (!IsOrthonormal(w, kOrthonormalTolerance)) {
    Fail(ErrorCode::kDegenerate,
         std::string("W_") + name + " is not orthonormal within 1e-8");
  }
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (!std::isfinite(lambda[i]) || lambda[i] <= 0.0) {
      std::ostringstream msg;
      msg << "Lambda_" << name << "[" << i << "] = " << lambda[i]
          << " is not strictly positive; the covariance must be positive "
             "definite";
      Fail(ErrorCode::kDegenerate, msg.str());
    }
  }
}

Eigen::MatrixXd Reconstruct(const Eigen::MatrixXd& w,
                            const Eigen::VectorXd& diag) {
  return w * diag.asDiagonal() * w.transpose();
}

void DecomposeDense(const Eigen::MatrixXd& cov, const char* name,
                    Eigen::MatrixXd* w, Eigen::VectorXd* lambda) {
  if (cov.rows() == 0 || cov.rows() != cov.cols()) {
    std::ostringstream msg;
    msg << name << " must be a non-empty square matrix, got " << cov.rows()
        << "x" << cov.cols();
    Fail(ErrorCode::kShape, msg.str());
  }
  if (!cov.allFinite()) {
    Fail(ErrorCode::kDomain, std::string(name) + " has non-finite entries");
  }
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    Fail(ErrorCode::kDomain, std::string(name) + " is not symmetric");
  }
  SymmetricEigen eig = DescendingEigen(0.5 * (cov + cov.transpose()));
  const double smallest = eig.values[eig.values.size() - 1];
  if (smallest < kEigenvalueFloor) {
    std::ostringstream msg;
    msg << name << " has eigenvalue " << smallest
        << " below the 1e-12 floor; the covariance must be positive definite";
    Fail(ErrorCode::kDegenerate, msg.str());
  }
  *w = std::move(eig.vectors);
  *lambda = std::move(eig.values);
}

}  // namespace

bool IsOrthonormal(const Eigen::MatrixXd& w, double tolerance) {
  if (w.rows() != w.cols()) return false;
  const Eigen::MatrixXd gram = w.transpose() * w;
  const Eigen::MatrixXd identity =
      Eigen::MatrixXd::Identity(w.rows(), w.cols());
  return (gram - identity).cwiseAbs().maxCoeff() <= tolerance;
}

SymmetricEigen DescendingEigen(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
  if (solver.info() != Eigen::Success) {
    Fail(ErrorCode::kInternal, "symmetric eigendecomposition did not converge");
  }
  const Eigen::Index n = symmetric.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const Eigen::VectorXd& values = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return values[a] > values[b];
                   });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = values[order[static_cast<std::size_t>(k)]];
    out.vectors.col(k) =
        solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

NoiseDesign::NoiseDesign(Eigen::MatrixXd w_sigma, Eigen::VectorXd lambda_sigma,
                         Eigen::MatrixXd w_psi, Eigen::VectorXd lambda_psi)
    : w_sigma_(std::move(w_sigma)),
      lambda_sigma_(std::move(lambda_sigma)),
      w_psi_(std::move(w_psi)),
      lambda_psi_(std::move(lambda_psi)) {}

NoiseDesign NoiseDesign::Factored(Eigen::MatrixXd w_sigma,
                                  Eigen::VectorXd lambda_sigma,
                                  Eigen::MatrixXd w_psi,
                                  Eigen::VectorXd lambda_psi) {
  ValidateFactor(w_sigma, lambda_sigma, "Sigma");
  ValidateFactor(w_psi, lambda_psi, "Psi");
  return NoiseDesign(std::move(w_sigma), std::move(lambda_sigma),
                     std::move(w_psi), std::move(lambda_psi));
}

NoiseDesign NoiseDesign::FromCovariances(const Eigen::MatrixXd& sigma,
                                         const Eigen::MatrixXd& psi) {
  Eigen::MatrixXd w_sigma, w_psi;
  Eigen::VectorXd lambda_sigma, lambda_psi;
  DecomposeDense(sigma, "Sigma", &w_sigma, &lambda_sigma);
  DecomposeDense(psi, "Psi", &w_psi, &lambda_psi);
  return Factored(std::move(w_sigma), std::move(lambda_sigma),
                  std::move(w_psi), std::move(lambda_psi));
}

NoiseDesign NoiseDesign::Isotropic(std::size_t m, std::size_t n,
                                   double sigma_variance, double psi_variance) {
  const auto rows = static_cast<Eigen::Index>(m);
  const auto cols = static_cast<Eigen::Index>(n);
  return Factored(Eigen::MatrixXd::Identity(rows, rows),
                  Eigen::VectorXd::Constant(rows, sigma_variance),
                  Eigen::MatrixXd::Identity(cols, cols),
                  Eigen::VectorXd::Constant(cols, psi_variance));
}

Eigen::MatrixXd NoiseDesign::Sigma() const {
  return Reconstruct(w_sigma_, lambda_sigma_);
}

Eigen::MatrixXd NoiseDesign::Psi() const {
  return Reconstruct(w_psi_, lambda_psi_);
}

Eigen::MatrixXd NoiseDesign::SigmaInverse() const {
  return Reconstruct(w_sigma_, lambda_sigma_.cwiseInverse());
}

Eigen::MatrixXd NoiseDesign::PsiInverse() const {
  return Reconstruct(w_psi_, lambda_psi_.cwiseInverse());
}

}  // namespace mvgdp
