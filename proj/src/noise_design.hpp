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

#ifndef MVGDP_NOISE_DESIGN_HPP_
#define MVGDP_NOISE_DESIGN_HPP_

#include <cstddef>

#include <Eigen/Dense>

namespace mvgdp {

// Row-wise and column-wise covariance of a matrix-variate Gaussian, kept in
// factored form: Sigma = W_sigma diag(lambda_sigma) W_sigma^T and likewise
// for Psi. The columns of W are the noise directions and lambda holds the
// noise variance along each of them.
class NoiseDesign {
 public:
  // Orthonormality of W is checked to 1e-8 elementwise; every lambda entry
  // must be finite and strictly positive. Throws kDegenerate otherwise.
  static NoiseDesign Factored(Eigen::MatrixXd w_sigma,
                              Eigen::VectorXd lambda_sigma,
                              Eigen::MatrixXd w_psi,
                              Eigen::VectorXd lambda_psi);

  // Eigendecomposes dense symmetric covariances. Eigenvalues below 1e-12
  // are rejected as degenerate.
  static NoiseDesign FromCovariances(const Eigen::MatrixXd& sigma,
                                     const Eigen::MatrixXd& psi);

  // Sigma = sigma_variance * I_m, Psi = psi_variance * I_n.
  static NoiseDesign Isotropic(std::size_t m, std::size_t n,
                               double sigma_variance = 1.0,
                               double psi_variance = 1.0);

  std::size_t rows() const { return static_cast<std::size_t>(w_sigma_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(w_psi_.rows()); }

  const Eigen::MatrixXd& w_sigma() const { return w_sigma_; }
  const Eigen::VectorXd& lambda_sigma() const { return lambda_sigma_; }
  const Eigen::MatrixXd& w_psi() const { return w_psi_; }
  const Eigen::VectorXd& lambda_psi() const { return lambda_psi_; }

  Eigen::MatrixXd Sigma() const;
  Eigen::MatrixXd Psi() const;
  Eigen::MatrixXd SigmaInverse() const;
  Eigen::MatrixXd PsiInverse() const;

 private:
  NoiseDesign(Eigen::MatrixXd w_sigma, Eigen::VectorXd lambda_sigma,
              Eigen::MatrixXd w_psi, Eigen::VectorXd lambda_psi);

  Eigen::MatrixXd w_sigma_;
  Eigen::VectorXd lambda_sigma_;
  Eigen::MatrixXd w_psi_;
  Eigen::VectorXd lambda_psi_;
};

// True when w^T w = I within `tolerance` elementwise.
bool IsOrthonormal(const Eigen::MatrixXd& w, double tolerance = 1e-8);

// Eigenpairs of a symmetric matrix sorted by descending eigenvalue. Ties keep
// the solver's original index order.
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};
SymmetricEigen DescendingEigen(const Eigen::MatrixXd& symmetric);

}  // namespace mvgdp

#endif  // MVGDP_NOISE_DESIGN_HPP_
