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

#ifndef MVGDP_SENSITIVITY_HPP_
#define MVGDP_SENSITIVITY_HPP_

#include <cstddef>

#include <Eigen/Dense>

namespace mvgdp {

// Declared box [lo, hi] for every entry of an M x N dataset whose columns are
// records. Neighboring datasets differ by replacing one column.
class DataBounds {
 public:
  DataBounds(std::size_t num_features, std::size_t num_samples, double lo,
             double hi);

  std::size_t num_features() const { return num_features_; }
  std::size_t num_samples() const { return num_samples_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }
  // Largest attainable magnitude, max(|lo|, |hi|).
  double magnitude() const;

  // Throws kContract if `data` has the wrong shape or leaves the box.
  void Audit(const Eigen::MatrixXd& data) const;

 private:
  std::size_t num_features_;
  std::size_t num_samples_;
  double lo_;
  double hi_;
};

// f(X) = X: (hi - lo) sqrt(M).
double IdentitySensitivity(const DataBounds& bounds);
// f(X) = X X^T / N: 2 M c^2 / N.
double CovarianceSensitivity(const DataBounds& bounds);
// sup ||X||_F = c sqrt(M N).
double GammaIdentity(const DataBounds& bounds);
// sup ||X X^T / N||_F <= M c^2.
double GammaCovariance(const DataBounds& bounds);

// Entrywise L1 sensitivities, used by the Laplace baseline.
double IdentityL1Sensitivity(const DataBounds& bounds);
double CovarianceL1Sensitivity(const DataBounds& bounds);

}  // namespace mvgdp

#endif  // MVGDP_SENSITIVITY_HPP_
