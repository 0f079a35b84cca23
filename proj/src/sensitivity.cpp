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

#include "sensitivity.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace mvgdp {

DataBounds::DataBounds(std::size_t num_features, std::size_t num_samples,
                       double lo, double hi)
    : num_features_(num_features), num_samples_(num_samples), lo_(lo), hi_(hi) {
  if (num_features == 0 || num_samples == 0) {
    Fail(ErrorCode::kShape, "data bounds need at least one feature and sample");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    std::ostringstream msg;
    msg << "data range must satisfy lo < hi, got [" << lo << ", " << hi << "]";
    Fail(ErrorCode::kDomain, msg.str());
  }
}

double DataBounds::magnitude() const {
  return std::fmax(std::fabs(lo_), std::fabs(hi_));
}

void DataBounds::Audit(const Eigen::MatrixXd& data) const {
  if (static_cast<std::size_t>(data.rows()) != num_features_ ||
      static_cast<std::size_t>(data.cols()) != num_samples_) {
    std::ostringstream msg;
    msg << "data is " << data.rows() << "x" << data.cols()
        << " but the bounds declare " << num_features_ << "x" << num_samples_;
    Fail(ErrorCode::kContract, msg.str());
  }
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      const double x = data(i, j);
      if (!(x >= lo_ && x <= hi_)) {
        std::ostringstream msg;
        msg << "value " << x << " (feature " << i << ", record " << j
            << ") lies outside the declared range [" << lo_ << ", " << hi_
            << "]";
        Fail(ErrorCode::kContract, msg.str());
      }
    }
  }
}

double IdentitySensitivity(const DataBounds& bounds) {
  return bounds.width() *
         std::sqrt(static_cast<double>(bounds.num_features()));
}

double CovarianceSensitivity(const DataBounds& bounds) {
  const double c = bounds.magnitude();
  return 2.0 * static_cast<double>(bounds.num_features()) * c * c /
         static_cast<double>(bounds.num_samples());
}

double GammaIdentity(const DataBounds& bounds) {
  return bounds.magnitude() *
         std::sqrt(static_cast<double>(bounds.num_features()) *
                   static_cast<double>(bounds.num_samples()));
}

double GammaCovariance(const DataBounds& bounds) {
  const double c = bounds.magnitude();
  return static_cast<double>(bounds.num_features()) * c * c;
}

double IdentityL1Sensitivity(const DataBounds& bounds) {
  return static_cast<double>(bounds.num_features()) * bounds.width();
}

double CovarianceL1Sensitivity(const DataBounds& bounds) {
  const double m = static_cast<double>(bounds.num_features());
  const double c = bounds.magnitude();
  return 2.0 * m * m * c * c / static_cast<double>(bounds.num_samples());
}

}  // namespace mvgdp
