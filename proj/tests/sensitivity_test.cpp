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

#include <gtest/gtest.h>

#include "error.hpp"
#include "oracles.hpp"

namespace mvgdp {
namespace {

TEST(DataBoundsTest, Validation) {
  EXPECT_THROW(DataBounds(0, 5, 0.0, 1.0), Error);
  try {
    DataBounds(2, 5, 1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomain);
  }
  EXPECT_DOUBLE_EQ(DataBounds(2, 5, -3.0, 2.0).magnitude(), 3.0);
}

TEST(DataBoundsTest, AuditFlagsOutOfBoxValues) {
  const DataBounds bounds(2, 2, 0.0, 1.0);
  Eigen::MatrixXd data(2, 2);
  data << 0.0, 1.0, 0.5, 0.25;
  EXPECT_NO_THROW(bounds.Audit(data));
  data(1, 1) = 1.5;
  try {
    bounds.Audit(data);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContract);
  }
  try {
    bounds.Audit(Eigen::MatrixXd::Zero(3, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContract);
  }
}

TEST(SensitivityTest, ClosedForms) {
  EXPECT_NEAR(IdentitySensitivity(DataBounds(6, 345, 0.0, 1.0)),
              2.4494897427831781, 1e-15);
  EXPECT_NEAR(CovarianceSensitivity(DataBounds(4, 2021, -1.0, 1.0)),
              3.9584364176150420e-3, 1e-18);
  EXPECT_NEAR(IdentitySensitivity(DataBounds(21, 100, 0.0, 1.0)),
              4.5825756949558400, 1e-15);
  const DataBounds b(3, 10, -1.0, 2.0);
  EXPECT_NEAR(GammaIdentity(b), 2.0 * std::sqrt(30.0), 1e-14);
  EXPECT_NEAR(GammaCovariance(b), 12.0, 1e-14);
  EXPECT_NEAR(IdentityL1Sensitivity(b), 9.0, 1e-14);
  EXPECT_NEAR(CovarianceL1Sensitivity(b), 2.0 * 9.0 * 4.0 / 10.0, 1e-14);
}

TEST(SensitivityTest, DominatesBoxVertexSearch) {
  for (std::size_t m : {1u, 2u, 3u, 4u}) {
    for (auto [lo, hi] : {std::pair{0.0, 1.0}, std::pair{-1.0, 1.0},
                          std::pair{-0.5, 2.0}}) {
      const std::size_t n = 7;
      const DataBounds bounds(m, n, lo, hi);
      const double identity = oracle::BoxVertexSensitivity(
          m, lo, hi,
          [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
            return (x - y).norm();
          });
      // The identity bound is attained at opposite corners.
      EXPECT_NEAR(IdentitySensitivity(bounds), identity, 1e-12);
      const double covariance = oracle::BoxVertexSensitivity(
          m, lo, hi, [n](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
            return (x * x.transpose() - y * y.transpose()).norm() /
                   static_cast<double>(n);
          });
      EXPECT_LE(covariance, CovarianceSensitivity(bounds) * (1 + 1e-12));
    }
  }
}

}  // namespace
}  // namespace mvgdp
