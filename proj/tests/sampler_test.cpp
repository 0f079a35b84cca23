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

#include "sampler.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "error.hpp"
#include "noise_design.hpp"
#include "oracles.hpp"

namespace mvgdp {
namespace {

TEST(RandomStreamTest, SameSeedSameSequence) {
  RandomStream a(42);
  RandomStream b(42);
  RandomStream c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.StandardNormal();
    EXPECT_EQ(x, b.StandardNormal());
    differs |= x != c.StandardNormal();
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(a.seed(), 42u);
}

TEST(RandomStreamTest, UniformFromEngineBits) {
  RandomStream stream(7);
  std::mt19937_64 engine(7);
  for (int i = 0; i < 100; ++i) {
    const double expected =
        (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
    EXPECT_EQ(stream.Uniform(), expected);
  }
}

TEST(RandomStreamTest, UniformStaysOpen) {
  RandomStream stream(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = stream.Uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RandomStreamTest, NormalMoments) {
  RandomStream stream(3);
  const int n = 200000;
  long double sum = 0.0L;
  long double sq = 0.0L;
  long double quad = 0.0L;
  for (int i = 0; i < n; ++i) {
    const double x = stream.StandardNormal();
    sum += x;
    sq += x * x;
    quad += static_cast<long double>(x) * x * x * x;
  }
  EXPECT_NEAR(static_cast<double>(sum / n), 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(static_cast<double>(sq / n), 1.0, 5.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(static_cast<double>(quad / n), 3.0, 5.0 * std::sqrt(96.0 / n));
}

TEST(RandomStreamTest, LaplaceMoments) {
  RandomStream stream(4);
  const int n = 200000;
  const double b = 2.5;
  long double sum = 0.0L;
  long double abs_sum = 0.0L;
  for (int i = 0; i < n; ++i) {
    const double x = stream.Laplace(b);
    sum += x;
    abs_sum += std::abs(x);
  }
  // E|X| = b, Var|X| = b^2; Var X = 2 b^2.
  EXPECT_NEAR(static_cast<double>(sum / n), 0.0, 5.0 * b * std::sqrt(2.0 / n));
  EXPECT_NEAR(static_cast<double>(abs_sum / n), b, 5.0 * b / std::sqrt(n));
}

TEST(SampleStandardMatrixTest, ColumnMajorFill) {
  RandomStream a(9);
  RandomStream b(9);
  const Eigen::MatrixXd z = SampleStandardMatrix(a, 3, 4);
  for (Eigen::Index j = 0; j < 4; ++j) {
    for (Eigen::Index i = 0; i < 3; ++i) EXPECT_EQ(z(i, j), b.StandardNormal());
  }
  EXPECT_THROW(SampleStandardMatrix(a, 0, 4), Error);
}

TEST(SampleMvgTest, IsotropicScalesStandardDraw) {
  RandomStream a(12);
  RandomStream b(12);
  const Eigen::MatrixXd z = SampleMvg(a, NoiseDesign::Isotropic(2, 3, 4.0, 1.0));
  const Eigen::MatrixXd n = SampleStandardMatrix(b, 2, 3);
  EXPECT_TRUE(z.isApprox(2.0 * n, 1e-15));
}

TEST(SampleMvgTest, FactorsReproduceCovariances) {
  std::mt19937_64 gen(2);
  const Eigen::MatrixXd sigma = oracle::RandomPsd(3, gen);
  const Eigen::MatrixXd psi = oracle::RandomPsd(2, gen);
  const DesignFactors f = FactorDesign(NoiseDesign::FromCovariances(sigma, psi));
  EXPECT_TRUE((f.b_sigma * f.b_sigma.transpose()).isApprox(sigma, 1e-12));
  EXPECT_TRUE((f.b_psi * f.b_psi.transpose()).isApprox(psi, 1e-12));
}

TEST(SampleMvgTest, EmpiricalKroneckerCovariance) {
  std::mt19937_64 gen(8);
  const Eigen::MatrixXd sigma = oracle::RandomPsd(2, gen);
  const Eigen::MatrixXd psi = oracle::RandomPsd(2, gen);
  const Eigen::MatrixXd truth = oracle::Kronecker(psi, sigma);
  const DesignFactors f = FactorDesign(NoiseDesign::FromCovariances(sigma, psi));
  RandomStream stream(21);
  const int draws = 40000;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(4, 4);
  for (int k = 0; k < draws; ++k) {
    const Eigen::VectorXd v = SampleMvg(stream, f).reshaped();
    acc += v * v.transpose();
  }
  acc /= draws;
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      // Var(v_i v_j) = S_ii S_jj + S_ij^2 for a zero-mean Gaussian.
      const double sd = std::sqrt(
          (truth(i, i) * truth(j, j) + truth(i, j) * truth(i, j)) / draws);
      EXPECT_NEAR(acc(i, j), truth(i, j), 5.0 * sd) << i << "," << j;
    }
  }
}

TEST(NoiseDesignTest, FactoredValidation) {
  const Eigen::Matrix2d eye = Eigen::Matrix2d::Identity();
  const Eigen::Vector2d ones(1.0, 1.0);
  EXPECT_NO_THROW(NoiseDesign::Factored(eye, ones, eye, ones));
  Eigen::Matrix2d skew = eye;
  skew(0, 1) = 0.1;
  try {
    NoiseDesign::Factored(skew, ones, eye, ones);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerate);
  }
  try {
    NoiseDesign::Factored(eye, Eigen::Vector2d(1.0, 0.0), eye, ones);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerate);
  }
  EXPECT_THROW(NoiseDesign::Factored(eye, Eigen::Vector3d(1, 1, 1), eye, ones),
               Error);
}

TEST(NoiseDesignTest, FromCovariancesRoundTrip) {
  std::mt19937_64 gen(4);
  const Eigen::MatrixXd sigma = oracle::RandomPsd(4, gen);
  const Eigen::MatrixXd psi = oracle::RandomPsd(3, gen);
  const NoiseDesign d = NoiseDesign::FromCovariances(sigma, psi);
  EXPECT_TRUE(d.Sigma().isApprox(sigma, 1e-12));
  EXPECT_TRUE(d.Psi().isApprox(psi, 1e-12));
  EXPECT_TRUE((d.SigmaInverse() * sigma).isIdentity(1e-10));
  EXPECT_TRUE((d.PsiInverse() * psi).isIdentity(1e-10));
}

TEST(NoiseDesignTest, RejectsAsymmetricAndSingular) {
  Eigen::Matrix2d asym;
  asym << 1.0, 0.5, 0.2, 1.0;
  try {
    NoiseDesign::FromCovariances(asym, Eigen::Matrix2d::Identity());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomain);
  }
  Eigen::Matrix2d singular;
  singular << 1.0, 1.0, 1.0, 1.0;
  try {
    NoiseDesign::FromCovariances(singular, Eigen::Matrix2d::Identity());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerate);
  }
}

TEST(DescendingEigenTest, MatchesJacobi) {
  std::mt19937_64 gen(6);
  for (int t = 0; t < 20; ++t) {
    const Eigen::MatrixXd s = oracle::RandomPsd(5, gen);
    const SymmetricEigen mine = DescendingEigen(s);
    const oracle::Eigenpairs ref = oracle::JacobiEigen(s);
    for (Eigen::Index k = 0; k < 5; ++k) {
      EXPECT_NEAR(mine.values(k), ref.values[static_cast<std::size_t>(k)], 1e-10);
      EXPECT_NEAR(std::abs(mine.vectors.col(k).dot(ref.vectors.col(k))), 1.0,
                  1e-8);
    }
    EXPECT_TRUE(IsOrthonormal(mine.vectors));
  }
}

}  // namespace
}  // namespace mvgdp
