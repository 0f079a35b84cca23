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
#include <sstream>

#include "error.hpp"

namespace mvgdp {

double RandomStream::Uniform() {
  constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;
  return (static_cast<double>(engine_() >> 11) + 0.5) * kTwoPowMinus53;
}

double RandomStream::StandardNormal() {
  if (spare_normal_) {
    const double value = *spare_normal_;
    spare_normal_.reset();
    return value;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * Uniform() - 1.0;
    v = 2.0 * Uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  return u * factor;
}

double RandomStream::Laplace(double scale) {
  const double centered = Uniform() - 0.5;
  const double magnitude = -scale * std::log(1.0 - 2.0 * std::fabs(centered));
  return centered < 0.0 ? -magnitude : magnitude;
}

Eigen::MatrixXd SampleStandardMatrix(RandomStream& stream, std::size_t m,
                                     std::size_t n) {
  if (m == 0 || n == 0) {
    std::ostringstream msg;
    msg << "cannot sample a " << m << "x" << n << " matrix";
    Fail(ErrorCode::kShape, msg.str());
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m),
                      static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      out(i, j) = stream.StandardNormal();
    }
  }
  return out;
}

DesignFactors FactorDesign(const NoiseDesign& design) {
  if ((design.lambda_sigma().array() <= 0.0).any() ||
      (design.lambda_psi().array() <= 0.0).any()) {
    Fail(ErrorCode::kDegenerate, "noise design has a nonpositive variance");
  }
  DesignFactors factors;
  factors.b_sigma =
      design.w_sigma() * design.lambda_sigma().cwiseSqrt().asDiagonal();
  factors.b_psi = design.w_psi() * design.lambda_psi().cwiseSqrt().asDiagonal();
  return factors;
}

Eigen::MatrixXd SampleMvg(RandomStream& stream, const DesignFactors& factors) {
  const Eigen::MatrixXd standard =
      SampleStandardMatrix(stream, static_cast<std::size_t>(factors.b_sigma.rows()),
                           static_cast<std::size_t>(factors.b_psi.rows()));
  return factors.b_sigma * standard * factors.b_psi.transpose();
}

Eigen::MatrixXd SampleMvg(RandomStream& stream, const NoiseDesign& design) {
  return SampleMvg(stream, FactorDesign(design));
}

}  // namespace mvgdp
