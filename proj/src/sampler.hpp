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

#ifndef MVGDP_SAMPLER_HPP_
#define MVGDP_SAMPLER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>

#include <Eigen/Dense>

#include "noise_design.hpp"

namespace mvgdp {

// Seeded source of uniform, standard-normal and Laplace variates.
//
// Generator, version 1:
//   - engine: std::mt19937_64 seeded with the 64-bit seed (the engine's output
//     sequence is fixed by the C++ standard);
//   - uniform: ((x >> 11) + 0.5) * 2^-53, which lies strictly inside (0, 1);
//   - normal: Marsaglia polar method on 2u - 1 pairs; the second variate of
//     each accepted pair is cached and returned by the next call;
//   - Laplace(b): inverse CDF, -b * sgn(u - 1/2) * ln(1 - 2|u - 1/2|).
// The same seed always yields the same sequence. A stream is not thread-safe;
// use one stream per thread.
class RandomStream {
 public:
  static constexpr int kGeneratorVersion = 1;

  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  double Uniform();
  double StandardNormal();
  double Laplace(double scale);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

// m x n matrix of i.i.d. N(0, 1) draws, filled in column-major order.
Eigen::MatrixXd SampleStandardMatrix(RandomStream& stream, std::size_t m,
                                     std::size_t n);

// B_sigma = W_sigma Lambda_sigma^{1/2}, B_psi = W_psi Lambda_psi^{1/2}, so
// that B B^T reproduces the covariance.
struct DesignFactors {
  Eigen::MatrixXd b_sigma;
  Eigen::MatrixXd b_psi;
};
DesignFactors FactorDesign(const NoiseDesign& design);

// Z = B_sigma N B_psi^T with N from SampleStandardMatrix. vec(Z) has
// covariance Psi (x) Sigma.
Eigen::MatrixXd SampleMvg(RandomStream& stream, const NoiseDesign& design);

// Same as SampleMvg with precomputed factors.
Eigen::MatrixXd SampleMvg(RandomStream& stream, const DesignFactors& factors);

}  // namespace mvgdp

#endif  // MVGDP_SAMPLER_HPP_
