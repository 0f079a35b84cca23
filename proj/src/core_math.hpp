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

#ifndef MVGDP_CORE_MATH_HPP_
#define MVGDP_CORE_MATH_HPP_

#include <cstddef>

#include "noise_design.hpp"

namespace mvgdp {

// (epsilon, delta) pair. epsilon > 0 and delta strictly inside (0, 1); the
// Gaussian-style guarantee has no delta = 0 form.
class PrivacyParams {
 public:
  PrivacyParams(double epsilon, double delta);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }

  // (fraction * epsilon, fraction * delta), for splitting a budget.
  PrivacyParams Scaled(double fraction) const;

 private:
  double epsilon_;
  double delta_;
};

enum class QueryKind { kIdentity, kCovariance, kCustom };

// Shape and norm bounds of a matrix-valued query f(X) in R^{m x n}.
class QuerySpec {
 public:
  // sensitivity is s2(f) in Frobenius units, gamma = sup ||f(X)||_F.
  QuerySpec(std::size_t m, std::size_t n, double sensitivity, double gamma,
            QueryKind kind = QueryKind::kCustom);

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t r() const { return m_ < n_ ? m_ : n_; }
  double sensitivity() const { return sensitivity_; }
  double gamma() const { return gamma_; }
  QueryKind kind() const { return kind_; }

 private:
  std::size_t m_;
  std::size_t n_;
  double sensitivity_;
  double gamma_;
  QueryKind kind_;
};

struct HarmonicNumbers {
  double h_r;       // sum_{i<=r} 1/i
  double h_r_half;  // sum_{i<=r} 1/sqrt(i)
};

HarmonicNumbers ComputeHarmonicNumbers(std::size_t r);

// Chi-square tail radius 2 sqrt(-mn ln delta) - 2 ln delta + mn.
double Zeta(double delta, std::size_t m, std::size_t n);

struct AlphaBeta {
  double alpha;
  double beta;
};

AlphaBeta ComputeAlphaBeta(const QuerySpec& query, const PrivacyParams& privacy);

// Positive root of alpha phi^2 + beta phi = 2 epsilon.
double PhiBound(double alpha, double beta, double epsilon);

enum class BudgetMode { kUnimodal, kEquiModal };

struct BudgetReport {
  double h_r = 0.0;
  double h_r_half = 0.0;
  double zeta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double phi_max = 0.0;
  double precision_budget = 0.0;
  BudgetMode mode = BudgetMode::kUnimodal;
};

// Psi = I_n: P = phi_max^4 / n.
BudgetReport PrecisionBudgetUnimodal(const QuerySpec& query,
                                     const PrivacyParams& privacy);

// Psi = Sigma: P = phi_max^2. Requires a square query.
BudgetReport PrecisionBudgetEquiModal(const QuerySpec& query,
                                      const PrivacyParams& privacy);

BudgetReport PrecisionBudget(const QuerySpec& query,
                             const PrivacyParams& privacy, BudgetMode mode);

struct ConditionCheck {
  bool holds = false;
  double lhs = 0.0;  // ||sigma(Sigma^-1)||_2 ||sigma(Psi^-1)||_2
  double rhs = 0.0;  // phi_max^2
};

// Relative slack granted to lhs <= rhs for floating-point error.
inline constexpr double kConditionTolerance = 1e-9;

// The sufficient condition for (epsilon, delta)-DP. Depends only on the
// singular values of Sigma and Psi, never on the directions.
ConditionCheck CheckCondition(const NoiseDesign& design, const QuerySpec& query,
                              const PrivacyParams& privacy);

}  // namespace mvgdp

#endif  // MVGDP_CORE_MATH_HPP_
