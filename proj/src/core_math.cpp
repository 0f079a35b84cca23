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

#include "core_math.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace mvgdp {
namespace {

void RequirePositive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    std::ostringstream msg;
    msg << name << " must be finite and positive, got " << value;
    Fail(ErrorCode::kDomain, msg.str());
  }
}

void RequireDelta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    std::ostringstream msg;
    msg << "delta must lie strictly inside (0, 1), got " << delta
        << "; the matrix-variate Gaussian mechanism only offers "
           "(epsilon, delta)-DP with delta > 0";
    Fail(ErrorCode::kDomain, msg.str());
  }
}

}  // namespace

PrivacyParams::PrivacyParams(double epsilon, double delta)
    : epsilon_(epsilon), delta_(delta) {
  RequirePositive(epsilon, "epsilon");
  RequireDelta(delta);
}

PrivacyParams PrivacyParams::Scaled(double fraction) const {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    std::ostringstream msg;
    msg << "budget fraction must lie in (0, 1], got " << fraction;
    Fail(ErrorCode::kDomain, msg.str());
  }
  return PrivacyParams(fraction * epsilon_, fraction * delta_);
}

QuerySpec::QuerySpec(std::size_t m, std::size_t n, double sensitivity,
                     double gamma, QueryKind kind)
    : m_(m), n_(n), sensitivity_(sensitivity), gamma_(gamma), kind_(kind) {
  if (m == 0 || n == 0) {
    std::ostringstream msg;
    msg << "query dimensions must be positive, got " << m << "x" << n;
    Fail(ErrorCode::kShape, msg.str());
  }
  RequirePositive(sensitivity, "sensitivity");
  RequirePositive(gamma, "gamma");
  if (sensitivity > 2.0 * gamma) {
    std::ostringstream msg;
    msg << "sensitivity " << sensitivity << " exceeds 2*gamma = " << 2.0 * gamma
        << ", which no pair inside the gamma-ball can realize";
    Fail(ErrorCode::kDomain, msg.str());
  }
}

HarmonicNumbers ComputeHarmonicNumbers(std::size_t r) {
  if (r == 0) Fail(ErrorCode::kDomain, "harmonic numbers need r >= 1");
  // Summing smallest terms first keeps the rounding error at a few ulps.
  double h = 0.0;
  double h_half = 0.0;
  for (std::size_t i = r; i >= 1; --i) {
    const auto x = static_cast<double>(i);
    h += 1.0 / x;
    h_half += 1.0 / std::sqrt(x);
  }
  return {h, h_half};
}

double Zeta(double delta, std::size_t m, std::size_t n) {
  RequireDelta(delta);
  if (m == 0 || n == 0) Fail(ErrorCode::kShape, "zeta needs m, n >= 1");
  const double ln_delta = std::log(delta);
  const double mn = static_cast<double>(m) * static_cast<double>(n);
  return 2.0 * std::sqrt(-mn * ln_delta) - 2.0 * ln_delta + mn;
}

AlphaBeta ComputeAlphaBeta(const QuerySpec& query,
                           const PrivacyParams& privacy) {
  const HarmonicNumbers h = ComputeHarmonicNumbers(query.r());
  const double gamma = query.gamma();
  const double s2 = query.sensitivity();
  const double zeta = Zeta(privacy.delta(), query.m(), query.n());
  const double mn =
      static_cast<double>(query.m()) * static_cast<double>(query.n());
  AlphaBeta out;
  out.alpha = (h.h_r + h.h_r_half) * gamma * gamma + 2.0 * h.h_r * gamma * s2;
  out.beta = 2.0 * std::pow(mn, 0.25) * h.h_r * s2 * zeta;
  return out;
}

double PhiBound(double alpha, double beta, double epsilon) {
  RequirePositive(alpha, "alpha");
  RequirePositive(beta, "beta");
  RequirePositive(epsilon, "epsilon");
  // (-b + sqrt(b^2 + 8ae)) / 2a rewritten without the cancellation that the
  // textbook form suffers when b^2 >> 8ae.
  return 4.0 * epsilon / (beta + std::sqrt(beta * beta + 8.0 * alpha * epsilon));
}

BudgetReport PrecisionBudgetUnimodal(const QuerySpec& query,
                                     const PrivacyParams& privacy) {
  return PrecisionBudget(query, privacy, BudgetMode::kUnimodal);
}

BudgetReport PrecisionBudgetEquiModal(const QuerySpec& query,
                                      const PrivacyParams& privacy) {
  return PrecisionBudget(query, privacy, BudgetMode::kEquiModal);
}

BudgetReport PrecisionBudget(const QuerySpec& query,
                             const PrivacyParams& privacy, BudgetMode mode) {
  if (mode == BudgetMode::kEquiModal && query.m() != query.n()) {
    std::ostringstream msg;
    msg << "equi-modal noise needs a square query, got " << query.m() << "x"
        << query.n();
    Fail(ErrorCode::kShape, msg.str());
  }
  const HarmonicNumbers h = ComputeHarmonicNumbers(query.r());
  const AlphaBeta ab = ComputeAlphaBeta(query, privacy);
  BudgetReport report;
  report.h_r = h.h_r;
  report.h_r_half = h.h_r_half;
  report.zeta = Zeta(privacy.delta(), query.m(), query.n());
  report.alpha = ab.alpha;
  report.beta = ab.beta;
  report.phi_max = PhiBound(ab.alpha, ab.beta, privacy.epsilon());
  report.mode = mode;
  const double phi_sq = report.phi_max * report.phi_max;
  report.precision_budget = mode == BudgetMode::kUnimodal
                                ? phi_sq * phi_sq / static_cast<double>(query.n())
                                : phi_sq;
  return report;
}

ConditionCheck CheckCondition(const NoiseDesign& design, const QuerySpec& query,
                              const PrivacyParams& privacy) {
  if (design.rows() != query.m() || design.cols() != query.n()) {
    std::ostringstream msg;
    msg << "design is " << design.rows() << "x" << design.cols()
        << " but the query is " << query.m() << "x" << query.n();
    Fail(ErrorCode::kShape, msg.str());
  }
  // Singular values of Sigma^-1 are 1/lambda for a positive-definite Sigma.
  const double sigma_norm = design.lambda_sigma().cwiseInverse().norm();
  const double psi_norm = design.lambda_psi().cwiseInverse().norm();
  const AlphaBeta ab = ComputeAlphaBeta(query, privacy);
  const double phi = PhiBound(ab.alpha, ab.beta, privacy.epsilon());
  ConditionCheck check;
  check.lhs = sigma_norm * psi_norm;
  check.rhs = phi * phi;
  check.holds = check.lhs <= check.rhs * (1.0 + kConditionTolerance);
  return check;
}

}  // namespace mvgdp
