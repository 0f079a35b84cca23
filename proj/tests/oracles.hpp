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

// Reference computations used only by the tests. Each one is written
// independently of the library code it checks: forward long-double sums,
// bisection instead of closed forms, explicit loops instead of Eigen
// expressions, a cyclic Jacobi eigensolver instead of Eigen's.

#ifndef MVGDP_TESTS_ORACLES_HPP_
#define MVGDP_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mvgdp::oracle {

inline long double Harmonic(std::size_t r) {
  long double sum = 0.0L;
  for (std::size_t i = 1; i <= r; ++i) sum += 1.0L / static_cast<long double>(i);
  return sum;
}

inline long double HarmonicHalf(std::size_t r) {
  long double sum = 0.0L;
  for (std::size_t i = 1; i <= r; ++i) {
    sum += 1.0L / std::sqrt(static_cast<long double>(i));
  }
  return sum;
}

inline long double Zeta(long double delta, std::size_t m, std::size_t n) {
  const long double mn = static_cast<long double>(m * n);
  const long double ln_delta = std::log(delta);
  return 2.0L * std::sqrt(-mn * ln_delta) - 2.0L * ln_delta + mn;
}

struct Coefficients {
  long double alpha;
  long double beta;
};

inline Coefficients AlphaBeta(std::size_t m, std::size_t n, long double s2,
                              long double gamma, long double delta) {
  const std::size_t r = std::min(m, n);
  const long double hr = Harmonic(r);
  const long double hh = HarmonicHalf(r);
  const long double mn = static_cast<long double>(m * n);
  return {(hr + hh) * gamma * gamma + 2.0L * hr * gamma * s2,
          2.0L * std::pow(mn, 0.25L) * hr * s2 * Zeta(delta, m, n)};
}

// Positive root of alpha phi^2 + beta phi - 2 epsilon by bisection.
inline long double PhiByBisection(long double alpha, long double beta,
                                  long double epsilon) {
  long double lo = 0.0L;
  long double hi = 1.0L;
  auto f = [&](long double x) { return alpha * x * x + beta * x - 2 * epsilon; };
  while (f(hi) < 0.0L) hi *= 2.0L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (f(mid) < 0.0L ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

inline Eigen::MatrixXd Kronecker(const Eigen::MatrixXd& a,
                                 const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (Eigen::Index k = 0; k < b.rows(); ++k) {
        for (Eigen::Index l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

struct Eigenpairs {
  std::vector<double> values;  // descending
  Eigen::MatrixXd vectors;     // matching columns
};

// Cyclic Jacobi rotations until the off-diagonal mass vanishes.
inline Eigenpairs JacobiEigen(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return a(x, x) > a(y, y);
  });
  Eigenpairs out;
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values.push_back(a(order[static_cast<std::size_t>(k)],
                           order[static_cast<std::size_t>(k)]));
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

// Largest change of a query over neighboring datasets whose differing record
// ranges over the vertices of [lo, hi]^M. The other records do not affect
// the identity or covariance difference, so vertex pairs suffice as a lower
// bound on the sensitivity.
template <typename Query>
double BoxVertexSensitivity(std::size_t m, double lo, double hi, Query query) {
  double best = 0.0;
  const std::uint64_t count = std::uint64_t{1} << m;
  Eigen::VectorXd x(static_cast<Eigen::Index>(m));
  Eigen::VectorXd y(static_cast<Eigen::Index>(m));
  for (std::uint64_t a = 0; a < count; ++a) {
    for (std::uint64_t b = 0; b < count; ++b) {
      for (std::size_t i = 0; i < m; ++i) {
        x(static_cast<Eigen::Index>(i)) = ((a >> i) & 1U) != 0 ? hi : lo;
        y(static_cast<Eigen::Index>(i)) = ((b >> i) & 1U) != 0 ? hi : lo;
      }
      best = std::max(best, query(x, y));
    }
  }
  return best;
}

inline Eigen::MatrixXd RandomOrthonormal(std::size_t size, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(static_cast<Eigen::Index>(size),
                    static_cast<Eigen::Index>(size));
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = normal(gen);
  }
  // Modified Gram-Schmidt.
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index k = 0; k < j; ++k) {
      a.col(j) -= a.col(k).dot(a.col(j)) * a.col(k);
    }
    a.col(j) /= a.col(j).norm();
  }
  return a;
}

inline Eigen::MatrixXd RandomPsd(std::size_t size, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Eigen::MatrixXd q = RandomOrthonormal(size, gen);
  Eigen::VectorXd d(static_cast<Eigen::Index>(size));
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = 0.1 + 5.0 * unit(gen);
  return q * d.asDiagonal() * q.transpose();
}

inline double SampleStd(const std::vector<double>& values) {
  long double mean = 0.0L;
  for (double v : values) mean += v;
  mean /= static_cast<long double>(values.size());
  long double ss = 0.0L;
  for (double v : values) ss += (v - mean) * (v - mean);
  return static_cast<double>(
      std::sqrt(ss / static_cast<long double>(values.size() - 1)));
}

}  // namespace mvgdp::oracle

#endif  // MVGDP_TESTS_ORACLES_HPP_
