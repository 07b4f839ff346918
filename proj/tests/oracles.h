// Copyright 2026 The psv Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PSV_TESTS_ORACLES_H_
#define PSV_TESTS_ORACLES_H_

// Reference computations used to check the library. Each one takes a route
// that is independent of the production code it is compared against.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "psv/features.h"

namespace psv::oracle {

// Classifies every interior sample on its own: above both neighbours is a
// crest, below both is a trough; the sample's sign picks the counter pair.
inline ExtremaCounts BruteForceExtrema(std::span<const double> x) {
  ExtremaCounts c;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    const double lo = std::min(x[i - 1], x[i + 1]);
    const double hi = std::max(x[i - 1], x[i + 1]);
    const bool positive = x[i] > 0.0;
    if (x[i] > hi) (positive ? c.poc : c.nec) += 1;
    if (x[i] < lo) (positive ? c.pot : c.net) += 1;
  }
  return c;
}

// Solves the order-p normal equations T a = r directly.
inline std::vector<double> ToeplitzSolve(std::span<const double> r, std::size_t order) {
  Eigen::MatrixXd t(order, order);
  Eigen::VectorXd rhs(order);
  for (std::size_t i = 0; i < order; ++i) {
    rhs(static_cast<Eigen::Index>(i)) = r[i + 1];
    for (std::size_t j = 0; j < order; ++j) {
      t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          r[i > j ? i - j : j - i];
    }
  }
  const Eigen::VectorXd a = t.fullPivLu().solve(rhs);
  return {a.data(), a.data() + a.size()};
}

// Cepstrum of log|1/A(e^jw)| by the trapezoid rule on the unit circle, with
// A(z) = 1 - sum_k a_k z^-k. For a minimum-phase model the complex cepstrum
// at n >= 1 equals twice the real cepstrum.
inline std::vector<double> SpectralCepstrum(std::span<const double> a, std::size_t count,
                                            std::size_t points = 8192) {
  std::vector<double> c(count, 0.0);
  for (std::size_t k = 0; k < points; ++k) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(points);
    std::complex<double> poly(1.0, 0.0);
    for (std::size_t j = 0; j < a.size(); ++j) {
      poly -= a[j] * std::polar(1.0, -w * static_cast<double>(j + 1));
    }
    const double log_mag = -std::log(std::abs(poly));
    for (std::size_t n = 1; n <= count; ++n) c[n - 1] += log_mag * std::cos(static_cast<double>(n) * w);
  }
  for (double& v : c) v *= 2.0 / static_cast<double>(points);
  return c;
}

// Predictor coefficients of A(z) = prod (1 - p z^-1) over conjugate pole pairs
// drawn inside a circle of radius `max_radius`.
inline std::vector<double> RandomStablePredictor(std::mt19937_64& rng, std::size_t pairs,
                                                 double max_radius) {
  std::uniform_real_distribution<double> radius(0.1, max_radius);
  std::uniform_real_distribution<double> angle(0.05, std::numbers::pi - 0.05);
  std::vector<std::complex<double>> poly{1.0};
  auto multiply = [&poly](std::complex<double> root) {
    std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] -= root * poly[i];
    }
    poly = std::move(next);
  };
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto p = std::polar(radius(rng), angle(rng));
    multiply(p);
    multiply(std::conj(p));
  }
  std::vector<double> a(poly.size() - 1);
  for (std::size_t j = 1; j < poly.size(); ++j) a[j - 1] = -poly[j].real();
  return a;
}

// Autocorrelation of a random coloured sequence: positive definite by
// construction.
inline std::vector<double> RandomAutocorrelation(std::mt19937_64& rng, std::size_t order) {
  std::uniform_int_distribution<std::size_t> length(60, 400);
  std::uniform_real_distribution<double> pole(-0.9, 0.9);
  std::normal_distribution<double> noise(0.0, 1.0);
  const std::size_t n = length(rng);
  const double rho = pole(rng);
  std::vector<double> x(n);
  double prev = 0.0;
  for (double& v : x) {
    prev = rho * prev + noise(rng);
    v = prev;
  }
  std::vector<double> r(order + 1, 0.0);
  for (std::size_t k = 0; k <= order; ++k) {
    for (std::size_t i = k; i < n; ++i) r[k] += x[i] * x[i - k];
  }
  return r;
}

// Nearest speaker by exhaustive comparison: the smallest distance, and among
// equal distances the smallest id.
inline std::string BruteForceArgmin(const std::vector<std::string>& ids,
                                    const std::vector<double>& distances) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const bool smaller = distances[i] < distances[best];
    const bool tie_lower_id = distances[i] == distances[best] && ids[i] < ids[best];
    if (smaller || tie_lower_id) best = i;
  }
  return ids[best];
}

// Period (in samples) maximising the normalised autocorrelation over
// [min_lag, max_lag].
inline std::size_t AutocorrelationPeriod(std::span<const double> x, std::size_t min_lag,
                                         std::size_t max_lag) {
  std::size_t best = min_lag;
  double best_score = -2.0;
  for (std::size_t lag = min_lag; lag <= max_lag && lag < x.size(); ++lag) {
    double num = 0.0, e0 = 0.0, e1 = 0.0;
    for (std::size_t i = 0; i + lag < x.size(); ++i) {
      num += x[i] * x[i + lag];
      e0 += x[i] * x[i];
      e1 += x[i + lag] * x[i + lag];
    }
    const double score = num / std::sqrt(e0 * e1 + 1e-300);
    if (score > best_score + 1e-12) {
      best_score = score;
      best = lag;
    }
  }
  return best;
}

}  // namespace psv::oracle

#endif  // PSV_TESTS_ORACLES_H_
