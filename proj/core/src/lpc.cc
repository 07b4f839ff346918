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

#include "psv/lpc.h"

#include <cmath>
#include <string>

#include "psv/error.h"

namespace psv {

std::vector<double> Autocorrelation(std::span<const double> frame, std::size_t max_lag) {
  if (frame.size() <= max_lag) {
    throw Error("autocorrelation: frame of " + std::to_string(frame.size()) +
                " samples is too short for lag " + std::to_string(max_lag));
  }
  std::vector<double> r(max_lag + 1, 0.0);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    double sum = 0.0;
    for (std::size_t n = 0; n + k < frame.size(); ++n) sum += frame[n] * frame[n + k];
    r[k] = sum;
  }
  if (!(r[0] > 0.0)) throw Error("autocorrelation: all-zero frame");
  return r;
}

LpcResult LevinsonDurbin(std::span<const double> autocorr, std::size_t order) {
  if (order == 0) throw Error("LPC order must be positive");
  if (autocorr.size() <= order) throw Error("LPC order exceeds available autocorrelation lags");
  if (!(autocorr[0] > 0.0)) throw Error("ill-conditioned autocorrelation: R0 <= 0");

  LpcResult out;
  out.a.assign(order, 0.0);
  out.reflection.reserve(order);
  out.residuals.reserve(order + 1);
  out.residuals.push_back(autocorr[0]);

  std::vector<double> prev(order, 0.0);
  double err = autocorr[0];
  for (std::size_t i = 1; i <= order; ++i) {
    if (!(err > 0.0)) throw Error("ill-conditioned autocorrelation: residual <= 0");
    double acc = autocorr[i];
    for (std::size_t j = 1; j < i; ++j) acc -= out.a[j - 1] * autocorr[i - j];
    const double k = acc / err;
    if (!(std::abs(k) < 1.0)) throw Error("ill-conditioned autocorrelation: |k| >= 1");

    prev = out.a;
    out.a[i - 1] = k;
    for (std::size_t j = 1; j < i; ++j) out.a[j - 1] = prev[j - 1] - k * prev[i - j - 1];
    err *= (1.0 - k * k);
    out.reflection.push_back(k);
    out.residuals.push_back(err);
  }
  if (!(err > 0.0)) throw Error("ill-conditioned autocorrelation: residual <= 0");
  return out;
}

CepstralVector LpcToCepstral(std::span<const double> a) {
  auto coeff = [&](std::size_t n) { return n <= a.size() ? a[n - 1] : 0.0; };
  CepstralVector c{};
  for (std::size_t n = 1; n <= kNumCepstra; ++n) {
    double sum = coeff(n);
    for (std::size_t k = 1; k < n; ++k) {
      sum += (static_cast<double>(k) / static_cast<double>(n)) * c[k - 1] * coeff(n - k);
    }
    c[n - 1] = sum;
  }
  return c;
}

CepstralVector FrameCepstra(std::span<const double> frame, std::size_t lpc_order) {
  const auto r = Autocorrelation(frame, lpc_order);
  return LpcToCepstral(LevinsonDurbin(r, lpc_order).a);
}

}  // namespace psv
