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

#ifndef PSV_LPC_H_
#define PSV_LPC_H_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "psv/types.h"

namespace psv {

using CepstralVector = std::array<double, kNumCepstra>;

// R[k] = sum_n frame[n] * frame[n + k] for k = 0..max_lag, rectangular window.
// Throws if the frame is not longer than max_lag or is all zero.
std::vector<double> Autocorrelation(std::span<const double> frame, std::size_t max_lag);

struct LpcResult {
  std::vector<double> a;           // a[0] is a_1; predictor s[n] ~ sum_j a_j s[n-j]
  std::vector<double> reflection;  // k_1 .. k_p
  std::vector<double> residuals;   // E_0 .. E_p
  double error() const { return residuals.back(); }
};

// Levinson-Durbin recursion on R[0..order]. Throws "ill-conditioned
// autocorrelation" when a residual stops being positive or |k_i| >= 1.
LpcResult LevinsonDurbin(std::span<const double> autocorr, std::size_t order);

// c_n = a_n + sum_{k=1}^{n-1} (k/n) c_k a_{n-k}, n = 1..12, with a_n = 0
// beyond the predictor order. No c0, no liftering.
CepstralVector LpcToCepstral(std::span<const double> a);

// Autocorrelation, Levinson-Durbin and the cepstral recursion on one frame.
CepstralVector FrameCepstra(std::span<const double> frame, std::size_t lpc_order);

}  // namespace psv

#endif  // PSV_LPC_H_
