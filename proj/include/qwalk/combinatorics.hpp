// Copyright 2026 The qwalk Authors
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

#pragma once

#include <cmath>
#include <cstdint>

#include "qwalk/errors.hpp"

namespace qwalk {

// Binomial coefficient as a double. Each partial product is itself a
// binomial coefficient, so the result is exact while it stays below 2^53.
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double result = 1.0;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return result;
}

// c^2 = sum_{x=0}^{m/2-1} 1 / C(m-1, x); the squared normalisation of the
// target state psi_1 and the inverse of the error-free success rate.
inline double c_squared(int m) {
  if (m < 2 || m % 2 != 0) {
    throw InvalidArgument("c_squared: m must be even and >= 2");
  }
  double sum = 0.0;
  for (int x = 0; x < m / 2; ++x) sum += 1.0 / binomial(m - 1, x);
  return sum;
}

inline int hamming_weight(std::uint64_t v) {
  return __builtin_popcountll(v);
}

// 2^e as a double, for e up to the double exponent range.
inline double pow2(int e) { return std::ldexp(1.0, e); }

}  // namespace qwalk
