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
#include <complex>
#include <numbers>
#include <string>

#include "qwalk/combinatorics.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

// Parameters of one walk: hypercube dimension m and the systematic phase
// error delta of the diffusion coin. The coin phase is theta = pi + delta.
//
// The searchable database is the set of even-weight vertices, 2^(m-1) items.
class WalkConfig {
 public:
  WalkConfig(int m, double delta) : m_(m), delta_(delta) {
    if (m < 2) throw InvalidArgument("WalkConfig: m must be >= 2");
    if (!(std::abs(delta) < std::numbers::pi)) {
      throw InvalidArgument("WalkConfig: |delta| must be < pi");
    }
  }

  int m() const { return m_; }
  double delta() const { return delta_; }
  double theta() const { return std::numbers::pi + delta_; }

  // 1 - e^{i theta} = 1 + e^{i delta}; equals 2 when delta = 0.
  std::complex<double> diffusion_weight() const {
    return 1.0 - std::polar(1.0, theta());
  }

  // Number of searchable items, 2^(m-1). This is the "2^n" of the
  // closed-form success-rate and iteration-count models.
  double database_size() const { return pow2(m_ - 1); }

  void require_multiple_of_four(const char* what) const {
    if (m_ % 4 != 0) {
      throw InvalidArgument(std::string(what) + ": m must be a multiple of 4");
    }
  }

 private:
  int m_;
  double delta_;
};

}  // namespace qwalk
