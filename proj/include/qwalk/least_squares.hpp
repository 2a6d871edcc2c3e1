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
#include <functional>
#include <limits>
#include <Eigen/Dense>

#include "qwalk/errors.hpp"

namespace qwalk {

struct LeastSquaresOptions {
  int max_iterations = 200;
  double step_tolerance = 1e-12;  // relative
  double initial_damping = 1e-3;
  double rank_tolerance = 1e-10;  // relative singular value cutoff
};

struct LeastSquaresResult {
  Eigen::VectorXd params;
  Eigen::VectorXd residuals;
  int iterations = 0;
  double rms() const {
    return residuals.size() == 0 ? 0.0 : std::sqrt(residuals.squaredNorm() / residuals.size());
  }
};

using ResidualFunction = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Central-difference Jacobian.
inline Eigen::MatrixXd numeric_jacobian(const ResidualFunction& f, const Eigen::VectorXd& p,
                                        Eigen::Index rows) {
  Eigen::MatrixXd jac(rows, p.size());
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(p[j]));
    Eigen::VectorXd up = p, down = p;
    up[j] += h;
    down[j] -= h;
    jac.col(j) = (f(up) - f(down)) / (2.0 * h);
  }
  return jac;
}

inline bool finite_vector(const Eigen::VectorXd& v) { return v.allFinite(); }

// Levenberg-Marquardt on a residual vector. Steps that leave the residual
// non-finite are treated as rejected. The Jacobian at the start point must
// have full column rank.
inline LeastSquaresResult levenberg_marquardt(const ResidualFunction& f, Eigen::VectorXd start,
                                              const LeastSquaresOptions& opt = {}) {
  Eigen::VectorXd r = f(start);
  if (!finite_vector(r)) throw NumericFailure("least squares: non-finite residual at start");
  if (r.size() < start.size()) throw NumericFailure("least squares: fewer residuals than parameters");

  {
    const Eigen::MatrixXd jac = numeric_jacobian(f, start, r.size());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    const auto& s = svd.singularValues();
    if (!(s.size() > 0 && s[0] > 0.0) || s[s.size() - 1] <= opt.rank_tolerance * s[0]) {
      throw NumericFailure("least squares: rank-deficient fit");
    }
  }

  Eigen::VectorXd p = std::move(start);
  double cost = r.squaredNorm();
  double lambda = opt.initial_damping;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    const Eigen::MatrixXd jac = numeric_jacobian(f, p, r.size());
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    bool accepted = false;
    Eigen::VectorXd step;
    for (int tries = 0; tries < 40 && !accepted; ++tries) {
      Eigen::MatrixXd a = jtj;
      a.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-300);
      step = a.ldlt().solve(-grad);
      const Eigen::VectorXd candidate = p + step;
      const Eigen::VectorXd rc = f(candidate);
      const double cc = finite_vector(rc) ? rc.squaredNorm() : std::numeric_limits<double>::infinity();
      if (cc <= cost) {
        p = candidate;
        r = rc;
        cost = cc;
        lambda = std::max(lambda / 10.0, 1e-15);
        accepted = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted) break;
    if (step.norm() <= opt.step_tolerance * (p.norm() + opt.step_tolerance)) {
      ++it;
      break;
    }
  }
  if (!finite_vector(p)) throw NumericFailure("least squares: diverged");
  return {p, r, it};
}

}  // namespace qwalk
