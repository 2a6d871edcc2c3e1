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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>
#include <Eigen/Dense>

#include "qwalk/collapsed_walk.hpp"
#include "qwalk/combinatorics.hpp"
#include "qwalk/csv.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/least_squares.hpp"
#include "qwalk/trajectory.hpp"
#include "qwalk/walk_config.hpp"

// Model functions for the errored walk. Throughout, the size exponent n is
// the database exponent m - 1 (the walk searches the 2^(m-1) even vertices
// of the m-cube); functions taking a hypercube dimension m convert.

namespace qwalk {

struct ModelParams {
  double pmax_const = 3.8;
  double titer_inner = 16.0;
  double titer_delta_coeff = 4.0;
  double crit_slope = 1.806;
  double crit_intercept = 0.4642;

  void validate() const {
    for (double v : {pmax_const, titer_inner, titer_delta_coeff, crit_slope, crit_intercept}) {
      if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("model parameters must be positive");
    }
  }
};

inline std::string to_key_values(const ModelParams& p) {
  std::string out;
  out += "pmax_const=" + format_double(p.pmax_const) + "\n";
  out += "titer_inner=" + format_double(p.titer_inner) + "\n";
  out += "titer_delta_coeff=" + format_double(p.titer_delta_coeff) + "\n";
  out += "crit_slope=" + format_double(p.crit_slope) + "\n";
  out += "crit_intercept=" + format_double(p.crit_intercept) + "\n";
  return out;
}

// Unknown keys are ignored; missing keys keep their defaults.
inline ModelParams params_from_key_values(const std::string& text) {
  const auto kv = parse_key_values(text);
  ModelParams p;
  const std::map<std::string, double*> fields = {{"pmax_const", &p.pmax_const},
                                                 {"titer_inner", &p.titer_inner},
                                                 {"titer_delta_coeff", &p.titer_delta_coeff},
                                                 {"crit_slope", &p.crit_slope},
                                                 {"crit_intercept", &p.crit_intercept}};
  for (const auto& [key, target] : fields) {
    if (auto it = kv.find(key); it != kv.end()) *target = parse_double(it->second);
  }
  p.validate();
  return p;
}

// Error-free peak success probability 1/c^2.
inline double p0(int m) {
  if (m < 4 || m % 2 != 0) throw InvalidArgument("p0: m must be even and >= 4");
  return 1.0 / c_squared(m);
}

inline double p_max_from_p0(double p0_value, int n_db, double delta, const ModelParams& params = {}) {
  const double k = params.pmax_const;
  return p0_value * k / (k + delta * delta * pow2(n_db));
}

// p0 K / (K + delta^2 2^n)
inline double p_max_model(int m, double delta, const ModelParams& params = {}) {
  return p_max_from_p0(p0(m), m - 1, delta, params);
}

inline double t_opt_from_exponent(int n_db, double delta, const ModelParams& params = {}) {
  return std::numbers::pi /
         std::sqrt(params.titer_inner / pow2(n_db) + params.titer_delta_coeff * delta * delta);
}

// pi / sqrt(A/2^n + B delta^2)
inline double t_opt_model(int m, double delta, const ModelParams& params = {}) {
  if (m < 2) throw InvalidArgument("t_opt_model: m must be >= 2");
  return t_opt_from_exponent(m - 1, delta, params);
}

// Database exponent below which delta leaves the peak essentially unchanged.
inline double critical_scale(double delta, const ModelParams& params = {}) {
  if (!(delta > 0.0) || delta > params.crit_intercept) {
    throw InvalidArgument("critical_scale: delta must lie in (0, crit_intercept]");
  }
  return params.crit_slope * std::log2(params.crit_intercept / delta);
}

// p_max sin^2((pi/2) t / t_opt); with the default constants the sine
// argument is sqrt(4/2^n + delta^2) t.
inline double p_model(int m, double delta, double t, const ModelParams& params = {}) {
  if (t < 0.0) throw InvalidArgument("p_model: t must be >= 0");
  const double s = std::sin(0.5 * std::numbers::pi * t / t_opt_model(m, delta, params));
  return p_max_model(m, delta, params) * s * s;
}

inline double grover_pmax_model(int n_db, double delta) {
  return 4.0 / (4.0 + delta * delta * pow2(n_db));
}

// Gap between the marked item and any one of the 2^n - 1 equal others.
inline double grover_gap_closed_form(double p_max, int n_db) {
  return p_max - (1.0 - p_max) / (pow2(n_db) - 1.0);
}

// Observed peak of a trajectory: p_max is the window maximum, t_opt the
// first major oscillation peak.
struct ObservedPeak {
  double p_max = 0.0;
  int t_opt = 0;
  double gap_at_t_opt = 0.0;
};

inline ObservedPeak observe_peak(const Trajectory& traj, int steps) {
  const Peak top = window_maximum(traj, steps);
  const Peak first = first_major_peak(traj, steps);
  return {top.p, first.t, traj.at(first.t).p_gap};
}

inline ObservedPeak observe_peak(const WalkConfig& cfg, int steps) {
  return observe_peak(evolve(cfg, steps), steps);
}

struct GapPair {
  double dp1 = 0.0;     // walk, simulated at its optimal step
  double dp2 = 0.0;     // Grover over 2^(m-1) items
  double dp2_2m = 0.0;  // Grover over 2^m items
};

inline GapPair gap_models(int m, double delta, const ModelParams& = {}, int steps = 0) {
  const WalkConfig cfg(m, delta);
  const int budget = steps > 0 ? steps : default_step_budget(m);
  const ObservedPeak peak = observe_peak(cfg, budget);
  return {peak.gap_at_t_opt, grover_gap_closed_form(grover_pmax_model(m - 1, delta), m - 1),
          grover_gap_closed_form(grover_pmax_model(m, delta), m)};
}

enum class FitKind { PMax, TOpt, Critical };

inline const char* fit_kind_name(FitKind k) {
  switch (k) {
    case FitKind::PMax: return "pmax";
    case FitKind::TOpt: return "topt";
    case FitKind::Critical: return "critical";
  }
  return "?";
}

inline FitKind parse_fit_kind(const std::string& s) {
  if (s == "pmax") return FitKind::PMax;
  if (s == "topt") return FitKind::TOpt;
  if (s == "critical") return FitKind::Critical;
  throw InvalidArgument("unknown fit kind '" + s + "'");
}

// One observation. For PMax and TOpt, `value` is the observed p_max or
// t_opt at hypercube dimension m. For Critical, `value` is the critical
// database exponent at `delta` and m is unused. `p0` is the error-free
// peak used by PMax; NaN means 1/c^2 (even m only).
struct FitSample {
  int m = 0;
  double delta = 0.0;
  double value = 0.0;
  double p0 = std::numeric_limits<double>::quiet_NaN();
};

struct FitResult {
  FitKind kind = FitKind::PMax;
  ModelParams params;
  double residual = 0.0;  // RMS of the fit residuals
  int n_points = 0;
  int iterations = 0;
};

inline std::string to_key_values(const FitResult& r) {
  std::string out = "kind=" + std::string(fit_kind_name(r.kind)) + "\n";
  switch (r.kind) {
    case FitKind::PMax:
      out += "pmax_const=" + format_double(r.params.pmax_const) + "\n";
      break;
    case FitKind::TOpt:
      out += "titer_inner=" + format_double(r.params.titer_inner) + "\n";
      out += "titer_delta_coeff=" + format_double(r.params.titer_delta_coeff) + "\n";
      break;
    case FitKind::Critical:
      out += "crit_slope=" + format_double(r.params.crit_slope) + "\n";
      out += "crit_intercept=" + format_double(r.params.crit_intercept) + "\n";
      break;
  }
  out += "residual=" + format_double(r.residual) + "\n";
  out += "n_points=" + std::to_string(r.n_points) + "\n";
  out += "iterations=" + std::to_string(r.iterations) + "\n";
  return out;
}

inline void check_fit_samples(const std::vector<FitSample>& samples, FitKind kind) {
  std::set<int> ms;
  std::set<double> deltas;
  for (const auto& s : samples) {
    if (!std::isfinite(s.value) || !std::isfinite(s.delta)) {
      throw InvalidArgument("fit: non-finite sample");
    }
    ms.insert(s.m);
    deltas.insert(s.delta);
  }
  if (kind == FitKind::Critical) {
    if (samples.size() < 2 || deltas.size() < 2) {
      throw InvalidArgument("fit: critical fit needs at least 2 distinct delta values");
    }
    return;
  }
  if (samples.size() < 8 || ms.size() < 3 || deltas.size() < 2) {
    throw InvalidArgument("fit: need >= 8 samples over >= 3 values of m and >= 2 of delta");
  }
}

// Levenberg-Marquardt from the constants in `start` (at most 200
// iterations). p_max uses log residuals, t_opt and the critical scale use
// linear residuals.
inline FitResult fit_constants(const std::vector<FitSample>& samples, FitKind kind,
                               const ModelParams& start = {}) {
  check_fit_samples(samples, kind);
  const auto n = static_cast<Eigen::Index>(samples.size());
  FitResult out;
  out.kind = kind;
  out.params = start;
  out.n_points = static_cast<int>(samples.size());

  LeastSquaresResult ls;
  switch (kind) {
    case FitKind::PMax: {
      std::vector<double> base(samples.size());
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!(s.value > 0.0)) throw InvalidArgument("fit: p_max samples must be positive");
        base[i] = std::isnan(s.p0) ? p0(s.m) : s.p0;
      }
      auto f = [&](const Eigen::VectorXd& p) {
        Eigen::VectorXd r(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          const auto& s = samples[static_cast<std::size_t>(i)];
          ModelParams mp;
          mp.pmax_const = p[0];
          const double model = p_max_from_p0(base[static_cast<std::size_t>(i)], s.m - 1, s.delta, mp);
          r[i] = std::log(s.value) - std::log(model);
        }
        return r;
      };
      ls = levenberg_marquardt(f, Eigen::VectorXd::Constant(1, start.pmax_const));
      out.params.pmax_const = ls.params[0];
      break;
    }
    case FitKind::TOpt: {
      auto f = [&](const Eigen::VectorXd& p) {
        Eigen::VectorXd r(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          const auto& s = samples[static_cast<std::size_t>(i)];
          ModelParams mp;
          mp.titer_inner = p[0];
          mp.titer_delta_coeff = p[1];
          r[i] = s.value - t_opt_from_exponent(s.m - 1, s.delta, mp);
        }
        return r;
      };
      Eigen::VectorXd p(2);
      p << start.titer_inner, start.titer_delta_coeff;
      ls = levenberg_marquardt(f, p);
      out.params.titer_inner = ls.params[0];
      out.params.titer_delta_coeff = ls.params[1];
      break;
    }
    case FitKind::Critical: {
      for (const auto& s : samples) {
        if (!(s.delta > 0.0)) throw InvalidArgument("fit: critical samples need delta > 0");
      }
      auto f = [&](const Eigen::VectorXd& p) {
        Eigen::VectorXd r(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          const auto& s = samples[static_cast<std::size_t>(i)];
          r[i] = s.value - p[0] * std::log2(p[1] / s.delta);
        }
        return r;
      };
      Eigen::VectorXd p(2);
      p << start.crit_slope, start.crit_intercept;
      ls = levenberg_marquardt(f, p);
      out.params.crit_slope = ls.params[0];
      out.params.crit_intercept = ls.params[1];
      break;
    }
  }
  out.residual = ls.rms();
  out.iterations = ls.iterations;
  if (!(out.residual >= 0.0)) throw NumericFailure("fit: non-finite residual");
  return out;
}

// One grid point of a sweep.
struct SweepRow {
  int m = 0;
  double delta = 0.0;
  double p_max = 0.0;
  int t_opt = 0;
  double p0_observed = 0.0;
};

inline std::vector<FitSample> pmax_samples(const std::vector<SweepRow>& rows) {
  std::vector<FitSample> out;
  for (const auto& r : rows) {
    FitSample s{r.m, r.delta, r.p_max};
    s.p0 = r.m % 2 == 0 && r.m >= 4 ? p0(r.m) : r.p0_observed;
    out.push_back(s);
  }
  return out;
}

inline std::vector<FitSample> topt_samples(const std::vector<SweepRow>& rows) {
  std::vector<FitSample> out;
  for (const auto& r : rows) out.push_back({r.m, r.delta, static_cast<double>(r.t_opt)});
  return out;
}

// For each delta > 0: the last m (scanning upward) whose p_max stays within
// 5% of the error-free peak, converted to a database exponent. Deltas that
// never leave the band, or leave it at the first m, carry no information
// and are skipped.
inline std::vector<FitSample> critical_samples(std::vector<SweepRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.delta != b.delta ? a.delta < b.delta : a.m < b.m;
  });
  std::vector<FitSample> out;
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    while (j < rows.size() && rows[j].delta == rows[i].delta) ++j;
    if (rows[i].delta > 0.0) {
      int last_inside = -1;
      bool left = false;
      for (std::size_t k = i; k < j; ++k) {
        if (rows[k].p_max >= 0.95 * rows[k].p0_observed) {
          last_inside = rows[k].m;
        } else {
          left = true;
          break;
        }
      }
      if (left && last_inside > 0) {
        out.push_back({last_inside, rows[i].delta, static_cast<double>(last_inside - 1)});
      }
    }
    i = j;
  }
  return out;
}

}  // namespace qwalk
