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
#include <complex>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>
#include <Eigen/Dense>

#include "qwalk/collapsed_walk.hpp"
#include "qwalk/combinatorics.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/walk_config.hpp"

namespace qwalk {

// Both step operators preserve shell parity over a full iteration, so the
// line basis splits into an even-shell sector (the one containing psi_0)
// and an odd-shell sector that the search never visits.
enum class Sector { Even, Odd };

inline Sector sector_of_index(int index) {
  // (R,x) -> 2x, (L,x) -> 2x-1
  const int shell = (index + 1) / 2;
  return shell % 2 == 0 ? Sector::Even : Sector::Odd;
}

struct SpectrumReport {
  std::vector<cplx> eigenvalues;
  std::vector<Sector> sectors;
  // Unit eigenvectors in the 2m line basis, phase-fixed so that the
  // largest-magnitude component is real and positive.
  std::optional<std::vector<Eigen::VectorXcd>> eigenvectors;
  // Even-sector eigenvalues with real part above `bound`.
  std::vector<std::size_t> near_unit;
  double bound = 0.0;

  std::size_t size() const { return eigenvalues.size(); }
  bool has_flagged_pair() const { return near_unit.size() == 2; }
  bool is_flagged(std::size_t i) const {
    return std::find(near_unit.begin(), near_unit.end(), i) != near_unit.end();
  }
};

inline constexpr double kEigenResidualTolerance = 1e-8;

// Rotates v so that its largest-magnitude component is real positive.
inline void fix_phase(Eigen::VectorXcd& v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  const cplx lead = v[arg];
  if (std::abs(lead) > 0.0) v *= std::conj(lead) / std::abs(lead);
}

// Eigen-decomposition of an operator on the line basis, sector by sector.
// Eigenvalues come back sorted by descending real part, then descending
// imaginary part.
inline SpectrumReport line_spectrum(const Eigen::MatrixXcd& op, bool with_vectors) {
  const int dim = static_cast<int>(op.rows());
  struct Entry {
    cplx value;
    Sector sector;
    Eigen::VectorXcd vector;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(dim));

  for (Sector sector : {Sector::Even, Sector::Odd}) {
    std::vector<int> idx;
    for (int i = 0; i < dim; ++i) {
      if (sector_of_index(i) == sector) idx.push_back(i);
    }
    const int n = static_cast<int>(idx.size());
    if (n == 0) continue;
    Eigen::MatrixXcd block(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) block(r, c) = op(idx[r], idx[c]);
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(block, true);
    if (solver.info() != Eigen::Success) {
      throw NumericFailure("eigensolver did not converge");
    }
    for (int k = 0; k < n; ++k) {
      const cplx lambda = solver.eigenvalues()[k];
      Eigen::VectorXcd local = solver.eigenvectors().col(k);
      local.normalize();
      const double residual = (block * local - lambda * local).norm();
      if (!(residual <= kEigenResidualTolerance)) {
        throw NumericFailure("eigenpair residual above tolerance");
      }
      Eigen::VectorXcd full = Eigen::VectorXcd::Zero(dim);
      for (int r = 0; r < n; ++r) full[idx[r]] = local[r];
      fix_phase(full);
      entries.push_back({lambda, sector, std::move(full)});
    }
  }

  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
    return a.value.imag() > b.value.imag();
  });

  SpectrumReport report;
  if (with_vectors) report.eigenvectors.emplace();
  for (Entry& e : entries) {
    report.eigenvalues.push_back(e.value);
    report.sectors.push_back(e.sector);
    if (with_vectors) report.eigenvectors->push_back(std::move(e.vector));
  }
  return report;
}

// Real-part bound above which exactly two eigenvalues of U~U~' lie:
//   1 - (1/3) [ (8/m - 8/m^2) - (2 - 4/m) sqrt(m-1)/m delta
//               + 3 (1/3 + 2/m^2 - 2/m) delta^2 ].
inline double near_unit_bound(const WalkConfig& cfg) {
  const double m = cfg.m();
  const double d = cfg.delta();
  const double bracket = (8.0 / m - 8.0 / (m * m)) - (2.0 - 4.0 / m) * std::sqrt(m - 1.0) / m * d +
                         3.0 * (1.0 / 3.0 + 2.0 / (m * m) - 2.0 / m) * d * d;
  return 1.0 - bracket / 3.0;
}

// The error-free bound, 1 - 8(m-1)/(3m^2); equal to near_unit_bound at delta = 0.
inline double near_unit_bound_exact(int m) {
  const double md = m;
  return 1.0 - 8.0 * (md - 1.0) / (3.0 * md * md);
}

// Spectrum of the unmarked double step U~U~.
inline SpectrumReport uu_spectrum_unmarked(const WalkConfig& cfg, bool with_vectors = false) {
  const StepOperators ops = build_step_operators(cfg);
  return line_spectrum(ops.u * ops.u, with_vectors);
}

// Spectrum of U~U~' with the near-unit pair flagged.
inline SpectrumReport uuprime_spectrum(const WalkConfig& cfg, bool with_vectors = false) {
  if (cfg.m() < 4) throw InvalidArgument("uuprime_spectrum: m must be >= 4");
  const StepOperators ops = build_step_operators(cfg);
  SpectrumReport report = line_spectrum(ops.u * ops.u_marked, with_vectors);
  report.bound = near_unit_bound(cfg);
  for (std::size_t i = 0; i < report.size(); ++i) {
    if (report.sectors[i] == Sector::Even && report.eigenvalues[i].real() > report.bound) {
      report.near_unit.push_back(i);
    }
  }
  return report;
}

// Eigenvalues of the collapsed single step U~: for 0 < k < m
//   (1/2) g - g k/m -/+ (1/2) sqrt(g^2 (m-2k)^2/m^2 + 4 e^{i theta}),
// g = 1 - e^{i theta}; plus -e^{i theta} (k = 0) and e^{i theta} (k = m).
inline std::vector<cplx> u_closed_form_spectrum(const WalkConfig& cfg) {
  const int m = cfg.m();
  const cplx g = cfg.diffusion_weight();
  const cplx phase = std::polar(1.0, cfg.theta());
  std::vector<cplx> out;
  out.push_back(-phase);
  out.push_back(phase);
  for (int k = 1; k < m; ++k) {
    const double r = static_cast<double>(m - 2 * k) / m;
    const cplx centre = 0.5 * g - g * (static_cast<double>(k) / m);
    const cplx root = 0.5 * std::sqrt(g * g * r * r + 4.0 * phase);
    out.push_back(centre - root);
    out.push_back(centre + root);
  }
  return out;
}

// Error-free spectrum of UU:
//   cos 2w_k = 1 + 8k(k-m)/m^2,  sin 2w_k = 4(m-2k) sqrt(k(m-k))/m^2.
// k = 0 and k = m each contribute one eigenvalue (1) in the line basis;
// the rest contribute the conjugate pair.
inline std::vector<cplx> uu_closed_form_spectrum(int m) {
  std::vector<cplx> out;
  const double md = m;
  for (int k = 0; k <= m; ++k) {
    const double re = 1.0 + 8.0 * k * (k - md) / (md * md);
    const double im = 4.0 * (md - 2.0 * k) * std::sqrt(static_cast<double>(k) * (m - k)) / (md * md);
    out.emplace_back(re, im);
    if (k != 0 && k != m) out.emplace_back(re, -im);
  }
  return out;
}

// The approximate eigenvectors psi_0^(e) and psi_1 of U U'.
struct AnalyticStates {
  CollapsedState psi0;
  CollapsedState psi1;
  double c = 0.0;
};

inline AnalyticStates analytic_psi0_psi1(const WalkConfig& cfg) {
  cfg.require_multiple_of_four("analytic_psi0_psi1");
  const int m = cfg.m();
  AnalyticStates out;
  out.psi0 = initial_state(cfg);
  out.c = std::sqrt(c_squared(m));
  out.psi1 = CollapsedState(m);
  for (int x = 0; x <= m / 4 - 1; ++x) {
    out.psi1.amplitude(Coin::R, 2 * x) = 1.0 / (out.c * std::sqrt(binomial(m - 1, 2 * x)));
    out.psi1.amplitude(Coin::L, 2 * x + 2) = -1.0 / (out.c * std::sqrt(binomial(m - 1, 2 * x + 1)));
  }
  return out;
}

struct ExpectationValues {
  cplx psi0_psi0;  // <psi0| U~U~' |psi0>
  cplx psi1_psi1;  // <psi1| U~U~' |psi1>
  cplx psi1_psi0;  // <psi1| U~U~' |psi0>
  cplx psi0_psi1;  // <psi0| U~U~' |psi1>
  cplx overlap;    // <psi1|psi0>
};

inline ExpectationValues expectation_identities(const WalkConfig& cfg) {
  const AnalyticStates s = analytic_psi0_psi1(cfg);
  const StepOperators ops = build_step_operators(cfg);
  const Eigen::MatrixXcd step = ops.u * ops.u_marked;
  const Eigen::VectorXcd on0 = step * s.psi0.amplitudes;
  const Eigen::VectorXcd on1 = step * s.psi1.amplitudes;
  return {s.psi0.amplitudes.dot(on0), s.psi1.amplitudes.dot(on1), s.psi1.amplitudes.dot(on0),
          s.psi0.amplitudes.dot(on1), s.psi1.amplitudes.dot(s.psi0.amplitudes)};
}

// <psi0| U~U~' |psi0> = e^{2i theta} - (e^{i theta} - 1) e^{i theta} / 2^(m-1).
inline cplx psi0_expectation_closed_form(const WalkConfig& cfg) {
  const cplx e = std::polar(1.0, cfg.theta());
  return e * e - (e - 1.0) * e / pow2(cfg.m() - 1);
}

// <psi1| U~U~' |psi1> = 1 - (1 - e^{i theta}) / (2 c^2 C(m-1, m/2)).
inline cplx psi1_expectation_closed_form(const WalkConfig& cfg) {
  const int m = cfg.m();
  const cplx e = std::polar(1.0, cfg.theta());
  return 1.0 - (1.0 - e) / (2.0 * c_squared(m) * binomial(m - 1, m / 2));
}

// The same quantity written as 1 - (e^{i theta} - 1) e^{i theta} / (2 c^2 C(m-1, m/2)).
// Its correction term is off by the phase e^{i theta}, hence only agrees
// with psi1_expectation_closed_form at delta = 0.
inline cplx psi1_expectation_phase_shifted_form(const WalkConfig& cfg) {
  const int m = cfg.m();
  const cplx e = std::polar(1.0, cfg.theta());
  return 1.0 - (e - 1.0) * e / (2.0 * c_squared(m) * binomial(m - 1, m / 2));
}

// Second-order expansion of Re <psi0| U~U~' |psi0>:
// 1 - 1/2^(m-2) - delta^2 (2 - 5/2^m).
inline double psi0_expectation_real_expansion(const WalkConfig& cfg) {
  const double d = cfg.delta();
  return 1.0 - 1.0 / pow2(cfg.m() - 2) - d * d * (2.0 - 5.0 / pow2(cfg.m()));
}

// Error-free cross term: <psi1|UU'|psi0> - <psi1|psi0> = 2 / (c sqrt(2^(m-1))),
// and the negative of it for <psi0|UU'|psi1>.
inline double cross_term_closed_form(int m) {
  return 2.0 / (std::sqrt(c_squared(m)) * std::sqrt(pow2(m - 1)));
}

// Envelope constant K for |w'_0 + 2/(c sqrt(2^(m-1)))| <= K m^{3/2} / 2^m,
// fixed from the m = 8 spectrum (calibrated value 0.02823...).
inline constexpr double kOmega0EnvelopeConstant = 0.0283;

struct Omega0Estimate {
  double omega0 = 0.0;    // phase of the flagged eigenvalue with Im < 0
  double leading = 0.0;   // -2 / (c sqrt(2^(m-1)))
  double envelope = 0.0;  // K m^{3/2} / 2^m
  bool bound_check = false;
};

inline Omega0Estimate omega0_estimate(const WalkConfig& cfg,
                                      double envelope_constant = kOmega0EnvelopeConstant) {
  if (cfg.delta() != 0.0) throw InvalidArgument("omega0_estimate: requires delta = 0");
  cfg.require_multiple_of_four("omega0_estimate");
  const SpectrumReport report = uuprime_spectrum(cfg);
  if (!report.has_flagged_pair()) {
    throw PropertyViolation("omega0_estimate: expected exactly two near-unit eigenvalues");
  }
  Omega0Estimate est;
  for (std::size_t i : report.near_unit) {
    if (report.eigenvalues[i].imag() < 0.0) est.omega0 = std::arg(report.eigenvalues[i]);
  }
  const int m = cfg.m();
  est.leading = -cross_term_closed_form(m);
  est.envelope = envelope_constant * std::pow(static_cast<double>(m), 1.5) / pow2(m);
  est.bound_check = std::abs(est.omega0 - est.leading) <= est.envelope;
  return est;
}

// Smallest envelope constant that the m = 8 spectrum satisfies.
inline double calibrate_omega0_constant() {
  const WalkConfig cfg(8, 0.0);
  const Omega0Estimate est = omega0_estimate(cfg, 0.0);
  return std::abs(est.omega0 - est.leading) * pow2(8) / std::pow(8.0, 1.5);
}

// psi_0^(e) and psi_1 expanded on the two near-unit eigenvectors.
// Eigenvector 0 is the one with the smaller eigenphase; each eigenvector's
// phase is chosen so that <w_j|psi0> is real and non-negative.
struct AmplitudeDecomposition {
  cplx a0, a1, b0, b1;
  double eps0 = 0.0, eps1 = 0.0;
  double omega0 = 0.0, omega1 = 0.0;
  double a_weight_bound = 0.0;  // lower bound on |a0|^2 + |a1|^2
  double b_weight_bound = 0.0;  // lower bound on |b0|^2 + |b1|^2
};

inline AmplitudeDecomposition decompose_amplitudes(const WalkConfig& cfg) {
  cfg.require_multiple_of_four("decompose_amplitudes");
  const SpectrumReport report = uuprime_spectrum(cfg, true);
  if (!report.has_flagged_pair()) {
    throw PropertyViolation("decompose_amplitudes: expected exactly two near-unit eigenvalues");
  }
  std::size_t i0 = report.near_unit[0];
  std::size_t i1 = report.near_unit[1];
  if (std::arg(report.eigenvalues[i0]) > std::arg(report.eigenvalues[i1])) std::swap(i0, i1);

  const AnalyticStates s = analytic_psi0_psi1(cfg);
  auto gauge = [&](std::size_t i) {
    Eigen::VectorXcd v = (*report.eigenvectors)[i];
    const cplx a = v.dot(s.psi0.amplitudes);
    if (std::abs(a) > 0.0) v *= a / std::abs(a);
    return v;
  };
  const Eigen::VectorXcd v0 = gauge(i0);
  const Eigen::VectorXcd v1 = gauge(i1);

  AmplitudeDecomposition dec;
  dec.a0 = v0.dot(s.psi0.amplitudes);
  dec.a1 = v1.dot(s.psi0.amplitudes);
  dec.b0 = v0.dot(s.psi1.amplitudes);
  dec.b1 = v1.dot(s.psi1.amplitudes);
  dec.eps0 = std::max(0.0, 1.0 - std::norm(dec.a0) - std::norm(dec.a1));
  dec.eps1 = std::max(0.0, 1.0 - std::norm(dec.b0) - std::norm(dec.b1));
  dec.omega0 = std::arg(report.eigenvalues[i0]);
  dec.omega1 = std::arg(report.eigenvalues[i1]);

  const int m = cfg.m();
  const double d = cfg.delta();
  const double gap = 1.0 - near_unit_bound(cfg);
  dec.a_weight_bound = 1.0 - (1.0 / pow2(m - 2) + (2.0 - 5.0 / pow2(m)) * d * d) / gap;
  dec.b_weight_bound =
      1.0 - ((4.0 - 5.0 * d * d) / (4.0 * c_squared(m) * binomial(m - 1, m / 2))) / gap;
  if (std::norm(dec.a0) + std::norm(dec.a1) <= dec.a_weight_bound ||
      std::norm(dec.b0) + std::norm(dec.b1) <= dec.b_weight_bound) {
    throw PropertyViolation("decompose_amplitudes: projection weight below its lower bound");
  }
  return dec;
}

// Amplitude of psi_1 after t iterations:
// w = a0 a1 (e^{i w0 t} - e^{i w1 t}) / (a0 b1 - a1 b0).
inline cplx amplitude_w(const AmplitudeDecomposition& dec, double t) {
  const cplx denom = dec.a0 * dec.b1 - dec.a1 * dec.b0;
  if (std::abs(denom) < 1e-14) throw NumericFailure("amplitude_w: degenerate denominator");
  return dec.a0 * dec.a1 * (std::polar(1.0, dec.omega0 * t) - std::polar(1.0, dec.omega1 * t)) /
         denom;
}

}  // namespace qwalk
