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
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qwalk/collapsed_walk.hpp"
#include "qwalk/csv.hpp"
#include "qwalk/error_model.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walk_config.hpp"

namespace qwalk {

enum class ExitCode : int { Success = 0, InvalidSpec = 1, NumericFailure = 2 };

struct ExperimentSpec {
  std::string command;
  std::optional<int> m;
  std::optional<std::pair<int, int>> m_range;
  std::vector<double> deltas;
  std::optional<int> steps;
  std::string out;  // empty: standard output
  int workers = 1;
  std::string input;             // fit: sweep CSV
  std::string fit_kind = "pmax";  // fit: pmax | topt | critical
};

inline constexpr double kMaxSweepIterations = 5e7;
inline constexpr int kMaxSweepDimension = 40;

// Worker count from the flag, else QWALK_WORKERS, else 1.
inline int resolve_workers(std::optional<int> flag) {
  if (flag) {
    if (*flag < 1) throw InvalidArgument("--workers must be >= 1");
    return *flag;
  }
  if (const char* env = std::getenv("QWALK_WORKERS"); env != nullptr && *env != '\0') {
    const long long n = parse_integer(env);
    if (n < 1 || n > 4096) throw InvalidArgument("QWALK_WORKERS must be in [1, 4096]");
    return static_cast<int>(n);
  }
  return 1;
}

// Evaluates fn(0..n-1) on up to `workers` threads. Results land in index
// order; if any call throws, the exception of the lowest index is rethrown.
template <typename T>
std::vector<T> parallel_map(std::size_t n, int workers, const std::function<T(std::size_t)>& fn) {
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline std::vector<int> spec_dimensions(const ExperimentSpec& spec) {
  if (spec.m && spec.m_range) throw InvalidArgument("give either --m or --m-range, not both");
  if (spec.m) return {*spec.m};
  if (!spec.m_range) throw InvalidArgument("missing --m or --m-range");
  const auto [a, b] = *spec.m_range;
  if (a > b) throw InvalidArgument("--m-range: empty range");
  std::vector<int> out;
  for (int m = a; m <= b; ++m) out.push_back(m);
  return out;
}

inline int single_dimension(const ExperimentSpec& spec) {
  const auto ms = spec_dimensions(spec);
  if (ms.size() != 1) throw InvalidArgument(spec.command + ": needs a single m");
  return ms[0];
}

inline double single_delta(const ExperimentSpec& spec) {
  if (spec.deltas.size() > 1) throw InvalidArgument(spec.command + ": needs a single --delta");
  return spec.deltas.empty() ? 0.0 : spec.deltas[0];
}

inline std::vector<double> delta_list(const ExperimentSpec& spec) {
  if (spec.deltas.empty()) throw InvalidArgument(spec.command + ": needs at least one --delta");
  return spec.deltas;
}

inline int steps_for(const ExperimentSpec& spec, int m) {
  if (spec.steps) {
    if (*spec.steps < 0) throw InvalidArgument("--steps must be >= 0");
    return *spec.steps;
  }
  return default_step_budget(m);
}

struct GridPoint {
  int m;
  double delta;
};

// (m, delta) in canonical order, with the work guard shared by sweep and compare.
inline std::vector<GridPoint> spec_grid(const ExperimentSpec& spec) {
  const auto ms = spec_dimensions(spec);
  const auto deltas = delta_list(spec);
  std::vector<GridPoint> grid;
  double work = 0.0;
  for (int m : ms) {
    if (m < 2) throw InvalidArgument("m must be >= 2");
    if (m > kMaxSweepDimension) throw InvalidArgument("grid refused: m above 40");
    for (double d : deltas) {
      (void)WalkConfig(m, d);  // validates delta
      grid.push_back({m, d});
      // the point's own trajectory plus the error-free reference
      work += 2.0 * std::max(steps_for(spec, m), 1);
    }
  }
  if (work > kMaxSweepIterations) {
    throw InvalidArgument("grid refused: " + format_double(work) +
                          " walk iterations exceed the budget of 5e7");
  }
  return grid;
}

inline std::string cmd_simulate(const ExperimentSpec& spec) {
  const WalkConfig cfg(single_dimension(spec), single_delta(spec));
  const int steps = steps_for(spec, cfg.m());
  const Trajectory traj = evolve(cfg, steps);
  CsvWriter csv({"t", "p_success", "p_gap"});
  for (const auto& row : traj.rows) csv.cell(row.t).cell(row.p_success).cell(row.p_gap).end_row();
  return csv.str();
}

inline std::vector<SweepRow> sweep_rows(const ExperimentSpec& spec) {
  const auto grid = spec_grid(spec);
  return parallel_map<SweepRow>(grid.size(), spec.workers, [&](std::size_t i) {
    const GridPoint g = grid[i];
    const int steps = steps_for(spec, g.m);
    if (steps < 1) throw InvalidArgument("sweep: --steps must be >= 1");
    const ObservedPeak peak = observe_peak(WalkConfig(g.m, g.delta), steps);
    const double ref = g.delta == 0.0 ? peak.p_max : observe_peak(WalkConfig(g.m, 0.0), steps).p_max;
    return SweepRow{g.m, g.delta, peak.p_max, peak.t_opt, ref};
  });
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  CsvWriter csv({"m", "delta", "p_max", "t_opt", "p0_observed", "n_db"});
  for (const auto& r : rows) {
    csv.cell(r.m).cell(r.delta).cell(r.p_max).cell(r.t_opt).cell(r.p0_observed).cell(r.m - 1).end_row();
  }
  return csv.str();
}

inline std::string cmd_sweep(const ExperimentSpec& spec) { return sweep_csv(sweep_rows(spec)); }

inline std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
  const CsvTable table = parse_csv(text);
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    SweepRow r;
    r.m = static_cast<int>(parse_integer(table.rows[i][table.column("m")]));
    r.delta = table.number(i, "delta");
    r.p_max = table.number(i, "p_max");
    r.t_opt = static_cast<int>(parse_integer(table.rows[i][table.column("t_opt")]));
    r.p0_observed = table.number(i, "p0_observed");
    rows.push_back(r);
  }
  if (rows.empty()) throw InvalidArgument("sweep CSV has no rows");
  return rows;
}

inline std::string cmd_spectrum(const ExperimentSpec& spec) {
  const WalkConfig cfg(single_dimension(spec), single_delta(spec));
  const SpectrumReport report = uuprime_spectrum(cfg);
  if (!report.has_flagged_pair()) {
    throw PropertyViolation("spectrum: " + std::to_string(report.near_unit.size()) +
                            " eigenvalues above the bound, expected 2");
  }
  for (const cplx& z : report.eigenvalues) {
    if (std::abs(std::abs(z) - 1.0) > 1e-8) throw NumericFailure("spectrum: eigenvalue off the unit circle");
  }
  CsvWriter csv({"re", "im", "flagged", "sector"});
  for (std::size_t i = 0; i < report.size(); ++i) {
    csv.cell(report.eigenvalues[i].real())
        .cell(report.eigenvalues[i].imag())
        .cell(report.is_flagged(i) ? 1 : 0)
        .cell(std::string(report.sectors[i] == Sector::Even ? "even" : "odd"))
        .end_row();
  }
  return csv.str();
}

inline std::string cmd_fit(const ExperimentSpec& spec) {
  if (spec.input.empty()) throw InvalidArgument("fit: missing --in");
  const auto rows = parse_sweep_csv(read_file(spec.input));
  const FitKind kind = parse_fit_kind(spec.fit_kind);
  std::vector<FitSample> samples;
  switch (kind) {
    case FitKind::PMax: samples = pmax_samples(rows); break;
    case FitKind::TOpt: samples = topt_samples(rows); break;
    case FitKind::Critical: samples = critical_samples(rows); break;
  }
  return to_key_values(fit_constants(samples, kind));
}

inline std::string cmd_model(const ExperimentSpec& spec) {
  const int m = single_dimension(spec);
  if (m < 4 || m % 2 != 0) throw InvalidArgument("model: m must be even and >= 4");
  const auto deltas = delta_list(spec);
  const int steps = steps_for(spec, m);
  CsvWriter csv({"t", "delta", "p_model"});
  for (double d : deltas) {
    (void)WalkConfig(m, d);
    for (int t = 0; t <= steps; ++t) csv.cell(t).cell(d).cell(p_model(m, d, t)).end_row();
  }
  return csv.str();
}

inline std::string cmd_compare(const ExperimentSpec& spec) {
  const auto grid = spec_grid(spec);
  const auto gaps = parallel_map<GapPair>(grid.size(), spec.workers, [&](std::size_t i) {
    const int steps = steps_for(spec, grid[i].m);
    if (steps < 1) throw InvalidArgument("compare: --steps must be >= 1");
    return gap_models(grid[i].m, grid[i].delta, {}, steps);
  });
  CsvWriter csv({"m", "delta", "dp1", "dp2", "dp1_minus_dp2", "dp2_2m"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv.cell(grid[i].m)
        .cell(grid[i].delta)
        .cell(gaps[i].dp1)
        .cell(gaps[i].dp2)
        .cell(gaps[i].dp1 - gaps[i].dp2)
        .cell(gaps[i].dp2_2m)
        .end_row();
  }
  return csv.str();
}

struct CommandResult {
  ExitCode code = ExitCode::Success;
  std::string output;
  std::string error;
};

// Runs one command; never throws.
inline CommandResult run_command(const ExperimentSpec& spec) {
  CommandResult res;
  try {
    if (spec.workers < 1) throw InvalidArgument("--workers must be >= 1");
    if (spec.command == "simulate") {
      res.output = cmd_simulate(spec);
    } else if (spec.command == "sweep") {
      res.output = cmd_sweep(spec);
    } else if (spec.command == "spectrum") {
      res.output = cmd_spectrum(spec);
    } else if (spec.command == "fit") {
      res.output = cmd_fit(spec);
    } else if (spec.command == "model") {
      res.output = cmd_model(spec);
    } else if (spec.command == "compare") {
      res.output = cmd_compare(spec);
    } else {
      throw InvalidArgument("unknown command '" + spec.command + "'");
    }
  } catch (const InvalidArgument& e) {
    res.code = ExitCode::InvalidSpec;
    res.error = e.what();
  } catch (const std::exception& e) {
    res.code = ExitCode::NumericFailure;
    res.error = e.what();
  }
  return res;
}

}  // namespace qwalk
