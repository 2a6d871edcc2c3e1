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

// qwalk: command-line driver for the walk experiments. Every subcommand
// writes CSV (or key=value for fit) to --out or standard output.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qwalk/qwalk.hpp"

namespace {

struct RawOptions {
  std::optional<int> m;
  std::string m_range;
  std::vector<double> deltas;
  std::optional<int> steps;
  std::string out;
  std::optional<int> workers;
  std::string input;
  std::string kind = "pmax";
};

void add_common(CLI::App* sub, RawOptions& o) {
  sub->add_option("--m", o.m, "hypercube dimension");
  sub->add_option("--m-range", o.m_range, "inclusive dimension range A:B");
  sub->add_option("--delta", o.deltas, "phase error (repeatable, or comma separated)")
      ->delimiter(',')
      ->allow_extra_args(false);
  sub->add_option("--steps", o.steps, "iterations per trajectory");
  sub->add_option("--out", o.out, "output path (default: stdout)");
  sub->add_option("--workers", o.workers, "worker threads (default: QWALK_WORKERS or 1)");
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw qwalk::InvalidArgument("--m-range expects A:B");
  const auto a = qwalk::parse_integer(text.substr(0, colon));
  const auto b = qwalk::parse_integer(text.substr(colon + 1));
  if (a < 0 || b > 1000) throw qwalk::InvalidArgument("--m-range out of bounds");
  return {static_cast<int>(a), static_cast<int>(b)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum walk search with systematic phase errors"};
  app.require_subcommand(1);
  RawOptions o;
  const char* names[][2] = {
      {"simulate", "trajectory t,p_success,p_gap for one (m, delta)"},
      {"sweep", "peak statistics over an (m, delta) grid"},
      {"spectrum", "eigenvalues of the marked double step"},
      {"fit", "refit model constants from a sweep CSV"},
      {"model", "closed-form success probability over t"},
      {"compare", "walk vs Grover probability gaps"},
  };
  for (const auto& [name, help] : names) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, o);
    if (std::string(name) == "fit") {
      sub->add_option("--in", o.input, "sweep CSV")->required();
      sub->add_option("--kind", o.kind, "pmax, topt or critical");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(qwalk::ExitCode::InvalidSpec);
  }

  qwalk::ExperimentSpec spec;
  try {
    spec.command = app.get_subcommands().front()->get_name();
    spec.m = o.m;
    if (!o.m_range.empty()) spec.m_range = parse_range(o.m_range);
    spec.deltas = o.deltas;
    spec.steps = o.steps;
    spec.out = o.out;
    spec.workers = qwalk::resolve_workers(o.workers);
    spec.input = o.input;
    spec.fit_kind = o.kind;
  } catch (const qwalk::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(qwalk::ExitCode::InvalidSpec);
  }

  const qwalk::CommandResult res = qwalk::run_command(spec);
  if (res.code != qwalk::ExitCode::Success) {
    std::cerr << "error: " << res.error << "\n";
    return static_cast<int>(res.code);
  }
  if (spec.out.empty()) {
    std::fwrite(res.output.data(), 1, res.output.size(), stdout);
    return std::fflush(stdout) == 0 ? 0 : static_cast<int>(qwalk::ExitCode::InvalidSpec);
  }
  try {
    qwalk::write_file(spec.out, res.output);
  } catch (const qwalk::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(qwalk::ExitCode::InvalidSpec);
  }
  return 0;
}
