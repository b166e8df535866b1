// Copyright 2026 The cvbound Authors
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

#ifndef CVBOUND_CLI_COMMANDS_HPP
#define CVBOUND_CLI_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

#include "cvbound/separability.hpp"
#include "cvbound/state_factory.hpp"

namespace cvbound::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// "a:b:step" (inclusive of b up to rounding) or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);

struct SweepRow {
  double r = 0.0;
  double sigma = 0.0;
  std::string bipartition;
  double nu_min = 0.0;
  double log_neg = 0.0;
  double duan = 0.0;
  Verdict verdict = Verdict::inconclusive;
  double duan_threshold_sigma_sq = 0.0;
};

inline constexpr const char* kSweepHeader =
    "r,sigma,bipartition,nu_min,log_neg,duan,verdict,duan_threshold_sigma_sq";

SweepRow evaluate_point(const BoundStateSpec& spec, const Bipartition& bp);

/// Rows in grid order (r outer, sigma inner) regardless of `jobs`.
std::vector<SweepRow> run_sweep(std::size_t n_pairs, const std::vector<double>& r_grid,
                                const std::vector<double>& sigma_grid, const Bipartition& bp,
                                unsigned jobs);

std::string format_row(const SweepRow& row);

/// Entry point. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvbound::cli

#endif  // CVBOUND_CLI_COMMANDS_HPP
