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

#ifndef CVBOUND_PROTOCOLS_HPP
#define CVBOUND_PROTOCOLS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cvbound/gaussian_state.hpp"
#include "cvbound/state_factory.hpp"

namespace cvbound {

inline constexpr double kPseudoInverseCutoff = 1e-12;

struct MeasurementSpec {
  enum class Kind { homodyne_x, homodyne_p, bell };
  Kind kind = Kind::homodyne_x;
  ModeSet modes;

  static MeasurementSpec homodyne(std::size_t mode, Quadrature q);
  static MeasurementSpec bell(std::size_t i, std::size_t j);
};

/// Gaussian conditional update for an ideal homodyne of `quad` on `mode`.
/// The measured mode is removed. The returned mean is the outcome average,
/// i.e. the mean of the kept modes before the measurement.
GaussianState homodyne_condition(const GaussianState& state, std::size_t mode, Quadrature quad);

/// Displacement of mode `target` by the Bell outcomes (x_i + x_j, p_i - p_j):
///   x_target += gain_x (x_i + x_j),  p_target += gain_p (p_i - p_j).
struct Feedforward {
  std::size_t target = 0;
  double gain_x = 1.0;
  double gain_p = 1.0;
};

/// Bell measurement of x_i + x_j and p_i - p_j. The state passes
/// beamsplitter(i, j, pi/4); output i is read in x and output j in p.
/// Without feedforward the kept modes are conditioned on the outcomes. With
/// feedforward the outcomes are fed forward into `ff->target` instead, which
/// leaves an outcome-independent covariance. Modes i and j are removed and
/// the remaining modes keep their relative order.
GaussianState bell_measure(const GaussianState& state, std::size_t i, std::size_t j,
                           const std::optional<Feedforward>& ff = std::nullopt);

/// Applies `spec` without feedforward.
GaussianState apply_measurement(const GaussianState& state, const MeasurementSpec& spec);

struct ProtocolReport {
  /// Original (0-based) indices of the surviving modes.
  ModeSet surviving_modes;
  /// Party names of the survivors, e.g. "2", "3" or "4", "1'".
  std::vector<std::string> survivor_labels;
  GaussianState conditioned_state = vacuum_state(1);
  /// var(x_a + duan_sign x_b) and var(p_a - duan_sign p_b) on the survivors.
  double witness_sum_x = 0.0;
  double witness_diff_p = 0.0;
  /// witness_sum_x + witness_diff_p.
  double duan = 0.0;
  /// Duan value with the opposite sign pairing.
  double duan_other_sign = 0.0;
  int duan_sign = 1;
  bool entangled = false;
  std::vector<Feedforward> feedforward;
  std::map<std::string, double> params;
};

/// Four-mode unlocking: Bell measurement on `measured_pair` (0-based) with
/// unit-gain feedforward. Pairs {1,4}, {2,3}, {1,2}, {3,4} use the gains that
/// map a stabilizer onto the survivors; for {1,3} and {2,4} the gains
/// (+-1 on either survivor) and sign pairing minimizing the Duan value are
/// reported.
ProtocolReport unlock(const BoundStateSpec& spec, ModePair measured_pair);

/// Two copies of the four-mode state on modes (1,2,3,4,1',2',3',4'). Bell
/// measurements on (1,2'), (2,3'), (3,4') are fed forward into mode 4 with
/// x gains (+1,+1,+1) and p gains (-1,+1,-1); the report describes (4, 1').
ProtocolReport superactivate(const BoundStateSpec& spec);

/// Coefficient vectors on the eight-mode register whose variances are the
/// superactivation witnesses, var(x_1' + x_4) and var(p_1' - p_4) after the
/// corrections.
std::pair<Vector, Vector> superactivation_witness_vectors();

}  // namespace cvbound

#endif  // CVBOUND_PROTOCOLS_HPP
