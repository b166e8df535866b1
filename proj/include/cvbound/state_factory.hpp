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

#ifndef CVBOUND_STATE_FACTORY_HPP
#define CVBOUND_STATE_FACTORY_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cvbound/gaussian_state.hpp"
#include "cvbound/stabilizer.hpp"

namespace cvbound {

/// Parameters of the finite-squeezing bound-entangled family: `n_pairs`
/// two-mode squeezed sources of squeezing `r`, scrambled by correlated
/// classical displacements of strength `sigma_x` (positions) and `sigma_p`
/// (momenta).
struct BoundStateSpec {
  std::size_t n_pairs = 2;
  double r = 0.0;
  double sigma_x = 0.0;
  double sigma_p = 0.0;

  static BoundStateSpec four_mode(double r, double sigma) { return {2, r, sigma, sigma}; }

  /// Throws std::invalid_argument (or std::out_of_range when r > 20).
  void validate() const;
  std::size_t n_modes() const { return 2 * n_pairs; }
};

using ModePair = std::pair<std::size_t, std::size_t>;

/// Product of two-mode squeezed vacua on the given disjoint mode pairs of an
/// n-mode register; unlisted modes stay in vacuum. `mirrored[k]` selects the
/// orientation with x-difference and p-sum squeezed for pair k.
GaussianState epr_sources(std::size_t n_modes, const std::vector<ModePair>& pairs, double r,
                          const std::vector<bool>& mirrored = {});

/// The nearest-neighbour chain of displacement patterns: for each link k
/// between pair k and pair k + 1, an x pattern (+,+ | -,-) of strength
/// sigma_x and an independent p pattern (-,+ | +,-) of strength sigma_p.
std::vector<NoisePattern> chain_noise_patterns(const BoundStateSpec& spec);

/// Four-mode state: EPR(r) on modes (1,2) and (3,4), displaced by
///   c1 = a1 + xi_x - xi_p,  c2 = a2 + xi_x + xi_p,
///   c3 = b1 - xi_x + xi_p,  c4 = b2 - xi_x - xi_p,
/// where xi_x shifts positions with deviation sigma_x and xi_p shifts
/// momenta with deviation sigma_p.
GaussianState smolin_cv_four(const BoundStateSpec& spec);

/// 2n-mode generalization with nullifiers sum_k x_k and sum_k (-1)^k p_k.
GaussianState smolin_cv_2n(const BoundStateSpec& spec);

struct MatchedParams {
  double r = 0.0;
  /// Residual GRNG strength along the original x and p displacement patterns.
  double sigma_x = 0.0;
  double sigma_p = 0.0;
  /// Full classical noise used by the matched construction.
  std::vector<NoisePattern> noise;
  std::vector<bool> mirrored;
};

/// One pair of collective modes, (q_a1 +- q_a2)/sqrt2 and (q_b1 +- q_b2)/sqrt2.
struct CollectivePair {
  std::string label;
  /// Per-mode displacement deviation of the re-routed GRNGs on this pair.
  double grng_sigma_x = 0.0;
  double grng_sigma_p = 0.0;
  bool noiseless() const { return grng_sigma_x == 0.0 && grng_sigma_p == 0.0; }
};

/// Beamsplitter circuit: EPR(r) sources between the sum modes and between
/// the difference modes of the two grouping subsets, displacement noise on
/// those collective modes, then a balanced beamsplitter inside each subset.
struct CollectiveCircuit {
  double r = 0.0;
  std::array<CollectivePair, 2> pairs;
  GaussianState state = vacuum_state(1);
};

struct ConstructionVariant {
  Partition grouping;
  /// EPR sources placed directly on the grouping's pairs plus classical
  /// noise. Empty when no nonnegative noise covariance reproduces the state.
  std::optional<MatchedParams> matched;
  std::optional<GaussianState> matched_state;
  /// Smallest eigenvalue of the residual noise covariance (negative when
  /// infeasible), for the best orientation tried.
  double residual_min_eigenvalue = 0.0;
  /// Present for the cross groupings {14|23} and {13|24}.
  std::optional<CollectiveCircuit> circuit;

  /// Human-readable list of noise-free collective sectors.
  std::string noiseless_sectors() const;
};

/// Direct matching with EPR sources on the pairs of `grouping` (any pairing
/// of the spec's modes). The squeezing is pinned to spec.r: along the
/// directions untouched by the GRNG patterns the target equals an undisplaced
/// EPR product, so any other r' leaves a negative residual.
ConstructionVariant match_local_epr(const BoundStateSpec& spec, const Partition& grouping);

/// Four-mode collective beamsplitter circuit for {14|23} or {13|24}.
CollectiveCircuit collective_circuit(const BoundStateSpec& spec, const Partition& grouping);

/// Equivalent generation of smolin_cv_four(spec) adapted to the grouping
/// {14|23} or {13|24}. Throws std::invalid_argument for other groupings.
ConstructionVariant equivalent_construction(const BoundStateSpec& spec, const Partition& grouping);

/// sinh(2r)/4: smallest sigma^2 for which EPR sources on (1,4),(2,3) plus
/// classical noise reproduce the four-mode state.
double local_matching_sigma_sq(double r);

}  // namespace cvbound

#endif  // CVBOUND_STATE_FACTORY_HPP
