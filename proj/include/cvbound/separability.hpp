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

#ifndef CVBOUND_SEPARABILITY_HPP
#define CVBOUND_SEPARABILITY_HPP

#include <optional>
#include <string>

#include "cvbound/gaussian_state.hpp"
#include "cvbound/stabilizer.hpp"
#include "cvbound/state_factory.hpp"

namespace cvbound {

class Bipartition {
 public:
  /// `side_b` is the complement of `side_a`.
  static Bipartition make(ModeSet side_a, std::size_t n_modes);
  static Bipartition from_partition(const Partition& part);
  /// "12-34", "14-23", "13-24", ... (1-based).
  static Bipartition parse(const std::string& label, std::size_t n_modes);

  const ModeSet& side_a() const { return side_a_; }
  const ModeSet& side_b() const { return side_b_; }
  std::size_t n_modes() const { return side_a_.size() + side_b_.size(); }
  std::string label() const;
  Partition as_partition() const;

 private:
  Bipartition(ModeSet a, ModeSet b) : side_a_(std::move(a)), side_b_(std::move(b)) {}
  ModeSet side_a_;
  ModeSet side_b_;
};

enum class SeparabilityMethod { ppt, duan, construction };
enum class Verdict { entangled, separable, inconclusive };

std::string to_string(SeparabilityMethod m);
std::string to_string(Verdict v);

struct SeparabilityVerdict {
  SeparabilityMethod method = SeparabilityMethod::ppt;
  Verdict verdict = Verdict::inconclusive;
  double witness_value = 0.0;
  double threshold = 0.0;
};

/// Default margin applied before a one-sided test may claim entanglement.
inline constexpr double kVerdictTol = 1e-9;

/// Smallest symplectic eigenvalue of the covariance partially transposed on
/// side B. Values below 1/2 certify entanglement.
double ppt_min_symplectic(const GaussianState& state, const Bipartition& bp);

/// sum over partially transposed nu < 1/2 of -log2(2 nu); eigenvalues within
/// kPhysicalityTol of 1/2 count as 1/2.
double log_negativity(const GaussianState& state, const Bipartition& bp);

/// sign = +1: var(x_i + x_j) + var(p_i - p_j); sign = -1: var(x_i - x_j) +
/// var(p_i + p_j). Separable states give at least 2.
double duan_value(const GaussianState& state, std::size_t i, std::size_t j, int sign);

/// Smallest duan_value over every cross pair (i in A, j in B) and both signs.
double min_cross_duan(const GaussianState& state, const Bipartition& bp);

/// (1 - e^{-2r})/2: GRNG variance at which EPR(r) plus position noise
/// correlated (+,+) on both modes reaches the Duan bound of 2.
double duan_threshold_sigma_sq(double r);

/// Duan value of EPR(r) after position noise of variance sigma_sq added with
/// pattern (+1, +1): 2 e^{-2r} + 4 sigma_sq.
double epr_with_position_noise_duan(double r, double sigma_sq);

/// Bisection for the smallest sigma at which the four-mode state with
/// sigma_x = sigma_p = sigma becomes PPT across `bp`. Returns nullopt when
/// the cut is NPT at sigma_max or already PPT at sigma = 0.
std::optional<double> ppt_threshold_search(double r, const Bipartition& bp, double sigma_max = 10.0,
                                           double tol = 1e-6);

/// Entangled iff nu_min < 1/2 - tol; separable only for a 1 x 1 mode cut
/// with nu_min >= 1/2 - tol; inconclusive otherwise.
SeparabilityVerdict ppt_verdict(const GaussianState& state, const Bipartition& bp,
                                double tol = kVerdictTol);

/// Entangled iff the minimum cross-pair Duan value is below 2 - tol.
SeparabilityVerdict duan_verdict(const GaussianState& state, const Bipartition& bp,
                                 double tol = kVerdictTol);

/// Four-mode cuts into two pairs only.
/// Separable when the state has an explicit construction of EPR sources
/// local to each side plus classical displacement noise; inconclusive
/// otherwise. The witness is the residual noise eigenvalue of that
/// construction (>= 0 when it exists).
SeparabilityVerdict construction_verdict(const BoundStateSpec& spec, const Bipartition& bp);

/// Combines the above with the one-sided discipline: any entangled verdict
/// wins, then a separable one, else inconclusive.
Verdict combined_verdict(const std::vector<SeparabilityVerdict>& verdicts);

}  // namespace cvbound

#endif  // CVBOUND_SEPARABILITY_HPP
