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

#include "cvbound/separability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cvbound {

Bipartition Bipartition::make(ModeSet side_a, std::size_t n_modes) {
  std::sort(side_a.begin(), side_a.end());
  if (side_a.empty() || side_a.size() >= n_modes) {
    throw std::invalid_argument("bipartition sides must both be nonempty");
  }
  if (std::adjacent_find(side_a.begin(), side_a.end()) != side_a.end() ||
      side_a.back() >= n_modes) {
    throw std::invalid_argument("bipartition side contains repeated or invalid modes");
  }
  ModeSet side_b;
  for (std::size_t m = 0; m < n_modes; ++m) {
    if (!std::binary_search(side_a.begin(), side_a.end(), m)) side_b.push_back(m);
  }
  return Bipartition(std::move(side_a), std::move(side_b));
}

Bipartition Bipartition::from_partition(const Partition& part) {
  if (part.subsets().size() != 2) {
    throw std::invalid_argument("a bipartition needs exactly two subsets");
  }
  return make(part.subsets()[0], part.n_modes());
}

Bipartition Bipartition::parse(const std::string& label, std::size_t n_modes) {
  return from_partition(Partition::parse(label, n_modes));
}

Partition Bipartition::as_partition() const {
  return Partition::make({side_a_, side_b_}, n_modes());
}

std::string Bipartition::label() const { return as_partition().label(); }

std::string to_string(SeparabilityMethod m) {
  switch (m) {
    case SeparabilityMethod::ppt: return "ppt";
    case SeparabilityMethod::duan: return "duan";
    case SeparabilityMethod::construction: return "construction";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::entangled: return "entangled";
    case Verdict::separable: return "separable";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

void require_cut(const GaussianState& state, const Bipartition& bp) {
  if (bp.n_modes() != state.n_modes()) {
    throw std::invalid_argument("bipartition does not match the number of modes of the state");
  }
}

std::vector<double> transposed_spectrum(const GaussianState& state, const Bipartition& bp) {
  require_cut(state, bp);
  return symplectic_eigenvalues(partial_transpose(state, bp.side_b()));
}

}  // namespace

double ppt_min_symplectic(const GaussianState& state, const Bipartition& bp) {
  return transposed_spectrum(state, bp).front();
}

double log_negativity(const GaussianState& state, const Bipartition& bp) {
  double total = 0.0;
  for (double nu : transposed_spectrum(state, bp)) {
    if (nu < 0.5 - kPhysicalityTol) total -= std::log2(2.0 * nu);
  }
  return total;
}

double duan_value(const GaussianState& state, std::size_t i, std::size_t j, int sign) {
  if (i == j) {
    throw std::invalid_argument("duan_value requires two distinct modes");
  }
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("duan_value sign must be +1 or -1");
  }
  const auto n = state.n_modes();
  const double s = static_cast<double>(sign);
  Vector x = quadrature_vector(n, i, Quadrature::x) + quadrature_vector(n, j, Quadrature::x, s);
  Vector p = quadrature_vector(n, i, Quadrature::p) + quadrature_vector(n, j, Quadrature::p, -s);
  return quad_variance(state, x) + quad_variance(state, p);
}

double min_cross_duan(const GaussianState& state, const Bipartition& bp) {
  require_cut(state, bp);
  double best = std::numeric_limits<double>::infinity();
  for (auto i : bp.side_a()) {
    for (auto j : bp.side_b()) {
      best = std::min({best, duan_value(state, i, j, 1), duan_value(state, i, j, -1)});
    }
  }
  return best;
}

double duan_threshold_sigma_sq(double r) {
  if (!(r >= 0.0)) {
    throw std::invalid_argument("duan_threshold_sigma_sq requires r >= 0");
  }
  return -std::expm1(-2.0 * r) / 2.0;
}

double epr_with_position_noise_duan(double r, double sigma_sq) {
  Vector pattern(4);
  pattern << 1, 0, 1, 0;
  const GaussianState noisy =
      add_classical_noise(epr_pair(r), NoisePattern::make(pattern, std::sqrt(sigma_sq)));
  return duan_value(noisy, 0, 1, 1);
}

std::optional<double> ppt_threshold_search(double r, const Bipartition& bp, double sigma_max,
                                           double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("ppt_threshold_search requires tol > 0");
  }
  if (!(sigma_max > 0.0)) {
    throw std::invalid_argument("ppt_threshold_search requires sigma_max > 0");
  }
  const auto is_npt = [&](double sigma) {
    const GaussianState state = smolin_cv_four(BoundStateSpec::four_mode(r, sigma));
    return ppt_min_symplectic(state, bp) < 0.5 - kPhysicalityTol;
  };
  if (!is_npt(0.0) || is_npt(sigma_max)) return std::nullopt;
  double lo = 0.0;
  double hi = sigma_max;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (is_npt(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SeparabilityVerdict ppt_verdict(const GaussianState& state, const Bipartition& bp, double tol) {
  SeparabilityVerdict v;
  v.method = SeparabilityMethod::ppt;
  v.threshold = 0.5;
  v.witness_value = ppt_min_symplectic(state, bp);
  if (v.witness_value < 0.5 - tol) {
    v.verdict = Verdict::entangled;
  } else if (bp.side_a().size() == 1 && bp.side_b().size() == 1) {
    v.verdict = Verdict::separable;
  } else {
    v.verdict = Verdict::inconclusive;
  }
  return v;
}

SeparabilityVerdict duan_verdict(const GaussianState& state, const Bipartition& bp, double tol) {
  SeparabilityVerdict v;
  v.method = SeparabilityMethod::duan;
  v.threshold = 2.0;
  v.witness_value = min_cross_duan(state, bp);
  v.verdict = v.witness_value < 2.0 - tol ? Verdict::entangled : Verdict::inconclusive;
  return v;
}

SeparabilityVerdict construction_verdict(const BoundStateSpec& spec, const Bipartition& bp) {
  SeparabilityVerdict v;
  v.method = SeparabilityMethod::construction;
  v.threshold = 0.0;
  if (bp.side_a().size() != 2 || bp.side_b().size() != 2 || spec.n_pairs != 2) {
    v.witness_value = std::numeric_limits<double>::quiet_NaN();
    v.verdict = Verdict::inconclusive;
    return v;
  }
  const ConstructionVariant local = match_local_epr(spec, bp.as_partition());
  v.witness_value = local.residual_min_eigenvalue;
  v.verdict = local.matched ? Verdict::separable : Verdict::inconclusive;
  return v;
}

Verdict combined_verdict(const std::vector<SeparabilityVerdict>& verdicts) {
  bool separable = false;
  for (const auto& v : verdicts) {
    if (v.verdict == Verdict::entangled) return Verdict::entangled;
    if (v.verdict == Verdict::separable) separable = true;
  }
  return separable ? Verdict::separable : Verdict::inconclusive;
}

}  // namespace cvbound
