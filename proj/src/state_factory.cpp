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

#include "cvbound/state_factory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cvbound {

namespace {

constexpr double kMatchTol = 1e-10;

double matrix_scale(const Matrix& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

std::vector<ModePair> grouping_pairs(const Partition& grouping) {
  std::vector<ModePair> pairs;
  for (const auto& subset : grouping.subsets()) {
    if (subset.size() != 2) {
      throw std::invalid_argument("construction groupings must consist of mode pairs");
    }
    ModeSet sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    pairs.emplace_back(sorted[0], sorted[1]);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

// The x and p displacement patterns of the four-mode state at unit strength.
Vector four_mode_x_pattern() {
  Vector u = Vector::Zero(8);
  u << 1, 0, 1, 0, -1, 0, -1, 0;
  return u;
}

Vector four_mode_p_pattern() {
  Vector w = Vector::Zero(8);
  w << 0, -1, 0, 1, 0, 1, 0, -1;
  return w;
}

double residual_strength(const Matrix& residual, const Vector& pattern) {
  const double norm_sq = pattern.squaredNorm();
  return std::sqrt(std::max(0.0, pattern.dot(residual * pattern)) / (norm_sq * norm_sq));
}

}  // namespace

void BoundStateSpec::validate() const {
  if (n_pairs < 2) {
    throw std::invalid_argument("bound-state spec needs n_pairs >= 2");
  }
  if (!(r >= 0.0)) {
    throw std::invalid_argument("bound-state spec needs r >= 0");
  }
  if (r > kMaxSqueezing) {
    throw std::out_of_range("bound-state spec: r exceeds the supported maximum of 20");
  }
  if (!std::isfinite(sigma_x) || !std::isfinite(sigma_p) || sigma_x < 0.0 || sigma_p < 0.0) {
    throw std::invalid_argument("bound-state spec needs finite sigma_x, sigma_p >= 0");
  }
}

GaussianState epr_sources(std::size_t n_modes, const std::vector<ModePair>& pairs, double r,
                          const std::vector<bool>& mirrored) {
  if (!mirrored.empty() && mirrored.size() != pairs.size()) {
    throw std::invalid_argument("epr_sources: orientation list length differs from pair list");
  }
  const Matrix block = epr_pair(r).cov();
  Matrix cov = 0.5 * Matrix::Identity(2 * n_modes, 2 * n_modes);
  std::vector<bool> used(n_modes, false);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [a, b] = pairs[k];
    if (a >= n_modes || b >= n_modes || a == b || used[a] || used[b]) {
      throw std::invalid_argument("epr_sources: pairs must be disjoint distinct valid modes");
    }
    used[a] = used[b] = true;
    const double sign = (!mirrored.empty() && mirrored[k]) ? -1.0 : 1.0;
    const std::size_t idx[2] = {a, b};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int q = 0; q < 2; ++q) {
          double value = block(2 * i + q, 2 * j + q);
          if (i != j) value *= sign;
          cov(2 * idx[i] + q, 2 * idx[j] + q) = value;
        }
      }
    }
  }
  return GaussianState::from_trusted_moments(Vector::Zero(2 * n_modes), std::move(cov));
}

std::vector<NoisePattern> chain_noise_patterns(const BoundStateSpec& spec) {
  spec.validate();
  const auto n = spec.n_modes();
  std::vector<NoisePattern> patterns;
  for (std::size_t k = 0; k + 1 < spec.n_pairs; ++k) {
    const std::size_t m = 2 * k;  // first mode of pair k
    Vector x = Vector::Zero(2 * n);
    x(2 * m) = 1.0;
    x(2 * (m + 1)) = 1.0;
    x(2 * (m + 2)) = -1.0;
    x(2 * (m + 3)) = -1.0;
    Vector p = Vector::Zero(2 * n);
    p(2 * m + 1) = -1.0;
    p(2 * (m + 1) + 1) = 1.0;
    p(2 * (m + 2) + 1) = 1.0;
    p(2 * (m + 3) + 1) = -1.0;
    patterns.push_back(NoisePattern::make(std::move(x), spec.sigma_x));
    patterns.push_back(NoisePattern::make(std::move(p), spec.sigma_p));
  }
  return patterns;
}

GaussianState smolin_cv_2n(const BoundStateSpec& spec) {
  spec.validate();
  std::vector<ModePair> pairs;
  for (std::size_t k = 0; k < spec.n_pairs; ++k) pairs.emplace_back(2 * k, 2 * k + 1);
  GaussianState state = epr_sources(spec.n_modes(), pairs, spec.r);
  for (const auto& noise : chain_noise_patterns(spec)) {
    state = add_classical_noise(state, noise);
  }
  return state;
}

GaussianState smolin_cv_four(const BoundStateSpec& spec) {
  if (spec.n_pairs != 2) {
    throw std::invalid_argument("smolin_cv_four requires n_pairs = 2");
  }
  return smolin_cv_2n(spec);
}

double local_matching_sigma_sq(double r) { return std::sinh(2.0 * r) / 4.0; }

std::string ConstructionVariant::noiseless_sectors() const {
  if (!circuit) return "n/a";
  std::ostringstream out;
  bool any = false;
  auto sep = [&] {
    if (any) out << "; ";
    any = true;
  };
  for (const auto& pair : circuit->pairs) {
    if (pair.noiseless()) {
      sep();
      out << pair.label << " (pure EPR, no displacement)";
      continue;
    }
    if (pair.grng_sigma_x == 0.0) {
      sep();
      out << "x of " << pair.label;
    }
    if (pair.grng_sigma_p == 0.0) {
      sep();
      out << "p of " << pair.label;
    }
  }
  return any ? out.str() : std::string("none");
}

ConstructionVariant match_local_epr(const BoundStateSpec& spec, const Partition& grouping) {
  spec.validate();
  if (grouping.n_modes() != spec.n_modes()) {
    throw std::invalid_argument("grouping and spec disagree on the number of modes");
  }
  const auto pairs = grouping_pairs(grouping);
  const GaussianState target = smolin_cv_2n(spec);
  const double tol = kMatchTol * matrix_scale(target.cov());

  ConstructionVariant out{grouping, std::nullopt, std::nullopt, 0.0, std::nullopt};
  double best = -std::numeric_limits<double>::infinity();
  std::vector<bool> best_orientation;
  Matrix best_residual;
  // Each source may be used in either orientation; keep the least negative
  // residual.
  const std::size_t combos = std::size_t{1} << pairs.size();
  for (std::size_t mask = 0; mask < combos; ++mask) {
    std::vector<bool> mirrored(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) mirrored[k] = (mask >> k) & 1U;
    const Matrix residual = target.cov() - epr_sources(spec.n_modes(), pairs, spec.r, mirrored).cov();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(residual);
    const double lowest = eig.eigenvalues().minCoeff();
    if (lowest > best) {
      best = lowest;
      best_orientation = mirrored;
      best_residual = residual;
    }
  }
  out.residual_min_eigenvalue = best;
  if (best < -tol) return out;

  MatchedParams params;
  params.r = spec.r;
  params.mirrored = best_orientation;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(best_residual);
  for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
    const double lambda = eig.eigenvalues()(k);
    if (lambda > tol) {
      params.noise.push_back(NoisePattern::make(eig.eigenvectors().col(k), std::sqrt(lambda)));
    }
  }
  const auto patterns = chain_noise_patterns(spec);
  // Strength left on the first link's original patterns.
  params.sigma_x = residual_strength(best_residual, patterns.at(0).pattern);
  params.sigma_p = residual_strength(best_residual, patterns.at(1).pattern);

  GaussianState built = epr_sources(spec.n_modes(), pairs, spec.r, best_orientation);
  for (const auto& noise : params.noise) built = add_classical_noise(built, noise);
  const double mismatch = (built.cov() - target.cov()).cwiseAbs().maxCoeff();
  if (mismatch > kMatchTol * matrix_scale(target.cov())) {
    throw NumericalFailure("local EPR matching failed to reproduce the target covariance");
  }
  out.matched = std::move(params);
  out.matched_state = std::move(built);
  return out;
}

CollectiveCircuit collective_circuit(const BoundStateSpec& spec, const Partition& grouping) {
  spec.validate();
  if (spec.n_pairs != 2 || grouping.n_modes() != 4) {
    throw std::invalid_argument("collective circuits are defined for the four-mode state");
  }
  const auto pairs = grouping_pairs(grouping);
  // Side A holds mode 1. Slots: A+ at a1, A- at a2, B+ at b1, B- at b2.
  const auto [a1, a2] = pairs[0];
  const auto [b1, b2] = pairs[1];
  if (a1 != 0 || (a2 == 1)) {
    throw std::invalid_argument("collective circuits exist only for groupings 14-23 and 13-24");
  }
  const double quarter = std::numbers::pi / 4.0;
  const SymplecticMap circuit = phase_rotation(b2, std::numbers::pi, 4) *
                                beamsplitter(b1, b2, quarter, 4) *
                                phase_rotation(a2, std::numbers::pi, 4) *
                                beamsplitter(a1, a2, quarter, 4);
  const Matrix& s = circuit.matrix();

  GaussianState slots = epr_sources(4, {{a1, b1}, {a2, b2}}, spec.r);
  // The undisplaced sources seen through the circuit must be the original
  // EPR product; otherwise the grouping has no collective EPR form.
  const Matrix quantum = s * slots.cov() * s.transpose();
  const Matrix original = epr_sources(4, {{0, 1}, {2, 3}}, spec.r).cov();
  if ((quantum - original).cwiseAbs().maxCoeff() > kMatchTol * matrix_scale(original)) {
    throw std::invalid_argument("grouping " + grouping.label() +
                                " has no collective EPR construction");
  }

  const Vector u_slot = s.transpose() * four_mode_x_pattern();
  const Vector w_slot = s.transpose() * four_mode_p_pattern();
  slots = add_classical_noise(slots, NoisePattern::make(u_slot, spec.sigma_x));
  slots = add_classical_noise(slots, NoisePattern::make(w_slot, spec.sigma_p));

  CollectiveCircuit out;
  out.r = spec.r;
  const std::size_t slot_pairs[2][2] = {{a1, b1}, {a2, b2}};
  const auto subset_label = [](std::size_t i, std::size_t j, char sign) {
    std::ostringstream l;
    l << "(" << i + 1 << sign << j + 1 << ")";
    return l.str();
  };
  for (int k = 0; k < 2; ++k) {
    const char sign = k == 0 ? '+' : '-';
    auto& pair = out.pairs[static_cast<std::size_t>(k)];
    pair.label = (k == 0 ? "sum pair " : "difference pair ") + subset_label(a1, a2, sign) + "/" +
                 subset_label(b1, b2, sign);
    double amp_x = 0.0;
    double amp_p = 0.0;
    for (auto slot : slot_pairs[k]) {
      amp_x = std::max(amp_x, std::abs(u_slot(2 * slot)));
      amp_p = std::max(amp_p, std::abs(w_slot(2 * slot + 1)));
    }
    // Snap floating residue of exact cancellations.
    pair.grng_sigma_x = amp_x > 1e-12 ? amp_x * spec.sigma_x : 0.0;
    pair.grng_sigma_p = amp_p > 1e-12 ? amp_p * spec.sigma_p : 0.0;
  }
  out.state = apply_symplectic(slots, circuit);
  return out;
}

ConstructionVariant equivalent_construction(const BoundStateSpec& spec, const Partition& grouping) {
  spec.validate();
  if (spec.n_pairs != 2 || grouping.n_modes() != 4) {
    throw std::invalid_argument("equivalent_construction requires the four-mode state");
  }
  const std::string label = grouping.label();
  if (label != "14-23" && label != "13-24" && label != "23-14" && label != "24-13") {
    throw std::invalid_argument("equivalent_construction supports groupings 14-23 and 13-24, got " +
                                label);
  }
  ConstructionVariant out = match_local_epr(spec, grouping);
  out.circuit = collective_circuit(spec, grouping);
  return out;
}

}  // namespace cvbound
