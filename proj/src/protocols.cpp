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

#include "cvbound/protocols.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cvbound/separability.hpp"

namespace cvbound {

MeasurementSpec MeasurementSpec::homodyne(std::size_t mode, Quadrature q) {
  return MeasurementSpec{q == Quadrature::x ? Kind::homodyne_x : Kind::homodyne_p, {mode}};
}

MeasurementSpec MeasurementSpec::bell(std::size_t i, std::size_t j) {
  if (i == j) {
    throw std::invalid_argument("a Bell measurement needs two distinct modes");
  }
  return MeasurementSpec{Kind::bell, {i, j}};
}

namespace {

void require_mode(std::size_t mode, std::size_t n_modes, const char* what) {
  if (mode >= n_modes) {
    throw std::invalid_argument(std::string(what) + ": mode index out of range");
  }
}

ModeSet all_but(std::size_t n_modes, const ModeSet& removed) {
  ModeSet keep;
  for (std::size_t m = 0; m < n_modes; ++m) {
    if (std::find(removed.begin(), removed.end(), m) == removed.end()) keep.push_back(m);
  }
  return keep;
}

// Outcome-averaged moments of the register after feeding the Bell outcomes
// of (i, j) forward; modes i and j are still present.
GaussianState feed_forward(const GaussianState& state, std::size_t i, std::size_t j,
                           const Feedforward& ff) {
  const auto n = static_cast<Eigen::Index>(state.n_modes());
  const auto ii = static_cast<Eigen::Index>(i);
  const auto jj = static_cast<Eigen::Index>(j);
  const auto t = static_cast<Eigen::Index>(ff.target);
  Matrix l = Matrix::Identity(2 * n, 2 * n);
  l(2 * t, 2 * ii) += ff.gain_x;
  l(2 * t, 2 * jj) += ff.gain_x;
  l(2 * t + 1, 2 * ii + 1) += ff.gain_p;
  l(2 * t + 1, 2 * jj + 1) -= ff.gain_p;
  Matrix cov = l * state.cov() * l.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  return GaussianState::from_trusted_moments(l * state.mean(), std::move(cov));
}

}  // namespace

GaussianState homodyne_condition(const GaussianState& state, std::size_t mode, Quadrature quad) {
  const auto n = state.n_modes();
  require_mode(mode, n, "homodyne_condition");
  if (n < 2) {
    throw std::invalid_argument("homodyne_condition needs at least one unmeasured mode");
  }
  const auto measured = static_cast<Eigen::Index>(2 * mode + (quad == Quadrature::x ? 0 : 1));
  std::vector<Eigen::Index> kept;
  for (Eigen::Index a = 0; a < static_cast<Eigen::Index>(2 * n); ++a) {
    if (a / 2 != static_cast<Eigen::Index>(mode)) kept.push_back(a);
  }
  const auto k = static_cast<Eigen::Index>(kept.size());
  const Matrix& v = state.cov();
  Matrix a_block(k, k);
  Vector b(k);
  Vector mean(k);
  for (Eigen::Index r = 0; r < k; ++r) {
    mean(r) = state.mean()(kept[r]);
    b(r) = v(kept[r], measured);
    for (Eigen::Index c = 0; c < k; ++c) a_block(r, c) = v(kept[r], kept[c]);
  }
  const double c = v(measured, measured);
  if (c > kPseudoInverseCutoff) {
    a_block.noalias() -= (b * b.transpose()) / c;
    a_block = 0.5 * (a_block + a_block.transpose()).eval();
  }
  return GaussianState::from_trusted_moments(std::move(mean), std::move(a_block));
}

GaussianState bell_measure(const GaussianState& state, std::size_t i, std::size_t j,
                           const std::optional<Feedforward>& ff) {
  const auto n = state.n_modes();
  require_mode(i, n, "bell_measure");
  require_mode(j, n, "bell_measure");
  if (i == j) {
    throw std::invalid_argument("bell_measure requires two distinct modes");
  }
  if (n < 3) {
    throw std::invalid_argument("bell_measure needs at least one unmeasured mode");
  }
  if (ff) {
    require_mode(ff->target, n, "bell_measure feedforward");
    if (ff->target == i || ff->target == j) {
      throw std::invalid_argument("feedforward target must not be a measured mode");
    }
    return partial_trace(feed_forward(state, i, j, *ff), all_but(n, {i, j}));
  }
  const GaussianState mixed =
      apply_symplectic(state, beamsplitter(i, j, std::numbers::pi / 4.0, n));
  const GaussianState after_x = homodyne_condition(mixed, i, Quadrature::x);
  return homodyne_condition(after_x, j > i ? j - 1 : j, Quadrature::p);
}

GaussianState apply_measurement(const GaussianState& state, const MeasurementSpec& spec) {
  switch (spec.kind) {
    case MeasurementSpec::Kind::homodyne_x:
    case MeasurementSpec::Kind::homodyne_p:
      if (spec.modes.size() != 1) {
        throw std::invalid_argument("homodyne measurement acts on exactly one mode");
      }
      return homodyne_condition(state, spec.modes[0],
                                spec.kind == MeasurementSpec::Kind::homodyne_x ? Quadrature::x
                                                                               : Quadrature::p);
    case MeasurementSpec::Kind::bell:
      if (spec.modes.size() != 2 || spec.modes[0] == spec.modes[1]) {
        throw std::invalid_argument("Bell measurement acts on exactly two distinct modes");
      }
      return bell_measure(state, spec.modes[0], spec.modes[1]);
  }
  throw std::invalid_argument("unknown measurement kind");
}

namespace {

void fill_witnesses(ProtocolReport& report, int sign) {
  const auto& st = report.conditioned_state;
  const double s = static_cast<double>(sign);
  report.duan_sign = sign;
  report.witness_sum_x = quad_variance(
      st, quadrature_vector(2, 0, Quadrature::x) + quadrature_vector(2, 1, Quadrature::x, s));
  report.witness_diff_p = quad_variance(
      st, quadrature_vector(2, 0, Quadrature::p) + quadrature_vector(2, 1, Quadrature::p, -s));
  report.duan = report.witness_sum_x + report.witness_diff_p;
  report.duan_other_sign = duan_value(st, 0, 1, -sign);
  report.entangled = report.duan < 2.0 - kVerdictTol;
}

std::optional<Feedforward> stabilizer_feedforward(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  if (i == 0 && j == 3) return Feedforward{1, 1.0, -1.0};
  if (i == 1 && j == 2) return Feedforward{0, 1.0, -1.0};
  if (i == 0 && j == 1) return Feedforward{2, 1.0, 1.0};
  if (i == 2 && j == 3) return Feedforward{0, 1.0, 1.0};
  return std::nullopt;
}

}  // namespace

ProtocolReport unlock(const BoundStateSpec& spec, ModePair measured_pair) {
  spec.validate();
  if (spec.n_pairs != 2) {
    throw std::invalid_argument("unlock acts on the four-mode state");
  }
  auto [i, j] = measured_pair;
  if (i >= 4 || j >= 4 || i == j) {
    throw std::invalid_argument("unlock needs two distinct modes among 1..4");
  }
  if (i > j) std::swap(i, j);
  const GaussianState state = smolin_cv_four(spec);
  ProtocolReport report;
  report.surviving_modes = all_but(4, {i, j});
  for (auto m : report.surviving_modes) report.survivor_labels.push_back(std::to_string(m + 1));
  report.params = {{"r", spec.r},
                   {"sigma_x", spec.sigma_x},
                   {"sigma_p", spec.sigma_p},
                   {"measured_i", static_cast<double>(i + 1)},
                   {"measured_j", static_cast<double>(j + 1)}};

  if (const auto ff = stabilizer_feedforward(i, j)) {
    report.feedforward = {*ff};
    report.conditioned_state = bell_measure(state, i, j, ff);
    fill_witnesses(report, 1);
    return report;
  }

  double best = std::numeric_limits<double>::infinity();
  for (auto target : report.surviving_modes) {
    for (double gx : {1.0, -1.0}) {
      for (double gp : {1.0, -1.0}) {
        const Feedforward ff{target, gx, gp};
        const GaussianState out = bell_measure(state, i, j, ff);
        for (int sign : {1, -1}) {
          const double d = duan_value(out, 0, 1, sign);
          if (d < best) {
            best = d;
            report.feedforward = {ff};
            report.conditioned_state = out;
            report.duan_sign = sign;
          }
        }
      }
    }
  }
  fill_witnesses(report, report.duan_sign);
  return report;
}

std::pair<Vector, Vector> superactivation_witness_vectors() {
  // Modes 0..3 are copy one, 4..7 copy two.
  Vector wx = Vector::Zero(16);
  Vector wp = Vector::Zero(16);
  for (std::size_t m = 0; m < 8; ++m) {
    wx(static_cast<Eigen::Index>(2 * m)) = 1.0;
    wp(static_cast<Eigen::Index>(2 * m + 1)) = (m % 2 == 0) ? 1.0 : -1.0;
  }
  return {wx, wp};
}

ProtocolReport superactivate(const BoundStateSpec& spec) {
  spec.validate();
  if (spec.n_pairs != 2) {
    throw std::invalid_argument("superactivate acts on two copies of the four-mode state");
  }
  const GaussianState copy = smolin_cv_four(spec);
  GaussianState state = tensor(copy, copy);
  constexpr std::size_t kMode4 = 3;
  const std::array<ModePair, 3> bells{{{0, 5}, {1, 6}, {2, 7}}};
  const std::array<double, 3> gain_p{-1.0, 1.0, -1.0};
  ProtocolReport report;
  for (std::size_t k = 0; k < bells.size(); ++k) {
    const Feedforward ff{kMode4, 1.0, gain_p[k]};
    report.feedforward.push_back(ff);
    state = feed_forward(state, bells[k].first, bells[k].second, ff);
  }
  report.surviving_modes = {kMode4, 4};
  report.survivor_labels = {"4", "1'"};
  report.conditioned_state = partial_trace(state, report.surviving_modes);
  report.params = {{"r", spec.r}, {"sigma_x", spec.sigma_x}, {"sigma_p", spec.sigma_p}};
  fill_witnesses(report, 1);
  return report;
}

}  // namespace cvbound
