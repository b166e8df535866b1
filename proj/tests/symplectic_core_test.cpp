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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cvbound/gaussian_state.hpp"

using namespace cvbound;

namespace {

// |eigenvalues| of Omega V come in pairs +-i nu.
std::vector<double> oracle_symplectic(const Matrix& cov) {
  const auto n = static_cast<std::size_t>(cov.rows() / 2);
  Eigen::EigenSolver<Matrix> es(symplectic_form(n) * cov);
  std::vector<double> mags;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    mags.push_back(std::abs(es.eigenvalues()(k)));
  }
  std::sort(mags.begin(), mags.end());
  std::vector<double> out;
  for (std::size_t k = 0; k < mags.size(); k += 2) out.push_back(0.5 * (mags[k] + mags[k + 1]));
  return out;
}

SymplecticMap random_passive(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_int_distribution<std::size_t> mode(0, n - 1);
  SymplecticMap s = SymplecticMap::from_matrix(Matrix::Identity(2 * n, 2 * n));
  for (int k = 0; k < 12; ++k) {
    const std::size_t i = mode(rng);
    std::size_t j = mode(rng);
    if (i == j) j = (i + 1) % n;
    s = beamsplitter(i, j, angle(rng), n) * phase_rotation(i, angle(rng), n) * s;
  }
  return s;
}

GaussianState random_state(std::size_t pairs, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> squeeze(0.0, 1.5);
  std::normal_distribution<double> gauss;
  GaussianState st = epr_pair(squeeze(rng));
  for (std::size_t k = 1; k < pairs; ++k) st = tensor(st, epr_pair(squeeze(rng)));
  st = apply_symplectic(st, random_passive(2 * pairs, rng));
  Vector u(4 * pairs);
  for (Eigen::Index k = 0; k < u.size(); ++k) u(k) = gauss(rng);
  return add_classical_noise(st, NoisePattern::make(u, 0.3));
}

}  // namespace

TEST(GaussianState, VacuumIsMinimumUncertainty) {
  const GaussianState v = vacuum_state(3);
  EXPECT_EQ(v.n_modes(), 3u);
  for (double nu : symplectic_eigenvalues(v.cov())) EXPECT_NEAR(nu, 0.5, 1e-14);
  EXPECT_TRUE(v.mean().isZero());
}

TEST(GaussianState, EprCorrelations) {
  for (double r : {0.0, 0.3, 1.0, 2.5}) {
    const GaussianState e = epr_pair(r);
    EXPECT_NEAR(e.cov()(0, 0), std::cosh(2 * r) / 2, 1e-12);
    EXPECT_NEAR(e.cov()(0, 2), -std::sinh(2 * r) / 2, 1e-12);
    EXPECT_NEAR(e.cov()(1, 3), std::sinh(2 * r) / 2, 1e-12);
    Vector xs = quadrature_vector(2, 0, Quadrature::x) + quadrature_vector(2, 1, Quadrature::x);
    Vector pd = quadrature_vector(2, 0, Quadrature::p) - quadrature_vector(2, 1, Quadrature::p);
    EXPECT_NEAR(quad_variance(e, xs), std::exp(-2 * r), 1e-10);
    EXPECT_NEAR(quad_variance(e, pd), std::exp(-2 * r), 1e-10);
    for (double nu : symplectic_eigenvalues(e.cov())) EXPECT_NEAR(nu, 0.5, 1e-10);
  }
}

TEST(GaussianState, EprRangeErrors) {
  EXPECT_THROW(epr_pair(-0.1), std::invalid_argument);
  EXPECT_THROW(epr_pair(20.5), std::out_of_range);
  EXPECT_NO_THROW(epr_pair(20.0));
}

TEST(GaussianState, RejectsAsymmetricCovariance) {
  Matrix cov = 0.5 * Matrix::Identity(4, 4);
  cov(0, 1) = 0.1;
  try {
    GaussianState::from_moments(Vector::Zero(4), cov);
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("symmetry"), std::string::npos);
  }
}

TEST(GaussianState, RejectsUnphysicalCovariance) {
  EXPECT_THROW(GaussianState::from_moments(Vector::Zero(2), 0.1 * Matrix::Identity(2, 2)),
               std::invalid_argument);
  const auto breaches = moment_breaches(Vector::Zero(2), 0.1 * Matrix::Identity(2, 2));
  ASSERT_EQ(breaches.size(), 1u);
  EXPECT_EQ(breaches[0].rfind("physicality", 0), 0u);
}

TEST(GaussianState, RejectsBadDimensions) {
  EXPECT_THROW(GaussianState::from_moments(Vector::Zero(3), Matrix::Identity(3, 3)),
               std::invalid_argument);
  EXPECT_THROW(GaussianState::from_moments(Vector::Zero(2), Matrix::Identity(4, 4)),
               std::invalid_argument);
}

TEST(SymplecticEigenvalues, MatchEigenSolverOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const GaussianState st = random_state(1 + trial % 3, rng);
    const auto got = symplectic_eigenvalues(st.cov());
    const auto want = oracle_symplectic(st.cov());
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-9);
  }
}

TEST(SymplecticEigenvalues, InvariantUnderSymplecticMaps) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const GaussianState st = random_state(2, rng);
    const GaussianState moved = apply_symplectic(st, random_passive(4, rng));
    const auto a = symplectic_eigenvalues(st.cov());
    const auto b = symplectic_eigenvalues(moved.cov());
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-9);
  }
}

TEST(SymplecticEigenvalues, ThermalState) {
  Matrix cov = Matrix::Zero(4, 4);
  cov.diagonal() << 1.5, 1.5, 0.7, 0.7;
  const auto nu = symplectic_eigenvalues(cov);
  EXPECT_NEAR(nu[0], 0.7, 1e-12);
  EXPECT_NEAR(nu[1], 1.5, 1e-12);
}

TEST(SymplecticEigenvalues, RejectsNonPositiveMatrix) {
  Matrix cov = Matrix::Identity(2, 2);
  cov(1, 1) = -1.0;
  EXPECT_THROW(symplectic_eigenvalues(cov), std::exception);
}

TEST(SymplecticMap, RejectsNonSymplectic) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 0) = 2.0;
  EXPECT_THROW(SymplecticMap::from_matrix(m), std::invalid_argument);
}

TEST(SymplecticMap, CompositionAppliesRightFactorFirst) {
  const SymplecticMap a = phase_rotation(0, 0.3, 2);
  const SymplecticMap b = beamsplitter(0, 1, 0.7, 2);
  EXPECT_TRUE((a * b).matrix().isApprox(a.matrix() * b.matrix(), 1e-14));
}

TEST(SymplecticMap, BalancedBeamsplitterOutputs) {
  const Matrix s = beamsplitter(0, 1, std::numbers::pi / 4, 2).matrix();
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(s(0, 0), h, 1e-15);
  EXPECT_NEAR(s(0, 2), h, 1e-15);
  EXPECT_NEAR(s(2, 0), -h, 1e-15);
  EXPECT_NEAR(s(2, 2), h, 1e-15);
}

TEST(SymplecticMap, PassiveMapOfOrthogonal) {
  Matrix u(2, 2);
  u << std::cos(0.4), std::sin(0.4), -std::sin(0.4), std::cos(0.4);
  const SymplecticMap s = passive_map(u);
  const GaussianState v = apply_symplectic(vacuum_state(2), s);
  EXPECT_TRUE(v.cov().isApprox(0.5 * Matrix::Identity(4, 4), 1e-12));
  EXPECT_TRUE(s.matrix().isApprox(beamsplitter(0, 1, 0.4, 2).matrix(), 1e-14));
  EXPECT_THROW(passive_map(2.0 * u), std::invalid_argument);
}

TEST(GaussianState, TensorAndPartialTrace) {
  const GaussianState t = tensor(epr_pair(0.4), vacuum_state(1));
  EXPECT_EQ(t.n_modes(), 3u);
  const GaussianState one = partial_trace(t, {0});
  EXPECT_NEAR(one.cov()(0, 0), std::cosh(0.8) / 2, 1e-12);
  EXPECT_NEAR(one.cov()(1, 1), std::cosh(0.8) / 2, 1e-12);
  const GaussianState swapped = partial_trace(t, {1, 0});
  EXPECT_NEAR(swapped.cov()(0, 2), t.cov()(2, 0), 1e-15);
  EXPECT_THROW(partial_trace(t, {}), std::invalid_argument);
  EXPECT_THROW(partial_trace(t, {0, 0}), std::invalid_argument);
}

TEST(GaussianState, ClassicalNoiseAddsRankOne) {
  Vector u(4);
  u << 1, 0, 1, 0;
  const GaussianState e = epr_pair(0.5);
  const GaussianState noisy = add_classical_noise(e, NoisePattern::make(u, 0.7));
  EXPECT_TRUE((noisy.cov() - e.cov()).isApprox(0.49 * u * u.transpose(), 1e-14));
  EXPECT_THROW(NoisePattern::make(u, -1.0), std::invalid_argument);
}

TEST(GaussianState, NoiseNeverLowersSymplecticSpectrum) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const GaussianState st = random_state(2, rng);
    Vector u = Vector::Zero(8);
    u(trial % 8) = 1.0;
    const auto before = symplectic_eigenvalues(st.cov());
    const auto after =
        symplectic_eigenvalues(add_classical_noise(st, NoisePattern::make(u, 0.4)).cov());
    for (std::size_t k = 0; k < before.size(); ++k) EXPECT_GE(after[k], before[k] - 1e-10);
  }
}

TEST(GaussianState, PartialTransposeOfEpr) {
  for (double r : {0.2, 1.0, 3.0}) {
    const Matrix pt = partial_transpose(epr_pair(r), {1});
    EXPECT_NEAR(min_symplectic_eigenvalue(pt), std::exp(-2 * r) / 2, 1e-10);
  }
  EXPECT_THROW(partial_transpose(epr_pair(1), {0, 1}), std::invalid_argument);
}

TEST(Sampler, SeedReproducibility) {
  const GaussianState e = tensor(epr_pair(0.7), vacuum_state(1));
  const SampleMoments a = sample_oracle(e, 5000, 42);
  const SampleMoments b = sample_oracle(e, 5000, 42);
  const SampleMoments c = sample_oracle(e, 5000, 43);
  EXPECT_EQ(a.cov, b.cov);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_NE(a.cov, c.cov);
}

TEST(Sampler, MomentsWithinStandardErrors) {
  const GaussianState e = epr_pair(0.8);
  const std::size_t n = 200000;
  const SampleMoments s = sample_oracle(e, n, 9);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      const double v = e.cov()(i, j);
      const double se = std::sqrt((e.cov()(i, i) * e.cov()(j, j) + v * v) / (n - 1.0));
      EXPECT_LE(std::abs(s.cov(i, j) - v), 5 * se) << i << "," << j;
    }
  }
}

TEST(Sampler, HandlesDegenerateCovariance) {
  // Positive semidefinite but singular: perfectly correlated classical noise.
  Vector u(4);
  u << 1, 0, 1, 0;
  const GaussianState st = add_classical_noise(vacuum_state(2), NoisePattern::make(u, 1.0));
  GaussianSampler sampler(st, 1);
  Vector x;
  sampler.draw(x);
  EXPECT_EQ(x.size(), 4);
}
