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

#include <cmath>

#include "cvbound/stabilizer.hpp"
#include "cvbound/state_factory.hpp"

using namespace cvbound;

namespace {

// Closed-form covariance written out entry by entry.
Matrix four_mode_closed_form(double r, double sx, double sp) {
  const double c = std::cosh(2 * r) / 2;
  const double s = std::sinh(2 * r) / 2;
  Matrix v = c * Matrix::Identity(8, 8);
  for (int pair : {0, 4}) {
    v(pair, pair + 2) = v(pair + 2, pair) = -s;
    v(pair + 1, pair + 3) = v(pair + 3, pair + 1) = s;
  }
  const double ux[4] = {1, 1, -1, -1};
  const double wp[4] = {-1, 1, 1, -1};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      v(2 * a, 2 * b) += sx * sx * ux[a] * ux[b];
      v(2 * a + 1, 2 * b + 1) += sp * sp * wp[a] * wp[b];
    }
  }
  return v;
}

}  // namespace

TEST(StateFactory, FourModeMatchesClosedForm) {
  for (double r : {0.0, 0.5, 1.0, 3.0}) {
    for (double sx : {0.0, 0.4, 2.0}) {
      const double sp = 1.5 * sx + 0.1;
      const GaussianState st = smolin_cv_four({2, r, sx, sp});
      EXPECT_LE((st.cov() - four_mode_closed_form(r, sx, sp)).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_TRUE(st.mean().isZero());
    }
  }
}

TEST(StateFactory, ChainReducesToFourMode) {
  const BoundStateSpec spec{2, 0.8, 0.6, 1.1};
  EXPECT_LE((smolin_cv_2n(spec).cov() - smolin_cv_four(spec).cov()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(StateFactory, ChainNullifierVariances) {
  for (std::size_t n : {2u, 3u, 4u}) {
    for (double r : {0.5, 1.0, 2.0}) {
      for (double sigma : {0.0, 1.0, 5.0}) {
        const GaussianState st = smolin_cv_2n({n, r, sigma, sigma});
        ASSERT_EQ(st.n_modes(), 2 * n);
        for (const auto& h : bound_state_nullifiers(2 * n)) {
          EXPECT_NEAR(nullifier_variance(st, h), static_cast<double>(n) * std::exp(-2 * r), 1e-10);
        }
      }
    }
  }
}

TEST(StateFactory, StatesArePhysical) {
  for (double r : {0.0, 0.5, 2.0, 4.0}) {
    for (double sigma : {0.0, 1.0, 10.0}) {
      const GaussianState st = smolin_cv_2n({3, r, sigma, sigma});
      EXPECT_GE(min_symplectic_eigenvalue(st.cov()), 0.5 - kPhysicalityTol);
    }
  }
}

TEST(StateFactory, SpecValidation) {
  EXPECT_THROW(smolin_cv_four({2, -1.0, 1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(smolin_cv_four({2, 21.0, 1.0, 1.0}), std::out_of_range);
  EXPECT_THROW(smolin_cv_four({2, 1.0, -1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(smolin_cv_four({3, 1.0, 1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(smolin_cv_2n({0, 1.0, 1.0, 1.0}), std::invalid_argument);
}

TEST(StateFactory, EprSourcesOrientation) {
  const GaussianState plain = epr_sources(2, {{0, 1}}, 0.5);
  const GaussianState mirrored = epr_sources(2, {{0, 1}}, 0.5, {true});
  EXPECT_LT(plain.cov()(0, 2), 0.0);
  EXPECT_GT(mirrored.cov()(0, 2), 0.0);
  EXPECT_THROW(epr_sources(4, {{0, 1}, {1, 2}}, 0.5), std::invalid_argument);
}

TEST(LocalMatching, CrossGroupingWindow) {
  const Partition g = Partition::parse("14-23", 4);
  for (double r : {0.25, 0.5, 1.0, 2.0}) {
    const double edge = std::sqrt(local_matching_sigma_sq(r));
    const auto inside = match_local_epr(BoundStateSpec::four_mode(r, edge * 1.01), g);
    const auto outside = match_local_epr(BoundStateSpec::four_mode(r, edge * 0.99), g);
    ASSERT_TRUE(inside.matched.has_value()) << r;
    EXPECT_FALSE(outside.matched.has_value()) << r;
    EXPECT_LT(outside.residual_min_eigenvalue, 0.0);
    EXPECT_NEAR(inside.matched->r, r, 0.0);
    EXPECT_LE((inside.matched_state->cov() - smolin_cv_four(BoundStateSpec::four_mode(r, edge * 1.01)).cov())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-10);
  }
}

TEST(LocalMatching, NaturalGroupingAlwaysFeasible) {
  const Partition g = Partition::parse("12-34", 4);
  for (double sigma : {0.0, 0.3, 3.0}) {
    const auto v = match_local_epr(BoundStateSpec::four_mode(1.0, sigma), g);
    ASSERT_TRUE(v.matched.has_value());
    EXPECT_NEAR(v.matched->sigma_x, sigma, 1e-9);
    EXPECT_NEAR(v.matched->sigma_p, sigma, 1e-9);
  }
}

TEST(LocalMatching, EntangledGroupingNeverFeasible) {
  const Partition g = Partition::parse("13-24", 4);
  for (double sigma : {0.0, 1.0, 10.0, 100.0}) {
    EXPECT_FALSE(match_local_epr(BoundStateSpec::four_mode(0.5, sigma), g).matched) << sigma;
  }
}

TEST(LocalMatching, UnequalDeviationsDecouple) {
  const Partition g = Partition::parse("14-23", 4);
  const double edge = std::sqrt(local_matching_sigma_sq(1.0));
  EXPECT_TRUE(match_local_epr({2, 1.0, edge * 1.1, edge * 2.0}, g).matched);
  EXPECT_FALSE(match_local_epr({2, 1.0, edge * 1.1, edge * 0.9}, g).matched);
}

TEST(CollectiveCircuit, ReproducesCovariance) {
  for (const char* label : {"14-23", "13-24"}) {
    for (double r : {0.3, 1.0, 2.0}) {
      for (double sigma : {0.0, 0.5, 4.0}) {
        const BoundStateSpec spec{2, r, sigma, 0.7 * sigma};
        const auto c = collective_circuit(spec, Partition::parse(label, 4));
        EXPECT_LE((c.state.cov() - smolin_cv_four(spec).cov()).cwiseAbs().maxCoeff(), 1e-10)
            << label << " r=" << r << " sigma=" << sigma;
      }
    }
  }
}

TEST(CollectiveCircuit, NoiseRouting) {
  const BoundStateSpec spec = BoundStateSpec::four_mode(1.0, 1.0);
  const auto a = collective_circuit(spec, Partition::parse("13-24", 4));
  EXPECT_TRUE(a.pairs[0].noiseless());
  EXPECT_NEAR(a.pairs[1].grng_sigma_x, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(a.pairs[1].grng_sigma_p, std::sqrt(2.0), 1e-12);
  const auto b = collective_circuit(spec, Partition::parse("14-23", 4));
  EXPECT_FALSE(b.pairs[0].noiseless());
  EXPECT_FALSE(b.pairs[1].noiseless());
  EXPECT_NEAR(b.pairs[0].grng_sigma_x, 0.0, 1e-12);
  EXPECT_NEAR(b.pairs[0].grng_sigma_p, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(b.pairs[1].grng_sigma_x, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(b.pairs[1].grng_sigma_p, 0.0, 1e-12);
}

TEST(EquivalentConstruction, GroupingRestrictions) {
  const BoundStateSpec spec = BoundStateSpec::four_mode(1.0, 1.2);
  EXPECT_THROW(equivalent_construction(spec, Partition::parse("12-34", 4)), std::invalid_argument);
  const auto v = equivalent_construction(spec, Partition::parse("14-23", 4));
  ASSERT_TRUE(v.circuit.has_value());
  EXPECT_TRUE(v.matched.has_value());
  const auto w = equivalent_construction(BoundStateSpec::four_mode(1.0, 0.5),
                                         Partition::parse("14-23", 4));
  EXPECT_FALSE(w.matched.has_value());
  EXPECT_TRUE(w.circuit.has_value());
  EXPECT_NE(equivalent_construction(spec, Partition::parse("13-24", 4)).noiseless_sectors(), "");
}
