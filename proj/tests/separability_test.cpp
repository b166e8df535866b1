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

#include "cvbound/separability.hpp"

using namespace cvbound;

namespace {

GaussianState four(double r, double sigma) {
  return smolin_cv_four(BoundStateSpec::four_mode(r, sigma));
}

const Bipartition& cut(const char* label) {
  static const Bipartition a = Bipartition::parse("12-34", 4);
  static const Bipartition b = Bipartition::parse("14-23", 4);
  static const Bipartition c = Bipartition::parse("13-24", 4);
  const std::string l(label);
  return l == "12-34" ? a : l == "14-23" ? b : c;
}

}  // namespace

TEST(Bipartition, ParseAndComplement) {
  const Bipartition bp = Bipartition::parse("14-23", 4);
  EXPECT_EQ(bp.side_a(), (ModeSet{0, 3}));
  EXPECT_EQ(bp.side_b(), (ModeSet{1, 2}));
  EXPECT_EQ(bp.label(), "14-23");
  EXPECT_EQ(Bipartition::make({2, 0}, 4).label(), "13-24");
  EXPECT_THROW(Bipartition::parse("1-2-34", 4), std::invalid_argument);
  EXPECT_THROW(Bipartition::make({0, 1, 2, 3}, 4), std::invalid_argument);
}

TEST(Ppt, EntangledCutIndependentOfNoise) {
  for (double r : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    for (double sigma : {0.0, 0.5, 1.0, 10.0}) {
      EXPECT_NEAR(ppt_min_symplectic(four(r, sigma), cut("13-24")), std::exp(-2 * r) / 2, 1e-9)
          << r << " " << sigma;
    }
  }
  EXPECT_NEAR(ppt_min_symplectic(four(1, 1), cut("13-24")), 0.0676676416183, 1e-12);
}

TEST(Ppt, NaturalCutAlwaysPositive) {
  for (double r : {0.0, 0.5, 2.0, 4.0}) {
    for (double sigma : {0.0, 1.0, 10.0}) {
      EXPECT_GE(ppt_min_symplectic(four(r, sigma), cut("12-34")), 0.5 - kPhysicalityTol);
    }
  }
}

TEST(Ppt, CrossCutReferenceValue) {
  // Independent reference computed with numpy on the closed-form covariance.
  EXPECT_NEAR(ppt_min_symplectic(four(1, 1), cut("14-23")), 0.5246422363815249, 1e-10);
}

TEST(Ppt, VacuumNoiseIsClassical) {
  for (const char* l : {"12-34", "14-23", "13-24"}) {
    EXPECT_GE(ppt_min_symplectic(four(0, 1.3), cut(l)), 0.5 - kPhysicalityTol);
  }
}

TEST(Ppt, ThresholdMatchesLocalConstructionEdge) {
  for (double r : {0.25, 0.5, 1.0, 2.0}) {
    const auto s = ppt_threshold_search(r, cut("14-23"));
    ASSERT_TRUE(s.has_value()) << r;
    EXPECT_NEAR(*s, std::sqrt(local_matching_sigma_sq(r)), 2e-6) << r;
  }
  EXPECT_FALSE(ppt_threshold_search(1.0, cut("13-24")).has_value());
  EXPECT_FALSE(ppt_threshold_search(1.0, cut("12-34")).has_value());
  EXPECT_THROW(ppt_threshold_search(1.0, cut("14-23"), 10.0, 0.0), std::invalid_argument);
}

TEST(Ppt, ThresholdDiffersFromDuanBoundary) {
  const auto s = ppt_threshold_search(1.0, cut("14-23"));
  ASSERT_TRUE(s.has_value());
  EXPECT_NEAR(std::sqrt(duan_threshold_sigma_sq(1.0)), 0.6575198539828996, 1e-12);
  EXPECT_GT(*s - std::sqrt(duan_threshold_sigma_sq(1.0)), 0.2);
}

TEST(LogNegativity, EprValue) {
  for (double r : {0.2, 1.0, 2.0}) {
    const Bipartition bp = Bipartition::make({0}, 2);
    EXPECT_NEAR(log_negativity(epr_pair(r), bp), 2 * r / std::log(2.0), 1e-9);
  }
}

TEST(LogNegativity, NonIncreasingInNoise) {
  double prev = std::numeric_limits<double>::infinity();
  for (double sigma = 0.0; sigma <= 2.0; sigma += 0.05) {
    const double e = log_negativity(four(1.0, sigma), cut("14-23"));
    EXPECT_LE(e, prev + 1e-12) << sigma;
    prev = e;
  }
  EXPECT_EQ(log_negativity(four(1.0, 1.0), cut("12-34")), 0.0);
}

TEST(LocalNoise, NeverCreatesEntanglement) {
  const GaussianState st = four(0.8, 0.7);
  for (std::size_t mode = 0; mode < 4; ++mode) {
    Vector u = Vector::Zero(8);
    u(2 * mode) = 1.0;
    u(2 * mode + 1) = 0.5;
    const GaussianState noisy = add_classical_noise(st, NoisePattern::make(u, 0.6));
    for (const char* l : {"12-34", "14-23", "13-24"}) {
      EXPECT_GE(ppt_min_symplectic(noisy, cut(l)), ppt_min_symplectic(st, cut(l)) - 1e-10);
    }
  }
}

TEST(Duan, EprAndNoiseBoundary) {
  for (double r : {0.5, 1.0, 2.0}) {
    EXPECT_NEAR(duan_value(epr_pair(r), 0, 1, 1), 2 * std::exp(-2 * r), 1e-12);
    EXPECT_NEAR(epr_with_position_noise_duan(r, duan_threshold_sigma_sq(r)), 2.0, 1e-12);
    EXPECT_LT(epr_with_position_noise_duan(r, 0.9 * duan_threshold_sigma_sq(r)), 2.0);
  }
  EXPECT_NEAR(duan_threshold_sigma_sq(1.0), 0.432332358382, 1e-11);
  EXPECT_THROW(duan_value(epr_pair(1), 0, 0, 1), std::invalid_argument);
  EXPECT_THROW(duan_value(epr_pair(1), 0, 1, 2), std::invalid_argument);
}

TEST(Verdicts, FourModeCuts) {
  const BoundStateSpec spec = BoundStateSpec::four_mode(1.0, 1.0);
  const GaussianState st = smolin_cv_four(spec);
  const auto natural = ppt_verdict(st, cut("12-34"));
  EXPECT_EQ(natural.verdict, Verdict::inconclusive);
  EXPECT_EQ(construction_verdict(spec, cut("12-34")).verdict, Verdict::separable);
  EXPECT_EQ(construction_verdict(spec, cut("14-23")).verdict, Verdict::separable);
  EXPECT_EQ(construction_verdict(BoundStateSpec::four_mode(1.0, 0.5), cut("14-23")).verdict,
            Verdict::inconclusive);
  EXPECT_EQ(ppt_verdict(st, cut("13-24")).verdict, Verdict::entangled);
  EXPECT_EQ(construction_verdict(spec, cut("13-24")).verdict, Verdict::inconclusive);
  EXPECT_EQ(combined_verdict({ppt_verdict(st, cut("13-24")), duan_verdict(st, cut("13-24"))}),
            Verdict::entangled);
  EXPECT_EQ(combined_verdict({natural, construction_verdict(spec, cut("12-34"))}),
            Verdict::separable);
}

TEST(Verdicts, TwoModePptIsSufficient) {
  const Bipartition bp = Bipartition::make({0}, 2);
  EXPECT_EQ(ppt_verdict(epr_pair(0.0), bp).verdict, Verdict::separable);
  EXPECT_EQ(ppt_verdict(epr_pair(0.3), bp).verdict, Verdict::entangled);
  EXPECT_EQ(duan_verdict(epr_pair(0.3), bp).verdict, Verdict::entangled);
  EXPECT_EQ(duan_verdict(epr_pair(0.0), bp).verdict, Verdict::inconclusive);
}

TEST(Verdicts, MismatchedCutThrows) {
  EXPECT_THROW(ppt_min_symplectic(epr_pair(1.0), cut("12-34")), std::invalid_argument);
}
