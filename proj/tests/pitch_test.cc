// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "test_util.h"
#include "voxrestore/disguise_spec.h"
#include "voxrestore/error.h"
#include "voxrestore/pitch.h"
#include "voxrestore/resample.h"

namespace voxrestore {
namespace {

using testing::Sawtooth;
using testing::Sine;
using testing::WhiteNoise;

F0Track MakeTrack(std::vector<double> f0) {
  F0Track t;
  for (double v : f0) t.voiced.push_back(v > 0.0);
  t.f0_hz = std::move(f0);
  return t;
}

TEST(EstimateF0, PureToneIsTrackedWithinTwoPercent) {
  const F0Track t = EstimateF0(Sine(200.0, 16000, 1.0));
  ASSERT_GT(t.num_voiced(), t.f0_hz.size() / 2);
  for (std::size_t i = 0; i < t.f0_hz.size(); ++i)
    if (t.voiced[i]) EXPECT_NEAR(t.f0_hz[i], 200.0, 4.0) << i;
}

TEST(EstimateF0, WhiteNoiseIsMostlyUnvoiced) {
  const F0Track t = EstimateF0(WhiteNoise(7, 16000, 16000));
  EXPECT_LE(t.num_voiced(), t.f0_hz.size() / 10);
}

TEST(EstimateF0, SawtoothHasNoOctaveErrors) {
  const F0Track t = EstimateF0(Sawtooth(120.0, 16000, 1.0));
  ASSERT_GT(t.num_voiced(), 0u);
  std::size_t good = 0;
  for (std::size_t i = 0; i < t.f0_hz.size(); ++i)
    if (t.voiced[i] && std::abs(t.f0_hz[i] - 120.0) <= 2.4) ++good;
  EXPECT_GE(good, static_cast<std::size_t>(std::ceil(0.95 * t.num_voiced())));
}

TEST(EstimateF0, TooShortInputThrows) {
  EXPECT_THROW(EstimateF0(Sine(200.0, 16000, 0.02)), Error);
}

TEST(EstimateF0, GainInvariant) {
  const AudioBuffer x = Sawtooth(150.0, 16000, 0.8);
  const F0Track a = EstimateF0(x);
  for (double g : {0.01, 0.37, 3.0}) {
    std::vector<double> s(x.samples().begin(), x.samples().end());
    for (double& v : s) v *= g;
    const F0Track b = EstimateF0(AudioBuffer(std::move(s), 16000));
    ASSERT_EQ(a.voiced, b.voiced) << g;
    for (std::size_t i = 0; i < a.f0_hz.size(); ++i)
      EXPECT_NEAR(a.f0_hz[i], b.f0_hz[i], 1e-6) << g << " frame " << i;
  }
}

TEST(MeanF0, AveragesVoicedFramesOnly) {
  EXPECT_DOUBLE_EQ(MeanF0(MakeTrack({200, 200, 200})), 200.0);
  EXPECT_DOUBLE_EQ(MeanF0(MakeTrack({100, 0, 300})), 200.0);
}

TEST(MeanF0, AllUnvoicedThrowsUnvoicedUtterance) {
  try {
    MeanF0(MakeTrack({0, 0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("unvoiced utterance"), std::string::npos);
  }
}

TEST(MeanF0, LiesWithinVoicedRange) {
  const F0Track t = EstimateF0(Sawtooth(180.0, 16000, 0.6));
  double lo = 1e9, hi = 0;
  for (std::size_t i = 0; i < t.f0_hz.size(); ++i)
    if (t.voiced[i]) lo = std::min(lo, t.f0_hz[i]), hi = std::max(hi, t.f0_hz[i]);
  const double m = MeanF0(t);
  EXPECT_GE(m, lo);
  EXPECT_LE(m, hi);
}

TEST(F0RatioAlpha, Examples) {
  EXPECT_NEAR(F0RatioAlpha(200, 400), 12.0, 1e-12);
  EXPECT_EQ(F0RatioAlpha(200, 200), 0.0);
  EXPECT_NEAR(F0RatioAlpha(200, 200 * std::pow(2.0, 5.0 / 12.0)), 5.0, 1e-9);
  EXPECT_THROW(F0RatioAlpha(0, 200), Error);
  EXPECT_THROW(F0RatioAlpha(200, -1), Error);
}

TEST(F0RatioAlpha, ResamplingLawOnSawtooth) {
  const AudioBuffer x = Sawtooth(130.0, 16000, 1.0);
  const double fx = MeanF0(EstimateF0(x));
  for (int a = -11; a <= 11; ++a) {
    const double s = SemitoneToScale(a);
    if (130.0 * s > kMaxF0Hz || 130.0 * s < kMinF0Hz) continue;
    const double fy = MeanF0(EstimateF0(Resample(x, s)));
    EXPECT_NEAR(F0RatioAlpha(fx, fy), a, 0.5) << a;
  }
}

TEST(F0RatioAlpha, OctaveResampleIsTwelve) {
  const AudioBuffer x = Sawtooth(110.0, 16000, 1.0);
  const double a = F0RatioAlpha(MeanF0(EstimateF0(x)), MeanF0(EstimateF0(Resample(x, 2.0))));
  EXPECT_NEAR(a, 12.0, 0.5);
}

}  // namespace
}  // namespace voxrestore
