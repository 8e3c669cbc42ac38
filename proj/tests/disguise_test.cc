// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <gtest/gtest.h>

#include "test_util.h"
#include "voxrestore/disguise.h"
#include "voxrestore/error.h"
#include "voxrestore/pitch.h"
#include "voxrestore/restore.h"
#include "voxrestore/stft.h"
#include "voxrestore/warp.h"

namespace voxrestore {
namespace {

using testing::DominantFrequency;
using testing::kPi;
using testing::Sine;

TEST(DisguiseSpec, FormatsAndParses) {
  EXPECT_EQ(FormatSpec({DisguiseFamily::kPitchScaleFreq, 4}), "pitch-freq:4");
  EXPECT_EQ(FormatSpec({DisguiseFamily::kVtlnPower, -0.25}), "vtln-power:-0.25");
  EXPECT_EQ(FormatSpec({DisguiseFamily::kVtlnPiecewise, 1.2}), "vtln-piecewise:1.2");
  EXPECT_EQ(FormatSpec({DisguiseFamily::kVtlnBilinear, -0.0}), "vtln-bilinear:0");
  for (DisguiseFamily f : kAllFamilies) {
    const DisguiseSpec spec{f, IdentityParam(f)};
    EXPECT_EQ(ParseSpec(FormatSpec(spec)), spec);
    EXPECT_TRUE(spec.IsIdentity());
  }
  EXPECT_THROW(ParseSpec("pitch-freq"), Error);
  EXPECT_THROW(ParseSpec("warble:1"), Error);
  EXPECT_THROW(ParseSpec("pitch-freq:abc"), Error);
}

TEST(DisguiseSpec, RangesMatchTheFamilyTable) {
  EXPECT_NO_THROW((DisguiseSpec{DisguiseFamily::kPitchScaleTime, 12}.Validate()));
  EXPECT_NO_THROW((DisguiseSpec{DisguiseFamily::kPitchScaleFreq, -12}.Validate()));
  EXPECT_THROW((DisguiseSpec{DisguiseFamily::kPitchScaleTime, 12.5}.Validate()), Error);
  EXPECT_THROW((DisguiseSpec{DisguiseFamily::kVtlnPower, 0.6}.Validate()), Error);
  EXPECT_THROW((DisguiseSpec{DisguiseFamily::kVtlnBilinear, -0.31}.Validate()), Error);
  EXPECT_THROW((DisguiseSpec{DisguiseFamily::kVtlnQuadratic, 2.1}.Validate()), Error);
  EXPECT_THROW((DisguiseSpec{DisguiseFamily::kVtlnPiecewise, 0.4}.Validate()), Error);
  EXPECT_EQ(IdentityParam(DisguiseFamily::kVtlnPiecewise), 1.0);
  EXPECT_EQ(IdentityParam(DisguiseFamily::kVtlnQuadratic), 0.0);
}

TEST(Semitones, Examples) {
  EXPECT_DOUBLE_EQ(SemitoneToScale(12), 2.0);
  EXPECT_DOUBLE_EQ(SemitoneToScale(0), 1.0);
  EXPECT_DOUBLE_EQ(SemitoneToScale(-12), 0.5);
  EXPECT_DOUBLE_EQ(ScaleToSemitone(2.0), 12.0);
  EXPECT_DOUBLE_EQ(ScaleToSemitone(1.0), 0.0);
  EXPECT_NEAR(ScaleToSemitone(std::exp2(4.0 / 12.0)), 4.0, 1e-9);
  EXPECT_THROW(ScaleToSemitone(0.0), Error);
  EXPECT_THROW(ScaleToSemitone(-1.0), Error);
}

TEST(Semitones, RoundTripProperty) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-24, 24);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng);
    ASSERT_NEAR(ScaleToSemitone(SemitoneToScale(a)), a, 1e-9);
  }
}

TEST(Warp, FormulaExamples) {
  EXPECT_NEAR(BuildWarp({DisguiseFamily::kVtlnQuadratic, 1.0}).Map(kPi / 2), kPi / 2 + 0.25,
              1e-9);
  for (double a : {-0.3, -0.1, 0.2, 0.3})
    EXPECT_NEAR(BuildWarp({DisguiseFamily::kVtlnBilinear, a}).Map(kPi), kPi, 1e-12);
  EXPECT_NEAR(BuildWarp({DisguiseFamily::kVtlnPower, 0.5}).Map(kPi / 4), 0.125 * kPi, 1e-6);
  EXPECT_NEAR(BuildWarp({DisguiseFamily::kVtlnPiecewise, 1.2}).Map(kPi / 2), 0.6 * kPi, 1e-9);
  EXPECT_NEAR(BuildWarp({DisguiseFamily::kPitchScaleFreq, 12}).Map(kPi / 4), kPi / 2, 1e-9);
}

TEST(Warp, BilinearMatchesClosedForm) {
  // Allpass phase: w + 2 atan(a sin w / (1 - a cos w)).
  for (double a : {-0.3, 0.15}) {
    const WarpFunction w = BuildWarp({DisguiseFamily::kVtlnBilinear, a});
    for (double omega = 0.0; omega <= kPi; omega += 0.1) {
      const double expected = omega + 2 * std::atan2(a * std::sin(omega), 1 - a * std::cos(omega));
      EXPECT_NEAR(w.Map(omega), expected, 1e-6) << a << " " << omega;
    }
  }
}

TEST(Warp, IdentitySpecIsExactIdentity) {
  for (DisguiseFamily f : kAllFamilies) {
    if (f == DisguiseFamily::kPitchScaleTime) continue;
    const WarpFunction w = BuildWarp({f, IdentityParam(f)});
    EXPECT_TRUE(w.is_identity());
    for (double omega : {0.0, 0.123, 1.0, 2.5, kPi}) EXPECT_EQ(w.Map(omega), omega);
  }
}

TEST(Warp, VtlnWarpsArePinnedMonotoneAndInvertible) {
  for (DisguiseFamily f : kVtlnFamilies) {
    for (double a : DefaultGrid(f).values) {
      const WarpFunction w = BuildWarp({f, a});
      EXPECT_EQ(w.Map(0.0), 0.0);
      EXPECT_EQ(w.Map(kPi), kPi);
      EXPECT_TRUE(w.IsEndpointPinned());
      EXPECT_TRUE(w.IsStrictlyIncreasing());
      const WarpFunction inv = InvertSpec({f, a}).warp;
      for (int i = 0; i <= 1023; ++i) {
        const double omega = kPi * i / 1023.0;
        ASSERT_NEAR(inv.Map(w.Map(omega)), omega, 1e-6 * kPi) << FamilyName(f) << " " << a;
        ASSERT_NEAR(w.Map(inv.Map(omega)), omega, 1e-6 * kPi) << FamilyName(f) << " " << a;
      }
    }
  }
}

TEST(Warp, ClosedFormInverses) {
  const InverseTransform p = InvertSpec({DisguiseFamily::kPitchScaleFreq, 4});
  ASSERT_TRUE(p.closed_form);
  EXPECT_EQ(*p.closed_form, (DisguiseSpec{DisguiseFamily::kPitchScaleFreq, -4}));
  const InverseTransform b = InvertSpec({DisguiseFamily::kVtlnBilinear, 0.2});
  ASSERT_TRUE(b.closed_form);
  EXPECT_EQ(b.closed_form->param, -0.2);
  const WarpFunction fwd = BuildWarp({DisguiseFamily::kVtlnBilinear, 0.2});
  for (double omega = 0; omega <= kPi; omega += 0.01)
    EXPECT_NEAR(b.warp.Map(fwd.Map(omega)), omega, 1e-6 * kPi);
  EXPECT_FALSE(InvertSpec({DisguiseFamily::kVtlnPower, 0.3}).closed_form);
  EXPECT_TRUE(InvertSpec({DisguiseFamily::kVtlnPower, 0.0}).warp.is_identity());
}

TEST(Warp, PitchWarpLeavesTheBandAboveNyquist) {
  const WarpFunction w = BuildWarp({DisguiseFamily::kPitchScaleFreq, 5});
  EXPECT_GT(w.Map(kPi), kPi);
  EXPECT_FALSE(w.Inverse(kPi * 0.99 * SemitoneToScale(5) + 0.1).has_value());
}

Spectrogram DeltaSpectrum(std::size_t bin) {
  Spectrogram s = Stft(AudioBuffer(std::vector<double>(800, 0.0), 16000));
  s.magnitudes(0, bin) = 1.0;
  return s;
}

TEST(SpectralWarp, IdentityIsBitExact) {
  const Spectrogram in = Stft(testing::WhiteNoise(7, 4000, 16000));
  const Spectrogram out = ApplySpectralWarp(in, WarpFunction::Identity(), WarpDirection::kForward);
  EXPECT_EQ(out.magnitudes, in.magnitudes);
}

TEST(SpectralWarp, DeltaBinMovesToDoubleUnderOctave) {
  const WarpFunction octave = BuildWarp({DisguiseFamily::kPitchScaleFreq, 12});
  for (std::size_t k : {5u, 30u, 100u}) {
    const Spectrogram out = ApplySpectralWarp(DeltaSpectrum(k), octave, WarpDirection::kForward);
    const auto row = out.magnitudes.row(0);
    EXPECT_EQ(std::max_element(row.begin(), row.end()) - row.begin(),
              static_cast<long>(std::min<std::size_t>(2 * k, 256)));
  }
}

TEST(SpectralWarp, ForwardThenInverseRoundTrip) {
  // A smooth envelope (period ~300 bins). The power warp's slope vanishes at
  // w = 0, so detail much finer than this is not recoverable near DC.
  Spectrogram in = Stft(testing::Sawtooth(130.0, 16000, 0.3));
  for (std::size_t t = 0; t < in.num_frames(); ++t)
    for (std::size_t j = 0; j < in.num_bins(); ++j)
      in.magnitudes(t, j) = 1.0 + 0.5 * std::cos(0.02 * j + 0.3 * t);
  for (DisguiseFamily f : kVtlnFamilies) {
    for (double a : DefaultGrid(f).values) {
      const WarpFunction w = BuildWarp({f, a});
      const Spectrogram back = ApplySpectralWarp(
          ApplySpectralWarp(in, w, WarpDirection::kForward), w, WarpDirection::kInverse);
      double num = 0, den = 0;
      for (std::size_t t = 0; t < in.num_frames(); ++t)
        for (std::size_t j = 0; j < in.num_bins(); ++j) {
          const double d = back.magnitudes(t, j) - in.magnitudes(t, j);
          num += d * d;
          den += in.magnitudes(t, j) * in.magnitudes(t, j);
        }
      EXPECT_LE(std::sqrt(num / den), 1e-3) << FamilyName(f) << " " << a;
    }
  }
}

TEST(SpectralWarp, PitchRoundTripOnBinsThatStayInRange) {
  Spectrogram in = Stft(testing::Sawtooth(130.0, 16000, 0.3));
  for (std::size_t t = 0; t < in.num_frames(); ++t)
    for (std::size_t j = 0; j < in.num_bins(); ++j)
      in.magnitudes(t, j) = 1.0 + 0.5 * std::cos(0.05 * j + 0.3 * t);
  for (double a : {-7.0, 4.0}) {
    const WarpFunction w = BuildWarp({DisguiseFamily::kPitchScaleFreq, a});
    const Spectrogram back = ApplySpectralWarp(
        ApplySpectralWarp(in, w, WarpDirection::kForward), w, WarpDirection::kInverse);
    const double s = SemitoneToScale(a);
    const auto limit = static_cast<std::size_t>(256.0 * std::min(1.0, 1.0 / s));
    double num = 0, den = 0;
    for (std::size_t t = 0; t < in.num_frames(); ++t)
      for (std::size_t j = 0; j < limit; ++j) {
        const double d = back.magnitudes(t, j) - in.magnitudes(t, j);
        num += d * d;
        den += in.magnitudes(t, j) * in.magnitudes(t, j);
      }
    EXPECT_LE(std::sqrt(num / den), 1e-3) << a;
  }
}

TEST(SpectralWarp, OutOfRangeBinsReplicateTheLastValidBin) {
  Spectrogram in = DeltaSpectrum(0);
  for (std::size_t j = 0; j < in.num_bins(); ++j) in.magnitudes(0, j) = 1.0 + j;
  const Spectrogram out =
      ApplySpectralWarp(in, BuildWarp({DisguiseFamily::kPitchScaleFreq, -12}),
                        WarpDirection::kForward);
  // s = 0.5: output bins above 128 have no preimage below Nyquist.
  for (std::size_t j = 129; j < out.num_bins(); ++j)
    EXPECT_EQ(out.magnitudes(0, j), out.magnitudes(0, 128));
  EXPECT_NEAR(out.magnitudes(0, 128), in.magnitudes(0, 256), 1e-9);
}

TEST(Disguise, IdentityReproducesInput) {
  const AudioBuffer x = testing::Sawtooth(150.0, 16000, 0.8);
  for (DisguiseFamily f : kAllFamilies) {
    const AudioBuffer y = Disguise(x, {f, IdentityParam(f)});
    ASSERT_EQ(y.size(), x.size());
    EXPECT_LE(RelativeRmsError(x.samples(), y.samples(), 0, x.size()), 1e-3)
        << FamilyName(f);
    for (std::size_t i : {std::size_t{0}, std::size_t{1}, x.size() - 1})
      EXPECT_NEAR(y[i], x[i], 1e-3) << FamilyName(f) << " sample " << i;
  }
}

TEST(Disguise, PitchTimeOctaveDoublesToneAndHalvesDuration) {
  const AudioBuffer y = Disguise(Sine(200.0, 16000, 1.0), {DisguiseFamily::kPitchScaleTime, 12});
  EXPECT_NEAR(DominantFrequency(y), 400.0, 8.0);
  EXPECT_NEAR(static_cast<double>(y.size()), 8000.0, 240.0);
}

TEST(Disguise, PitchFreqMovesToneAndKeepsDuration) {
  const AudioBuffer x = Sine(300.0, 16000, 1.0);
  for (double a : {-7.0, 5.0}) {
    const AudioBuffer y = Disguise(x, {DisguiseFamily::kPitchScaleFreq, a});
    EXPECT_EQ(y.size(), x.size());
    EXPECT_NEAR(DominantFrequency(y), 300.0 * SemitoneToScale(a), 0.02 * 300.0 * SemitoneToScale(a));
  }
}

// Frequency of the strongest bin of the frame-averaged magnitude spectrum.
double SpectralPeakHz(const AudioBuffer& buf) {
  const Spectrogram s = Stft(buf);
  std::vector<double> mean(s.num_bins(), 0.0);
  for (std::size_t t = 0; t < s.num_frames(); ++t)
    for (std::size_t j = 0; j < s.num_bins(); ++j) mean[j] += s.magnitudes(t, j);
  const auto peak = std::max_element(mean.begin(), mean.end()) - mean.begin();
  return peak * static_cast<double>(buf.sample_rate()) / 512.0;
}

TEST(Disguise, QuadraticRelocatesFormantPeak) {
  // Noise through a resonance at 4 kHz (w = pi/2). Quadratic alpha = 2 maps
  // pi/2 to pi/2 + 2 (1/2 - 1/4) = pi/2 + 0.5 rad.
  const int sr = 16000;
  const AudioBuffer noise = testing::WhiteNoise(21, 2 * sr, sr, 0.3);
  std::vector<double> x(noise.samples().begin(), noise.samples().end());
  const double r = std::exp(-kPi * 100.0 / sr);
  const double a1 = -2 * r * std::cos(kPi / 2), a2 = r * r;
  double y1 = 0, y2 = 0;
  for (double& v : x) {
    const double y = (1 - r) * v - a1 * y1 - a2 * y2;
    y2 = y1;
    y1 = y;
    v = y;
  }
  const AudioBuffer vowel(x, sr);
  EXPECT_NEAR(SpectralPeakHz(vowel), 4000.0, 40.0);
  const double expected_hz = (kPi / 2 + 0.5) / kPi * sr / 2;
  const AudioBuffer y = Disguise(vowel, {DisguiseFamily::kVtlnQuadratic, 2.0});
  EXPECT_NEAR(SpectralPeakHz(y), expected_hz, 2 * sr / 512.0);
}

TEST(Disguise, PitchGroupLawOnTones) {
  const AudioBuffer x = Sine(220.0, 16000, 1.0);
  for (DisguiseFamily f : {DisguiseFamily::kPitchScaleFreq, DisguiseFamily::kPitchScaleTime}) {
    for (auto [a, b] : {std::pair{3.0, 4.0}, std::pair{-5.0, 2.0}, std::pair{6.0, -8.0}}) {
      const AudioBuffer y = Disguise(Disguise(x, {f, a}), {f, b});
      const double expected = 220.0 * SemitoneToScale(a + b);
      EXPECT_NEAR(DominantFrequency(y), expected, 0.02 * expected)
          << FamilyName(f) << " " << a << " " << b;
    }
  }
}

TEST(Disguise, OutOfRangeSpecIsRejected) {
  const AudioBuffer x = Sine(220.0, 16000, 0.3);
  EXPECT_THROW(Disguise(x, {DisguiseFamily::kVtlnPower, 0.6}), Error);
  EXPECT_THROW(Disguise(x, {DisguiseFamily::kPitchScaleFreq, 13}), Error);
}

}  // namespace
}  // namespace voxrestore
