// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/features.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "voxrestore/error.h"
#include "voxrestore/vad.h"

namespace voxrestore {
namespace {

constexpr double kEnergyFloor = 1e-30;

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

// kNumMelFilters x bins triangular weights, 0 Hz to Nyquist.
Matrix MelFilterbank(int sample_rate, std::size_t bins) {
  const double nyquist = sample_rate / 2.0;
  const double top = HzToMel(nyquist);
  std::vector<double> edges(kNumMelFilters + 2);
  for (std::size_t i = 0; i < edges.size(); ++i)
    edges[i] = MelToHz(top * static_cast<double>(i) / (kNumMelFilters + 1));
  Matrix fb(kNumMelFilters, bins);
  for (std::size_t m = 0; m < kNumMelFilters; ++m) {
    const double lo = edges[m], mid = edges[m + 1], hi = edges[m + 2];
    for (std::size_t k = 0; k < bins; ++k) {
      const double hz = nyquist * static_cast<double>(k) / static_cast<double>(bins - 1);
      const double w = std::min((hz - lo) / (mid - lo), (hi - hz) / (hi - mid));
      fb(m, k) = std::max(0.0, w);
    }
  }
  return fb;
}

Matrix DctMatrix() {
  Matrix dct(kNumCepstra, kNumMelFilters);
  const double n = static_cast<double>(kNumMelFilters);
  for (std::size_t k = 0; k < kNumCepstra; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
    for (std::size_t m = 0; m < kNumMelFilters; ++m)
      dct(k, m) = scale * std::cos(std::numbers::pi * k * (m + 0.5) / n);
  }
  return dct;
}

// Writes the regression deltas of columns [src, src + width) into
// [dst, dst + width).
void Deltas(Matrix* feats, std::size_t src, std::size_t dst, std::size_t width) {
  const auto frames = static_cast<long>(feats->rows());
  auto at = [&](long t, std::size_t c) {
    return (*feats)(static_cast<std::size_t>(std::clamp(t, 0L, frames - 1)), c);
  };
  for (long t = 0; t < frames; ++t) {
    for (std::size_t c = 0; c < width; ++c) {
      const double d = (at(t + 1, src + c) - at(t - 1, src + c)) +
                       2.0 * (at(t + 2, src + c) - at(t - 2, src + c));
      (*feats)(static_cast<std::size_t>(t), dst + c) = d / 10.0;
    }
  }
}

}  // namespace

FeatureMatrix MfccFromSpectrogram(const Spectrogram& spec, const std::vector<bool>& active) {
  if (active.size() != spec.num_frames())
    throw Error("activity mask has " + std::to_string(active.size()) +
                " entries for " + std::to_string(spec.num_frames()) + " frames");
  std::vector<std::size_t> keep;
  for (std::size_t t = 0; t < active.size(); ++t)
    if (active[t]) keep.push_back(t);
  if (keep.size() < kMinActiveFrames)
    throw Error("insufficient voiced content: " + std::to_string(keep.size()) +
                " active frames, need " + std::to_string(kMinActiveFrames));

  const std::size_t bins = spec.num_bins();
  const Matrix fb = MelFilterbank(spec.sample_rate, bins);
  const Matrix dct = DctMatrix();
  std::vector<double> emphasis(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const double w = std::numbers::pi * static_cast<double>(k) / static_cast<double>(bins - 1);
    emphasis[k] = 1.0 - 2.0 * kPreEmphasis * std::cos(w) + kPreEmphasis * kPreEmphasis;
  }

  FeatureMatrix out;
  out.params = spec.params;
  out.vad_applied = true;
  out.values = Matrix(keep.size(), kFeatureDim);
  std::vector<double> power(bins), log_mel(kNumMelFilters);
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const auto mag = spec.magnitudes.row(keep[r]);
    for (std::size_t k = 0; k < bins; ++k) power[k] = mag[k] * mag[k] * emphasis[k];
    for (std::size_t m = 0; m < kNumMelFilters; ++m) {
      double e = 0.0;
      const auto weights = fb.row(m);
      for (std::size_t k = 0; k < bins; ++k) e += weights[k] * power[k];
      log_mel[m] = std::log(std::max(e, kEnergyFloor));
    }
    for (std::size_t c = 0; c < kNumCepstra; ++c) {
      double acc = 0.0;
      for (std::size_t m = 0; m < kNumMelFilters; ++m) acc += dct(c, m) * log_mel[m];
      out.values(r, c) = acc;
    }
  }
  Deltas(&out.values, 0, kNumCepstra, kNumCepstra);
  Deltas(&out.values, kNumCepstra, 2 * kNumCepstra, kNumCepstra);
  return out;
}

FeatureMatrix Mfcc(const AudioBuffer& buf, const FrameParams& params) {
  if (params.NumFrames(buf.size(), buf.sample_rate()) == 0)
    throw Error("insufficient voiced content: audio shorter than one frame");
  return MfccFromSpectrogram(Stft(buf, params), Vad(buf, params));
}

}  // namespace voxrestore
