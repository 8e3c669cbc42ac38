// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_FEATURES_H_
#define VOXRESTORE_FEATURES_H_

#include <vector>

#include "voxrestore/audio.h"
#include "voxrestore/matrix.h"
#include "voxrestore/stft.h"

namespace voxrestore {

inline constexpr std::size_t kNumCepstra = 24;
inline constexpr std::size_t kFeatureDim = 3 * kNumCepstra;  // + delta + delta-delta
inline constexpr std::size_t kNumMelFilters = 26;
inline constexpr double kPreEmphasis = 0.97;
inline constexpr std::size_t kMinActiveFrames = 3;

// frames x 72: 24 cepstra (c0..c23), then their deltas, then delta-deltas.
struct FeatureMatrix {
  Matrix values;
  FrameParams params;
  bool vad_applied = false;

  std::size_t num_frames() const { return values.rows(); }
};

// Log-mel cepstra of the frames of `spec` selected by `active`. Only the
// magnitudes are used. Pre-emphasis is applied as the power response
// |1 - 0.97 e^{-jw}|^2 of the first-order filter, so features can be taken
// from spectra that were warped after analysis. 26 triangular mel filters span
// 0 Hz to Nyquist; DCT-II (orthonormal) keeps 24 coefficients; deltas use a
// +-2 frame regression with edge frames repeated, computed over the retained
// frames only. Throws "insufficient voiced content" for < 3 active frames.
FeatureMatrix MfccFromSpectrogram(const Spectrogram& spec, const std::vector<bool>& active);

// Vad(buf) -> Stft(buf) -> MfccFromSpectrogram, with 25 ms / 15 ms Hann frames.
FeatureMatrix Mfcc(const AudioBuffer& buf, const FrameParams& params = {});

}  // namespace voxrestore

#endif  // VOXRESTORE_FEATURES_H_
