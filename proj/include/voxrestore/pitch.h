// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_PITCH_H_
#define VOXRESTORE_PITCH_H_

#include <vector>

#include "voxrestore/audio.h"
#include "voxrestore/stft.h"

namespace voxrestore {

inline constexpr double kMinF0Hz = 50.0;
inline constexpr double kMaxF0Hz = 500.0;

struct F0Options {
  // 40 ms holds two periods of the lowest admissible F0.
  FrameParams frames{40.0, 10.0, 0, WindowType::kHann};
  int lpc_order = 12;
  // Normalized autocorrelation peak of the LPC residual needed to call a frame
  // voiced.
  double voicing_threshold = 0.3;
  // Frames more than this far below the loudest frame are unvoiced.
  double energy_floor_db = 40.0;
  // Voiced runs shorter than this many frames are cleared as spurious.
  std::size_t min_voiced_run = 5;
};

struct F0Track {
  std::vector<double> f0_hz;  // 0 where unvoiced
  std::vector<bool> voiced;
  FrameParams params;

  std::size_t num_voiced() const;
};

// Simplified inverse filter tracking: per frame, an LPC inverse filter of
// order `lpc_order` flattens the spectral envelope, then the normalized
// autocorrelation of the residual is searched over lags for 50-500 Hz. The
// shortest lag whose peak is within 15% of the best one is kept (this avoids
// picking a multiple of the period) and refined by parabolic interpolation.
// Gain invariant. Throws when the buffer is shorter than one analysis frame.
F0Track EstimateF0(const AudioBuffer& buf, const F0Options& options = {});

// Mean over voiced frames; throws "unvoiced utterance" if there are none.
double MeanF0(const F0Track& track);

// 12 log2(f_y / f_x), unrounded.
double F0RatioAlpha(double f_x, double f_y);

}  // namespace voxrestore

#endif  // VOXRESTORE_PITCH_H_
