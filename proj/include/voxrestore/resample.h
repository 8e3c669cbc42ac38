// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_RESAMPLE_H_
#define VOXRESTORE_RESAMPLE_H_

#include "voxrestore/audio.h"

namespace voxrestore {

// Reads the input `ratio` times faster: output sample n is the band-limited
// interpolation of the input at position n * ratio. The result keeps the
// nominal sample rate, has round(len / ratio) samples, and plays back with
// every frequency multiplied by `ratio`. For ratio > 1 the interpolation
// kernel is widened by `ratio` to suppress aliasing.
//
// Kernel: Kaiser-windowed sinc, beta 8, 16 zero crossings per side.
// Throws unless 0.1 <= ratio <= 10.
AudioBuffer Resample(const AudioBuffer& buf, double ratio);

}  // namespace voxrestore

#endif  // VOXRESTORE_RESAMPLE_H_
