// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_VAD_H_
#define VOXRESTORE_VAD_H_

#include <vector>

#include "voxrestore/audio.h"
#include "voxrestore/stft.h"

namespace voxrestore {

inline constexpr double kDefaultVadThresholdDb = 40.0;

// Energy VAD: a frame is active iff its log-energy exceeds the loudest frame's
// by no more than `threshold_db`. Frames with zero energy are never active, so
// digital silence yields an all-false mask. The mask has one entry per
// analysis frame of `params` (same framing as Stft).
std::vector<bool> Vad(const AudioBuffer& buf, const FrameParams& params = {},
                      double threshold_db = kDefaultVadThresholdDb);

}  // namespace voxrestore

#endif  // VOXRESTORE_VAD_H_
