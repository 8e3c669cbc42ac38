// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/vad.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "voxrestore/error.h"

namespace voxrestore {

std::vector<bool> Vad(const AudioBuffer& buf, const FrameParams& params,
                      double threshold_db) {
  const int sr = buf.sample_rate();
  params.Validate(sr);
  const std::size_t win = params.WindowSamples(sr);
  const std::size_t hop = params.HopSamples(sr);
  const std::size_t frames = params.NumFrames(buf.size(), sr);
  if (frames == 0)
    throw Error("audio too short for VAD: " + std::to_string(buf.size()) + " samples");

  const auto x = buf.samples();
  std::vector<double> energy(frames, 0.0);
  for (std::size_t t = 0; t < frames; ++t) {
    double e = 0.0;
    for (std::size_t i = 0; i < win; ++i) e += x[t * hop + i] * x[t * hop + i];
    energy[t] = e;
  }
  std::vector<bool> mask(frames, false);
  const double peak = *std::max_element(energy.begin(), energy.end());
  if (peak <= 0.0) return mask;
  const double peak_db = 10.0 * std::log10(peak);
  for (std::size_t t = 0; t < frames; ++t)
    mask[t] = energy[t] > 0.0 && 10.0 * std::log10(energy[t]) > peak_db - threshold_db;
  return mask;
}

}  // namespace voxrestore
