// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/audio.h"

#include <cmath>
#include <string>

#include "voxrestore/error.h"

namespace voxrestore {

AudioBuffer::AudioBuffer(std::vector<double> samples, int sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
  if (sample_rate_ <= 0)
    throw Error("sample rate must be positive, got " + std::to_string(sample_rate_));
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i]))
      throw Error("non-finite audio sample at index " + std::to_string(i));
  }
}

double RelativeRmsError(std::span<const double> a, std::span<const double> b,
                        std::size_t begin, std::size_t end) {
  if (end > a.size() || end > b.size() || begin >= end)
    throw Error("RelativeRmsError: invalid range");
  double err = 0.0, ref = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double d = a[i] - b[i];
    err += d * d;
    ref += a[i] * a[i];
  }
  if (ref == 0.0) return err == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(err / ref);
}

}  // namespace voxrestore
