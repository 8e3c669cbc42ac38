// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_AUDIO_H_
#define VOXRESTORE_AUDIO_H_

#include <cstddef>
#include <span>
#include <vector>

namespace voxrestore {

// Mono PCM audio with amplitudes nominally in [-1, 1].
class AudioBuffer {
 public:
  AudioBuffer() = default;
  // Throws if sample_rate <= 0 or any sample is non-finite.
  AudioBuffer(std::vector<double> samples, int sample_rate);

  std::span<const double> samples() const { return samples_; }
  int sample_rate() const { return sample_rate_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double duration_seconds() const {
    return static_cast<double>(samples_.size()) / sample_rate_;
  }

  double operator[](std::size_t i) const { return samples_[i]; }

 private:
  std::vector<double> samples_;
  int sample_rate_ = 0;
};

// Root-mean-square of `a - b` over [begin, end) divided by the RMS of `a`
// over the same range. Used by tests and by identity checks.
double RelativeRmsError(std::span<const double> a, std::span<const double> b,
                        std::size_t begin, std::size_t end);

}  // namespace voxrestore

#endif  // VOXRESTORE_AUDIO_H_
