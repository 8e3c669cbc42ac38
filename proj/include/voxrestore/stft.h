// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_STFT_H_
#define VOXRESTORE_STFT_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "voxrestore/audio.h"
#include "voxrestore/matrix.h"

namespace voxrestore {

enum class WindowType { kHann, kHamming, kRectangular };

// Periodic window of length n (the DFT-even form, w[n] == w[0] implied).
std::vector<double> MakeWindow(WindowType type, std::size_t n);

struct FrameParams {
  double window_ms = 25.0;
  double hop_ms = 15.0;
  // 0 selects the smallest power of two >= the window length.
  std::size_t fft_size = 0;
  WindowType window = WindowType::kHann;

  std::size_t WindowSamples(int sample_rate) const;
  std::size_t HopSamples(int sample_rate) const;
  std::size_t FftSize(int sample_rate) const;
  std::size_t NumBins(int sample_rate) const { return FftSize(sample_rate) / 2 + 1; }
  // 1 + floor((num_samples - window) / hop), or 0 when shorter than a window.
  std::size_t NumFrames(std::size_t num_samples, int sample_rate) const;

  // Throws unless 0 < hop <= window and fft_size (when set) is a power of two
  // no smaller than the window.
  void Validate(int sample_rate) const;

  bool operator==(const FrameParams&) const = default;
};

// Magnitude (and optionally phase) short-time spectra, frames x bins.
// Bin k sits at normalized frequency pi * k / (bins - 1).
struct Spectrogram {
  Matrix magnitudes;
  std::optional<Matrix> phases;
  FrameParams params;
  int sample_rate = 0;
  // Length of the analysed signal; istft pads its output back to this length.
  std::size_t num_samples = 0;

  std::size_t num_frames() const { return magnitudes.rows(); }
  std::size_t num_bins() const { return magnitudes.cols(); }
  bool has_phases() const { return phases.has_value(); }
};

Spectrogram Stft(const AudioBuffer& buf, const FrameParams& params = {});

// Weighted overlap-add resynthesis normalised by the summed squared window,
// which is the least-squares inverse of Stft for any window/hop pair.
AudioBuffer Istft(const Spectrogram& spec);

// Phase retrieval from spec.magnitudes (phases are ignored). The initial phase
// is zero everywhere, so the result is deterministic. When `trace` is given it
// receives the spectral convergence of the estimate after every iteration.
AudioBuffer GriffinLim(const Spectrogram& spec, int iterations = 32,
                       std::vector<double>* trace = nullptr);

// ||target - |STFT(x)|||_F / ||target||_F over the frames both share.
// Returns 0 for an all-zero target.
double SpectralConvergence(const Spectrogram& target, const AudioBuffer& x);

}  // namespace voxrestore

#endif  // VOXRESTORE_STFT_H_
