// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/stft.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "voxrestore/error.h"
#include "voxrestore/fft.h"

namespace voxrestore {
namespace {

using Complex = std::complex<double>;

std::size_t MsToSamples(double ms, int sample_rate) {
  return static_cast<std::size_t>(std::lround(ms * sample_rate / 1000.0));
}

}  // namespace

std::vector<double> MakeWindow(WindowType type, std::size_t n) {
  std::vector<double> w(n, 1.0);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (type) {
      case WindowType::kHann:
        w[i] = 0.5 - 0.5 * std::cos(step * i);
        break;
      case WindowType::kHamming:
        w[i] = 0.54 - 0.46 * std::cos(step * i);
        break;
      case WindowType::kRectangular:
        break;
    }
  }
  return w;
}

std::size_t FrameParams::WindowSamples(int sample_rate) const {
  return MsToSamples(window_ms, sample_rate);
}

std::size_t FrameParams::HopSamples(int sample_rate) const {
  return MsToSamples(hop_ms, sample_rate);
}

std::size_t FrameParams::FftSize(int sample_rate) const {
  return fft_size != 0 ? fft_size : NextPowerOfTwo(WindowSamples(sample_rate));
}

std::size_t FrameParams::NumFrames(std::size_t num_samples, int sample_rate) const {
  const std::size_t win = WindowSamples(sample_rate);
  if (num_samples < win) return 0;
  return 1 + (num_samples - win) / HopSamples(sample_rate);
}

void FrameParams::Validate(int sample_rate) const {
  if (sample_rate <= 0) throw Error("sample rate must be positive");
  const std::size_t win = WindowSamples(sample_rate);
  const std::size_t hop = HopSamples(sample_rate);
  if (hop == 0 || win == 0 || hop > win)
    throw Error("frame parameters need 0 < hop <= window (hop " +
                std::to_string(hop_ms) + " ms, window " + std::to_string(window_ms) +
                " ms)");
  if (fft_size != 0 && (!IsPowerOfTwo(fft_size) || fft_size < win))
    throw Error("fft_size must be a power of two no smaller than the window");
}

Spectrogram Stft(const AudioBuffer& buf, const FrameParams& params) {
  const int sr = buf.sample_rate();
  params.Validate(sr);
  const std::size_t win = params.WindowSamples(sr);
  const std::size_t hop = params.HopSamples(sr);
  const std::size_t n_fft = params.FftSize(sr);
  const std::size_t frames = params.NumFrames(buf.size(), sr);
  if (frames == 0)
    throw Error("audio too short: " + std::to_string(buf.size()) +
                " samples is less than one " + std::to_string(win) + "-sample window");

  const std::vector<double> window = MakeWindow(params.window, win);
  const RealFft fft(n_fft);
  const std::size_t bins = n_fft / 2 + 1;

  Spectrogram spec;
  spec.magnitudes = Matrix(frames, bins);
  spec.phases = Matrix(frames, bins);
  spec.params = params;
  spec.sample_rate = sr;
  spec.num_samples = buf.size();

  std::vector<double> frame(n_fft, 0.0);
  std::vector<Complex> bins_out(bins);
  const auto samples = buf.samples();
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t offset = t * hop;
    for (std::size_t i = 0; i < win; ++i) frame[i] = samples[offset + i] * window[i];
    fft.Forward(frame, bins_out);
    for (std::size_t k = 0; k < bins; ++k) {
      spec.magnitudes(t, k) = std::abs(bins_out[k]);
      (*spec.phases)(t, k) = std::arg(bins_out[k]);
    }
  }
  return spec;
}

AudioBuffer Istft(const Spectrogram& spec) {
  if (!spec.phases) throw Error("istft requires phases; use GriffinLim for magnitudes");
  const Matrix& phases = *spec.phases;
  if (phases.rows() != spec.magnitudes.rows() || phases.cols() != spec.magnitudes.cols())
    throw Error("phase matrix shape does not match magnitudes");

  const int sr = spec.sample_rate;
  spec.params.Validate(sr);
  const std::size_t win = spec.params.WindowSamples(sr);
  const std::size_t hop = spec.params.HopSamples(sr);
  const std::size_t n_fft = spec.params.FftSize(sr);
  const std::size_t bins = n_fft / 2 + 1;
  if (spec.num_bins() != bins) throw Error("spectrogram bin count does not match params");
  const std::size_t frames = spec.num_frames();
  if (frames == 0) throw Error("empty spectrogram");

  const std::size_t span = (frames - 1) * hop + win;
  const std::size_t length = std::max(span, spec.num_samples);
  std::vector<double> out(length, 0.0);
  std::vector<double> norm(length, 0.0);
  const std::vector<double> window = MakeWindow(spec.params.window, win);
  const RealFft fft(n_fft);

  std::vector<Complex> frame_spec(bins);
  std::vector<double> frame(n_fft);
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t k = 0; k < bins; ++k)
      frame_spec[k] = std::polar(spec.magnitudes(t, k), phases(t, k));
    fft.Inverse(frame_spec, frame);
    const std::size_t offset = t * hop;
    for (std::size_t i = 0; i < win; ++i) {
      out[offset + i] += frame[i] * window[i];
      norm[offset + i] += window[i] * window[i];
    }
  }
  const double peak = *std::max_element(norm.begin(), norm.end());
  const double floor = peak * 1e-8;
  for (std::size_t i = 0; i < length; ++i)
    out[i] = norm[i] > floor ? out[i] / norm[i] : 0.0;
  out.resize(spec.num_samples != 0 ? spec.num_samples : length);
  return AudioBuffer(std::move(out), sr);
}

double SpectralConvergence(const Spectrogram& target, const AudioBuffer& x) {
  const Spectrogram actual = Stft(x, target.params);
  const std::size_t frames = std::min(actual.num_frames(), target.num_frames());
  double diff = 0.0, ref = 0.0;
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t k = 0; k < target.num_bins(); ++k) {
      const double a = target.magnitudes(t, k);
      const double d = a - actual.magnitudes(t, k);
      diff += d * d;
      ref += a * a;
    }
  }
  if (ref == 0.0) return 0.0;
  return std::sqrt(diff / ref);
}

AudioBuffer GriffinLim(const Spectrogram& spec, int iterations,
                       std::vector<double>* trace) {
  if (iterations < 1) throw Error("Griffin-Lim needs at least one iteration");
  Spectrogram estimate;
  estimate.magnitudes = spec.magnitudes;
  estimate.phases = Matrix(spec.num_frames(), spec.num_bins(), 0.0);
  estimate.params = spec.params;
  estimate.sample_rate = spec.sample_rate;
  estimate.num_samples = spec.num_samples;
  if (trace) trace->clear();

  AudioBuffer signal;
  for (int it = 0; it < iterations; ++it) {
    signal = Istft(estimate);
    const bool last = it + 1 == iterations;
    if (last && !trace) break;
    const Spectrogram reanalysis = Stft(signal, spec.params);
    if (trace) {
      double diff = 0.0, ref = 0.0;
      for (std::size_t t = 0; t < spec.num_frames(); ++t) {
        for (std::size_t k = 0; k < spec.num_bins(); ++k) {
          const double a = spec.magnitudes(t, k);
          const double d = a - reanalysis.magnitudes(t, k);
          diff += d * d;
          ref += a * a;
        }
      }
      trace->push_back(ref == 0.0 ? 0.0 : std::sqrt(diff / ref));
    }
    if (last) break;
    // Keep the re-analysed phase; leave bins with no energy at their old phase.
    for (std::size_t t = 0; t < spec.num_frames(); ++t) {
      for (std::size_t k = 0; k < spec.num_bins(); ++k) {
        if (reanalysis.magnitudes(t, k) > 0.0)
          (*estimate.phases)(t, k) = (*reanalysis.phases)(t, k);
      }
    }
  }
  return signal;
}

}  // namespace voxrestore
