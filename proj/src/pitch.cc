// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/pitch.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "voxrestore/error.h"

namespace voxrestore {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResidualCutoffHz = 1000.0;

// Levinson-Durbin on autocorrelation r[0..order]; returns a[0..order] with
// a[0] = 1 so that e[n] = sum_k a[k] x[n-k].
std::vector<double> Levinson(const std::vector<double>& r, int order) {
  std::vector<double> a(order + 1, 0.0), prev(order + 1, 0.0);
  a[0] = 1.0;
  double err = r[0];
  for (int i = 1; i <= order && err > 0.0; ++i) {
    double acc = r[i];
    for (int j = 1; j < i; ++j) acc += a[j] * r[i - j];
    const double k = -acc / err;
    prev = a;
    for (int j = 1; j < i; ++j) a[j] = prev[j] + k * prev[i - j];
    a[i] = k;
    err *= 1.0 - k * k;
  }
  return a;
}

// Hann-windowed sinc low-pass, unit DC gain.
std::vector<double> LowPassTaps(double cutoff_hz, int sample_rate) {
  const double fc = cutoff_hz / sample_rate;
  const int half = static_cast<int>(std::ceil(2.0 / fc));
  std::vector<double> h(2 * half + 1);
  double sum = 0.0;
  for (int i = -half; i <= half; ++i) {
    const double sinc = i == 0 ? 2.0 * fc : std::sin(2.0 * kPi * fc * i) / (kPi * i);
    const double w = 0.5 + 0.5 * std::cos(kPi * i / (half + 1));
    h[i + half] = sinc * w;
    sum += h[i + half];
  }
  for (double& v : h) v /= sum;
  return h;
}

}  // namespace

std::size_t F0Track::num_voiced() const {
  return static_cast<std::size_t>(std::count(voiced.begin(), voiced.end(), true));
}

F0Track EstimateF0(const AudioBuffer& buf, const F0Options& options) {
  const int sr = buf.sample_rate();
  const FrameParams& fp = options.frames;
  fp.Validate(sr);
  const std::size_t win = fp.WindowSamples(sr);
  const std::size_t hop = fp.HopSamples(sr);
  const std::size_t frames = fp.NumFrames(buf.size(), sr);
  if (frames == 0)
    throw Error("audio too short for pitch tracking: need at least " +
                std::to_string(win) + " samples, got " + std::to_string(buf.size()));

  const int order = options.lpc_order;
  const auto min_lag = static_cast<std::size_t>(std::floor(sr / kMaxF0Hz));
  const auto max_lag =
      std::min(static_cast<std::size_t>(std::ceil(sr / kMinF0Hz)), win - win / 4);
  const std::vector<double> window = MakeWindow(WindowType::kHann, win);
  const auto x = buf.samples();

  std::vector<double> energy(frames, 0.0);
  for (std::size_t t = 0; t < frames; ++t)
    for (std::size_t i = 0; i < win; ++i) energy[t] += x[t * hop + i] * x[t * hop + i];
  const double peak_energy = *std::max_element(energy.begin(), energy.end());
  const double energy_gate = peak_energy * std::pow(10.0, -options.energy_floor_db / 10.0);

  F0Track track;
  track.params = fp;
  track.f0_hz.assign(frames, 0.0);
  track.voiced.assign(frames, false);

  const std::vector<double> lowpass = LowPassTaps(kResidualCutoffHz, sr);
  std::vector<double> frame(win), residual(win), r(order + 1);
  std::vector<double> raw(win + lowpass.size() - 1);
  std::vector<double> corr(max_lag + 2, 0.0);
  for (std::size_t t = 0; t < frames; ++t) {
    if (peak_energy <= 0.0 || energy[t] <= energy_gate) continue;
    const std::size_t offset = t * hop;
    for (std::size_t i = 0; i < win; ++i) frame[i] = x[offset + i] * window[i];
    for (int k = 0; k <= order; ++k) {
      double acc = 0.0;
      for (std::size_t i = k; i < win; ++i) acc += frame[i] * frame[i - k];
      r[k] = acc;
    }
    // White-noise correction keeps the filter from cancelling a pure tone.
    r[0] *= 1.001;
    const std::vector<double> a = Levinson(r, order);

    // Inverse-filter a margin around the frame, then low-pass: the smoothed
    // residual correlates robustly across jittered periods.
    const long margin = static_cast<long>(lowpass.size() / 2);
    for (long i = -margin; i < static_cast<long>(win) + margin; ++i) {
      double acc = 0.0;
      const long n = static_cast<long>(offset) + i;
      for (int k = 0; k <= order; ++k) {
        const long m = n - k;
        if (m >= 0 && m < static_cast<long>(x.size())) acc += a[k] * x[m];
      }
      raw[i + margin] = acc;
    }
    for (std::size_t i = 0; i < win; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < lowpass.size(); ++k) acc += lowpass[k] * raw[i + k];
      residual[i] = acc;
    }

    // Voicing uses the biased autocorrelation r(lag) / r(0): the overlap-
    // normalized curve is too noisy at long lags once the residual is
    // band-limited. Lag picking uses the normalized curve.
    double e0 = 0.0;
    for (std::size_t i = 0; i < win; ++i) e0 += residual[i] * residual[i];
    if (e0 <= 0.0) continue;
    double best = -1.0, periodicity = -1.0;
    for (std::size_t lag = min_lag; lag <= max_lag + 1 && lag < win; ++lag) {
      double xy = 0.0, xx = 0.0, yy = 0.0;
      for (std::size_t i = 0; i + lag < win; ++i) {
        xy += residual[i] * residual[i + lag];
        xx += residual[i] * residual[i];
        yy += residual[i + lag] * residual[i + lag];
      }
      corr[lag] = (xx > 0.0 && yy > 0.0) ? xy / std::sqrt(xx * yy) : 0.0;
      if (lag <= max_lag) {
        best = std::max(best, corr[lag]);
        periodicity = std::max(periodicity, xy / e0);
      }
    }
    if (periodicity < options.voicing_threshold) continue;

    std::size_t chosen = 0;
    for (std::size_t lag = min_lag; lag <= max_lag; ++lag) {
      const bool local_peak = (lag == min_lag || corr[lag] >= corr[lag - 1]) &&
                              corr[lag] >= corr[lag + 1];
      if (local_peak && corr[lag] >= 0.85 * best) {
        chosen = lag;
        break;
      }
    }
    if (chosen == 0) continue;

    double refined = static_cast<double>(chosen);
    if (chosen > min_lag && chosen < max_lag + 1) {
      const double ym = corr[chosen - 1], y0 = corr[chosen], yp = corr[chosen + 1];
      const double denom = ym - 2.0 * y0 + yp;
      if (denom < 0.0) refined += std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);
    }
    const double f0 = sr / refined;
    if (f0 < kMinF0Hz || f0 > kMaxF0Hz) continue;
    track.f0_hz[t] = f0;
    track.voiced[t] = true;
  }
  for (std::size_t t = 0; t < frames;) {
    if (!track.voiced[t]) {
      ++t;
      continue;
    }
    std::size_t end = t;
    while (end < frames && track.voiced[end]) ++end;
    if (end - t < options.min_voiced_run) {
      for (std::size_t i = t; i < end; ++i) {
        track.voiced[i] = false;
        track.f0_hz[i] = 0.0;
      }
    }
    t = end;
  }
  return track;
}

double MeanF0(const F0Track& track) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < track.f0_hz.size(); ++i) {
    if (!track.voiced[i]) continue;
    sum += track.f0_hz[i];
    ++n;
  }
  if (n == 0) throw Error("unvoiced utterance: no voiced frames");
  return sum / static_cast<double>(n);
}

double F0RatioAlpha(double f_x, double f_y) {
  if (!(f_x > 0.0) || !(f_y > 0.0)) throw Error("F0 values must be positive");
  return 12.0 * std::log2(f_y / f_x);
}

}  // namespace voxrestore
