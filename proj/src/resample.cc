// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/resample.h"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "voxrestore/error.h"

namespace voxrestore {
namespace {

constexpr int kZeroCrossings = 16;
constexpr double kKaiserBeta = 8.0;

double Sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

double Kaiser(double x, double half_width) {
  const double r = x / half_width;
  if (r <= -1.0 || r >= 1.0) return 0.0;
  static const double norm = std::cyl_bessel_i(0.0, kKaiserBeta);
  return std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - r * r)) / norm;
}

}  // namespace

AudioBuffer Resample(const AudioBuffer& buf, double ratio) {
  if (!(ratio >= 0.1 && ratio <= 10.0))
    throw Error("resample ratio must lie in [0.1, 10], got " + std::to_string(ratio));
  const auto in = buf.samples();
  const auto in_len = static_cast<long>(in.size());
  const auto out_len = static_cast<std::size_t>(std::lround(in.size() / ratio));
  std::vector<double> out(out_len, 0.0);

  // Cutoff relative to the input Nyquist; lowered when the read-out is faster.
  const double cutoff = ratio > 1.0 ? 1.0 / ratio : 1.0;
  const double half_width = kZeroCrossings / cutoff;

  for (std::size_t n = 0; n < out_len; ++n) {
    const double pos = static_cast<double>(n) * ratio;
    const double nearest = std::round(pos);
    if (cutoff == 1.0 && pos == nearest) {
      // Integer position with a full-band kernel: every other tap sits on a
      // sinc zero crossing.
      const auto k = static_cast<long>(nearest);
      out[n] = k < in_len ? in[k] : 0.0;
      continue;
    }
    const long first = static_cast<long>(std::ceil(pos - half_width));
    const long last = static_cast<long>(std::floor(pos + half_width));
    double acc = 0.0;
    for (long k = std::max(first, 0L); k <= std::min(last, in_len - 1); ++k) {
      const double d = pos - static_cast<double>(k);
      acc += in[k] * cutoff * Sinc(cutoff * d) * Kaiser(d, half_width);
    }
    out[n] = acc;
  }
  return AudioBuffer(std::move(out), buf.sample_rate());
}

}  // namespace voxrestore
