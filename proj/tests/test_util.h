// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_TESTS_TEST_UTIL_H_
#define VOXRESTORE_TESTS_TEST_UTIL_H_

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "voxrestore/audio.h"

namespace voxrestore::testing {

inline constexpr double kPi = std::numbers::pi;

inline AudioBuffer Sine(double freq_hz, int sample_rate, double seconds, double amp = 0.5,
                        double phase = 0.0) {
  std::vector<double> x(static_cast<std::size_t>(std::lround(seconds * sample_rate)));
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = amp * std::sin(2.0 * kPi * freq_hz * static_cast<double>(i) / sample_rate + phase);
  return AudioBuffer(std::move(x), sample_rate);
}

inline AudioBuffer WhiteNoise(std::uint64_t seed, std::size_t n, int sample_rate,
                              double amp = 0.1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, amp);
  std::vector<double> x(n);
  for (double& v : x) v = std::clamp(g(rng), -1.0, 1.0);
  return AudioBuffer(std::move(x), sample_rate);
}

// Band-limited sawtooth (harmonics up to 0.45 fs), a crude voiced source.
inline AudioBuffer Sawtooth(double f0, int sample_rate, double seconds, double amp = 0.3) {
  std::vector<double> x(static_cast<std::size_t>(std::lround(seconds * sample_rate)), 0.0);
  for (int h = 1; h * f0 < 0.45 * sample_rate; ++h)
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] += amp * std::sin(2.0 * kPi * h * f0 * static_cast<double>(i) / sample_rate) / h;
  return AudioBuffer(std::move(x), sample_rate);
}

// |DFT| of samples [begin, end) at an arbitrary frequency, by direct summation
// under a Hann taper.
inline double DftMagnitude(const AudioBuffer& buf, double freq_hz, std::size_t begin,
                           std::size_t end) {
  std::complex<double> acc = 0.0;
  const double n = static_cast<double>(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * kPi * (i - begin) / n);
    acc += w * buf[i] * std::polar(1.0, -2.0 * kPi * freq_hz * i / buf.sample_rate());
  }
  return std::abs(acc);
}

// Strongest frequency in [lo, hi] Hz: a 1 Hz scan, then golden-section refinement.
inline double DominantFrequency(const AudioBuffer& buf, double lo = 20.0, double hi = -1.0) {
  if (hi < 0) hi = 0.45 * buf.sample_rate();
  const std::size_t begin = buf.size() / 10, end = buf.size() - buf.size() / 10;
  double best_f = lo, best_m = -1.0;
  for (double f = lo; f <= hi; f += 1.0) {
    const double m = DftMagnitude(buf, f, begin, end);
    if (m > best_m) best_m = m, best_f = f;
  }
  double a = best_f - 1.0, b = best_f + 1.0;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 40; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (DftMagnitude(buf, c, begin, end) > DftMagnitude(buf, d, begin, end))
      b = d;
    else
      a = c;
  }
  return 0.5 * (a + b);
}

// A fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("voxrestore-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace voxrestore::testing

#endif  // VOXRESTORE_TESTS_TEST_UTIL_H_
