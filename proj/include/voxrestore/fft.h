// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_FFT_H_
#define VOXRESTORE_FFT_H_

#include <complex>
#include <cstddef>
#include <span>

namespace voxrestore {

// Real-input DFT of a fixed power-of-two size, backed by FFTW.
// Forward: n reals -> n/2 + 1 complex bins (unnormalized).
// Inverse: n/2 + 1 bins -> n reals, scaled by 1/n so Inverse(Forward(x)) == x.
// Plans are shared per thread; instances are cheap handles.
class RealFft {
 public:
  explicit RealFft(std::size_t n);

  std::size_t size() const { return n_; }
  void Forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  void Inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

 private:
  std::size_t n_;
};

bool IsPowerOfTwo(std::size_t n);
std::size_t NextPowerOfTwo(std::size_t n);

}  // namespace voxrestore

#endif  // VOXRESTORE_FFT_H_
