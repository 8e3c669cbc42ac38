// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/fft.h"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "voxrestore/error.h"

namespace voxrestore {
namespace {

// FFTW's planner is not re-entrant; execution on distinct buffers is.
std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

struct Plan {
  explicit Plan(std::size_t n) : n(n) {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    real = fftw_alloc_real(n);
    spectrum = fftw_alloc_complex(n / 2 + 1);
    const int size = static_cast<int>(n);
    forward = fftw_plan_dft_r2c_1d(size, real, spectrum, FFTW_ESTIMATE);
    inverse = fftw_plan_dft_c2r_1d(size, spectrum, real, FFTW_ESTIMATE);
  }
  ~Plan() {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(inverse);
    fftw_free(real);
    fftw_free(spectrum);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  std::size_t n;
  double* real = nullptr;
  fftw_complex* spectrum = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

Plan& PlanFor(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<Plan>> plans;
  auto it = plans.find(n);
  if (it == plans.end()) it = plans.emplace(n, std::make_unique<Plan>(n)).first;
  return *it->second;
}

}  // namespace

bool IsPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t NextPowerOfTwo(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

RealFft::RealFft(std::size_t n) : n_(n) {
  if (!IsPowerOfTwo(n) || n < 2)
    throw Error("FFT size must be a power of two >= 2, got " + std::to_string(n));
}

void RealFft::Forward(std::span<const double> in,
                      std::span<std::complex<double>> out) const {
  Plan& plan = PlanFor(n_);
  const std::size_t count = std::min(in.size(), n_);
  std::copy_n(in.begin(), count, plan.real);
  std::fill(plan.real + count, plan.real + n_, 0.0);
  fftw_execute(plan.forward);
  for (std::size_t k = 0; k < out.size() && k <= n_ / 2; ++k)
    out[k] = {plan.spectrum[k][0], plan.spectrum[k][1]};
}

void RealFft::Inverse(std::span<const std::complex<double>> in,
                      std::span<double> out) const {
  Plan& plan = PlanFor(n_);
  const std::size_t bins = n_ / 2 + 1;
  for (std::size_t k = 0; k < bins; ++k) {
    const std::complex<double> v = k < in.size() ? in[k] : 0.0;
    plan.spectrum[k][0] = v.real();
    plan.spectrum[k][1] = v.imag();
  }
  // The real parts of DC and Nyquist are all a real signal can carry.
  plan.spectrum[0][1] = 0.0;
  plan.spectrum[bins - 1][1] = 0.0;
  fftw_execute(plan.inverse);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < out.size() && i < n_; ++i) out[i] = plan.real[i] * scale;
}

}  // namespace voxrestore
