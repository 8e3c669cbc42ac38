// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/warp.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "voxrestore/error.h"

namespace voxrestore {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> UniformKnots(std::size_t n) {
  std::vector<double> k(n);
  for (std::size_t i = 0; i < n; ++i)
    k[i] = kPi * static_cast<double>(i) / static_cast<double>(n - 1);
  k.back() = kPi;
  return k;
}

// Source bin (and interpolation weight) for one output bin, or invalid.
struct Tap {
  std::size_t lo = 0;
  double frac = 0.0;
  bool valid = false;
};

}  // namespace

WarpFunction WarpFunction::Identity(std::size_t knots) {
  auto k = UniformKnots(knots);
  auto v = k;
  return WarpFunction(std::move(k), std::move(v), true);
}

WarpFunction WarpFunction::FromMap(const std::function<double(double)>& map,
                                   std::size_t knots, bool pin_endpoints) {
  if (knots < 2) throw Error("warp table needs at least two knots");
  std::function<double(double)> f = map;
  if (pin_endpoints) {
    f = [map](double w) {
      if (w <= 0.0) return 0.0;
      if (w >= kPi) return kPi;
      return std::clamp(map(w), 0.0, kPi);
    };
  }
  auto k = UniformKnots(knots);
  std::vector<double> v(knots);
  for (std::size_t i = 0; i < knots; ++i) v[i] = f(k[i]);
  WarpFunction w(std::move(k), std::move(v), false);
  if (!w.IsStrictlyIncreasing()) throw Error("warp function is not strictly increasing");
  w.map_ = std::make_shared<const std::function<double(double)>>(std::move(f));
  return w;
}

double WarpFunction::Map(double omega) const {
  if (identity_) return omega;
  return (*map_)(std::clamp(omega, 0.0, kPi));
}

std::optional<double> WarpFunction::Inverse(double omega_out) const {
  if (identity_) {
    if (omega_out < 0.0 || omega_out > kPi) return std::nullopt;
    return omega_out;
  }
  if (omega_out < values_.front() || omega_out > values_.back()) return std::nullopt;
  if (inverse_map_) return (*inverse_map_)(omega_out);
  auto it = std::upper_bound(values_.begin(), values_.end(), omega_out);
  std::size_t hi = it == values_.end() ? values_.size() - 1
                                       : static_cast<std::size_t>(it - values_.begin());
  if (hi == 0) hi = 1;
  // values_[hi - 1] <= omega_out <= values_[hi]; bisect the exact map.
  double lo_w = knots_[hi - 1], hi_w = knots_[hi];
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo_w + hi_w);
    if (mid <= lo_w || mid >= hi_w) break;
    if ((*map_)(mid) <= omega_out)
      lo_w = mid;
    else
      hi_w = mid;
  }
  const double f_lo = (*map_)(lo_w), f_hi = (*map_)(hi_w);
  return f_hi - omega_out < omega_out - f_lo ? hi_w : lo_w;
}

WarpFunction WarpFunction::Inverted() const {
  if (identity_) return *this;
  if (!IsEndpointPinned())
    throw Error("only warps of [0, pi] onto itself have a tabulated inverse");
  const WarpFunction forward = *this;
  auto inverse = [forward](double w) { return *forward.Inverse(std::clamp(w, 0.0, kPi)); };
  std::vector<double> v(knots_.size());
  for (std::size_t i = 0; i < knots_.size(); ++i) v[i] = inverse(knots_[i]);
  v.front() = 0.0;
  v.back() = kPi;
  WarpFunction w(knots_, std::move(v), false);
  if (!w.IsStrictlyIncreasing()) throw Error("inverted warp is not strictly increasing");
  w.map_ = std::make_shared<const std::function<double(double)>>(std::move(inverse));
  w.inverse_map_ = map_;
  return w;
}

bool WarpFunction::IsEndpointPinned() const {
  return values_.front() == 0.0 && values_.back() == kPi;
}

bool WarpFunction::IsStrictlyIncreasing() const {
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (!(values_[i] > values_[i - 1])) return false;
  return true;
}

WarpFunction BuildWarp(const DisguiseSpec& spec) {
  spec.Validate();
  if (spec.IsIdentity()) return WarpFunction::Identity();
  const double a = spec.param;
  switch (spec.family) {
    case DisguiseFamily::kPitchScaleFreq:
    case DisguiseFamily::kPitchScaleTime: {
      const double s = SemitoneToScale(a);
      return WarpFunction::FromMap([s](double w) { return s * w; });
    }
    case DisguiseFamily::kVtlnBilinear:
      return WarpFunction::FromMap(
          [a](double w) {
            return w + 2.0 * std::atan2(a * std::sin(w), 1.0 - a * std::cos(w));
          },
          kWarpKnots, true);
    case DisguiseFamily::kVtlnQuadratic:
      return WarpFunction::FromMap(
          [a](double w) {
            const double r = w / kPi;
            return w + a * (r - r * r);
          },
          kWarpKnots, true);
    case DisguiseFamily::kVtlnPower:
      return WarpFunction::FromMap(
          [a](double w) { return kPi * std::pow(w / kPi, 1.0 + a); }, kWarpKnots, true);
    case DisguiseFamily::kVtlnPiecewise: {
      const double slope = a;
      const double w0 = slope <= 1.0 ? 7.0 * kPi / 8.0 : 7.0 * kPi / (8.0 * slope);
      const double upper = (kPi - slope * w0) / (kPi - w0);
      return WarpFunction::FromMap(
          [=](double w) { return w <= w0 ? slope * w : slope * w0 + upper * (w - w0); },
          kWarpKnots, true);
    }
  }
  throw Error("unknown disguise family");
}

Spectrogram ApplySpectralWarp(const Spectrogram& in, const WarpFunction& warp,
                              WarpDirection direction) {
  if (warp.is_identity()) return in;
  const std::size_t bins = in.num_bins();
  if (bins < 2) throw Error("spectral warp needs at least two bins");
  const double last_bin = static_cast<double>(bins - 1);

  std::vector<Tap> taps(bins);
  for (std::size_t j = 0; j < bins; ++j) {
    const double out_omega = kPi * static_cast<double>(j) / last_bin;
    std::optional<double> src;
    if (direction == WarpDirection::kForward) {
      src = warp.Inverse(out_omega);
    } else {
      src = warp.Map(out_omega);
    }
    // Allow rounding at the Nyquist end.
    if (!src || *src < 0.0 || *src > kPi * (1.0 + 1e-12)) continue;
    const double pos = std::min(*src / kPi, 1.0) * last_bin;
    Tap& tap = taps[j];
    tap.lo = std::min(static_cast<std::size_t>(pos), bins - 2);
    tap.frac = pos - static_cast<double>(tap.lo);
    tap.valid = true;
  }
  // Out-of-range output bins replicate the nearest in-range output bin.
  std::vector<std::size_t> source_bin(bins);
  std::optional<std::size_t> last_valid;
  for (std::size_t j = 0; j < bins; ++j) {
    if (taps[j].valid) last_valid = j;
    source_bin[j] = taps[j].valid ? j : last_valid.value_or(bins);
  }
  for (std::size_t j = bins; j-- > 0;) {
    if (source_bin[j] != bins) continue;
    for (std::size_t k = j + 1; k < bins; ++k) {
      if (taps[k].valid) {
        source_bin[j] = k;
        break;
      }
    }
    if (source_bin[j] == bins) throw Error("spectral warp maps every bin out of range");
  }

  Spectrogram out = in;
  const std::size_t frames = in.num_frames();
  const double hop = static_cast<double>(in.params.HopSamples(in.sample_rate));
  for (std::size_t t = 0; t < frames; ++t) {
    const auto mag_in = in.magnitudes.row(t);
    auto mag_out = out.magnitudes.row(t);
    for (std::size_t j = 0; j < bins; ++j) {
      const Tap& tap = taps[j];
      if (!tap.valid) continue;
      mag_out[j] = mag_in[tap.lo] + tap.frac * (mag_in[tap.lo + 1] - mag_in[tap.lo]);
    }
    if (in.phases) {
      const auto ph_in = in.phases->row(t);
      auto ph_out = out.phases->row(t);
      // Input phase at each output bin's preimage (unit-circle interpolation).
      for (std::size_t j = 0; j < bins; ++j) {
        const Tap& tap = taps[j];
        if (!tap.valid) continue;
        const std::complex<double> u = (1.0 - tap.frac) * std::polar(1.0, ph_in[tap.lo]) +
                                       tap.frac * std::polar(1.0, ph_in[tap.lo + 1]);
        ph_out[j] = std::abs(u) > 1e-12 ? std::arg(u)
                                        : ph_in[tap.frac < 0.5 ? tap.lo : tap.lo + 1];
      }
      if (t > 0) {
        // Phase vocoder with identity phase locking: each magnitude peak
        // advances by its source bin's instantaneous frequency scaled with
        // the warp, and the bins around it keep their phase offset to it.
        std::vector<double> locked(bins, 0.0);
        std::vector<std::size_t> peaks;
        for (std::size_t j = 0; j < bins; ++j) {
          if (!taps[j].valid) continue;
          const double m = mag_out[j];
          const bool left = j == 0 || !taps[j - 1].valid || mag_out[j - 1] < m;
          const bool right = j + 1 == bins || !taps[j + 1].valid || mag_out[j + 1] <= m;
          if (left && right) peaks.push_back(j);
        }
        for (std::size_t p : peaks) {
          const Tap& tap = taps[p];
          const std::size_t k = tap.frac < 0.5 ? tap.lo : tap.lo + 1;
          const double bin_omega = kPi * static_cast<double>(k) / last_bin;
          const double advance = ph_in[k] - (*in.phases)(t - 1, k) - bin_omega * hop;
          const double inst = bin_omega + std::remainder(advance, 2.0 * kPi) / hop;
          const double src_omega = kPi * (static_cast<double>(tap.lo) + tap.frac) / last_bin;
          const double out_omega = kPi * static_cast<double>(p) / last_bin;
          const double ratio = src_omega > 0.0 ? out_omega / src_omega : 1.0;
          locked[p] = (*out.phases)(t - 1, p) + ratio * inst * hop;
        }
        // Each bin follows the peak on its side of the deepest valley between
        // neighbouring peaks.
        for (std::size_t i = 0; i < peaks.size(); ++i) {
          std::size_t lo = 0, hi = bins;
          if (i > 0) {
            lo = peaks[i - 1];
            for (std::size_t v = peaks[i - 1]; v <= peaks[i]; ++v)
              if (mag_out[v] < mag_out[lo]) lo = v;
          }
          if (i + 1 < peaks.size()) {
            hi = peaks[i];
            for (std::size_t v = peaks[i]; v <= peaks[i + 1]; ++v)
              if (mag_out[v] < mag_out[hi]) hi = v;
          }
          const std::size_t p = peaks[i];
          for (std::size_t j = lo; j < hi; ++j)
            if (taps[j].valid && j != p) locked[j] = locked[p] + (ph_out[j] - ph_out[p]);
        }
        for (std::size_t j = 0; j < bins; ++j)
          if (taps[j].valid) ph_out[j] = std::remainder(locked[j], 2.0 * kPi);
      }
    }
    for (std::size_t j = 0; j < bins; ++j) {
      if (taps[j].valid) continue;
      mag_out[j] = mag_out[source_bin[j]];
      if (out.phases) (*out.phases)(t, j) = (*out.phases)(t, source_bin[j]);
    }
  }
  return out;
}

InverseTransform InvertSpec(const DisguiseSpec& spec) {
  spec.Validate();
  if (IsPitchFamily(spec.family) || spec.family == DisguiseFamily::kVtlnBilinear) {
    DisguiseSpec inverse{spec.family, -spec.param};
    if (inverse.param == 0.0) inverse.param = 0.0;
    return {inverse, BuildWarp(inverse)};
  }
  return {std::nullopt, BuildWarp(spec).Inverted()};
}

}  // namespace voxrestore
